"""
Standard glued schemes over W_2(F_q) used by the CLI jobs and the tests.
"""
import logging

from algebra.fp_algebra import localize, witt_algebra
from cech.scheme import GluedScheme, GluingData, TripleData
from coefficients.finite_field import check_prime
from utils.errors import StructuralError

logger = logging.getLogger("TotalP.Examples")

VARIABLE_NAMES = ("x", "y", "z")


def affine_variables(n):
    if n <= len(VARIABLE_NAMES):
        return list(VARIABLE_NAMES[:n])
    return [f"x{i}" for i in range(1, n + 1)]


def affine_space(n, p, m=1):
    """A^n = Spec W_2(F_q)[x_1..x_n] as a one-chart scheme."""
    check_prime(p)
    chart = witt_algebra(p, affine_variables(n), m=m, name=f"A{n}")
    return GluedScheme([chart], name=f"A^{n}")


def multiplicative_group(p, m=1):
    """G_m = Spec W_2(F_q)[x, 1/x]."""
    check_prime(p)
    line = witt_algebra(p, ["x"], m=m, name="A1")
    chart, _ = localize(line, "x", name="Gm", inverse_name="x_inv")
    return GluedScheme([chart], name="G_m")


def projective_line(p, m=1):
    """P^1 with charts Spec W_2[x] and Spec W_2[y], y = 1/x."""
    check_prime(p)
    charts = [witt_algebra(p, ["x"], m=m, name="U0"), witt_algebra(p, ["y"], m=m, name="U1")]
    gluing = GluingData(
        pair=(0, 1), s_first="x", s_second="y",
        to_first={"y": "x_inv", "y_inv": "x"},
        to_second={"x": "y_inv", "x_inv": "y"},
        inverse_names=("x_inv", "y_inv"),
    )
    return GluedScheme.from_gluing_data(charts, [gluing], name="P^1")


def projective_line_three_charts(p, m=1):
    """
    P^1 covered by x, y = 1/x and z = 1/(x - 1), with the triple overlap
    W_2[x, 1/x, 1/(x - 1)].
    """
    check_prime(p)
    charts = [witt_algebra(p, ["x"], m=m, name="U0"), witt_algebra(p, ["y"], m=m, name="U1"),
              witt_algebra(p, ["z"], m=m, name="U2")]
    gluings = [
        GluingData((0, 1), "x", "y", {"y": "x_inv", "y_inv": "x"}, {"x": "y_inv", "x_inv": "y"},
                   ("x_inv", "y_inv")),
        GluingData((0, 2), "x - 1", "z", {"z": "w", "z_inv": "x - 1"}, {"x": "1 + z_inv", "w": "z"},
                   ("w", "z_inv")),
        GluingData((1, 2), "1 - y", "1 + z", {"z": "y*r", "q": "1 - y"}, {"y": "z*q", "r": "1 + z"},
                   ("r", "q")),
    ]
    scheme = GluedScheme.from_gluing_data(charts, gluings, name="P^1 (three charts)")
    ring_01 = scheme.overlap(0, 1).ring_a
    triple, _ = localize(ring_01, "x - 1", name="U012", inverse_name="w")
    scheme.add_triple(TripleData(
        charts=(0, 1, 2),
        algebra=triple,
        restrictions={
            (0, 1): {"x": "x", "x_inv": "x_inv"},
            (0, 2): {"x": "x", "w": "w"},
            (1, 2): {"y": "x_inv", "r": "x*w"},
        },
    ))
    return scheme


def genus_one(a=-1, b=0):
    """
    The curve y^2 = x^3 + a x + b over W_2(F_3) with its chart at infinity
    v^2 = u + a u^3 + b u^4 (u = 1/x, v = y/x^2).

    Over F_3 every such curve is supersingular. Both charts need a constant
    pivot in their relation, which forces a != 0 and b = 0 modulo 3.
    """
    p = 3
    if a % p == 0 or b % p != 0:
        raise StructuralError(f"genus_one needs a != 0 and b = 0 modulo 3, got a={a}, b={b}")
    chart0 = witt_algebra(p, ["x", "y"], [f"y^2 - (x^3 + ({a})*x + ({b}))"], name="E0")
    chart1 = witt_algebra(p, ["u", "v"], [f"v^2 - (u + ({a})*u^3 + ({b})*u^4)"], name="E1")
    gluing = GluingData(
        pair=(0, 1), s_first="x", s_second="u",
        to_first={"u": "x_inv", "v": "y*x_inv^2", "u_inv": "x"},
        to_second={"x": "u_inv", "y": "v*u_inv^2", "x_inv": "u"},
        inverse_names=("x_inv", "u_inv"),
    )
    return GluedScheme.from_gluing_data([chart0, chart1], [gluing], name=f"E: y^2 = x^3 + ({a})x + ({b})")


def invariant_differential(a=-1):
    """
    F*(dx / 2y) on the genus_one charts, as coefficients on the free
    coordinates F*dy and F*dv.
    """
    inverse = 1 if a % 3 == 1 else -1
    return [(inverse,), (-1,)]


def double_point(p, m=1):
    """W_2(F_q)[x]/(x^2 - p): flat, with no Frobenius lift."""
    check_prime(p)
    return witt_algebra(p, ["x"], ["x^2 - p"], m=m, name="double point")


def broken_projective_line(p):
    """P^1 charts glued by y = x, which is not inverse to the recorded x = 1/y."""
    check_prime(p)
    charts = [witt_algebra(p, ["x"], name="U0"), witt_algebra(p, ["y"], name="U1")]
    gluing = GluingData((0, 1), "x", "y", {"y": "x", "y_inv": "x_inv"}, {"x": "y_inv", "x_inv": "y"},
                        ("x_inv", "y_inv"))
    return GluedScheme.from_gluing_data(charts, [gluing], name="P^1 (broken)")


EXAMPLES = {
    "affine_space": affine_space,
    "multiplicative_group": multiplicative_group,
    "projective_line": projective_line,
    "projective_line_three_charts": projective_line_three_charts,
    "genus_one": genus_one,
}
