"""
Unit tests for the interpolation rings U_c and total p-derivations.
"""
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from algebra.fp_algebra import localize, polynomial_algebra, witt_algebra
from algebra.homomorphism import AlgebraHom
from biring.biring import prime_field_algebra
from cli.axioms import square_zero, truncated_line, witt_endpoint
from coefficients.witt import WittRing
from differentials.total import dtot_expand
from utils.errors import InvalidDerivationError, StructuralError, UnsupportedMapError
from utils.helpers import make_rng
from witt_interp.derivations import (TotalDerivation, derivation_to_hom, hom_to_derivation, induced_module_map,
                                     lift_derivation)
from witt_interp.interpolation import UcRing, rescale_hom, uc_map, uc_scalar


@pytest.mark.parametrize("p", [3, 5])
def test_u1_is_w2(p):
    """Test that U_1(F_p) reproduces W_2(F_p) exhaustively."""
    assert witt_endpoint(p).passed


@pytest.mark.parametrize("p", [3, 5])
def test_u0_ideal_is_square_zero(p):
    """Test I^2 = 0 and pI = 0 in U_0(F_p)."""
    assert square_zero(p).passed


X0, X1, Y0, Y1 = sympy.symbols("X0 X1 Y0 Y1")


def witt_polynomials(p):
    """Sum and product coordinates S_1, P_1 of W_2 from the ghost components."""
    ghost_x, ghost_y = X0 ** p + p * X1, Y0 ** p + p * Y1
    s1 = sympy.expand((ghost_x + ghost_y - (X0 + Y0) ** p) / p)
    p1 = sympy.expand((ghost_x * ghost_y - (X0 * Y0) ** p) / p)
    return s1, p1


def evaluate(poly, values, algebra):
    total = algebra.zero()
    for monomial, coefficient in sympy.Poly(poly, X0, X1, Y0, Y1).terms():
        term = algebra.element(int(coefficient) % algebra.p)
        for value, exponent in zip(values, monomial):
            if exponent:
                term = term * value ** exponent
        total = total + term
    return total


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([3, 5]))
def test_u1_matches_witt_polynomials_on_truncated_line(seed, p):
    """Test U_1(F_p[t]/(t^3)) against the Witt sum and product polynomials on both coordinates."""
    algebra = truncated_line(p, 3)
    uc = UcRing(algebra, 1)
    s1, p1 = witt_polynomials(p)
    rng = make_rng(seed)
    for _ in range(20):
        a, b = uc.random_element(rng), uc.random_element(rng)
        values = (a.x0, a.x1, b.x0, b.x1)
        total, product = a + b, a * b
        assert total.x0 == a.x0 + b.x0
        assert total.x1 == evaluate(s1, values, algebra)
        assert product.x0 == a.x0 * b.x0
        assert product.x1 == evaluate(p1, values, algebra)


def test_u1_matches_w2_over_extension_field():
    """Test U_1(F_9) against W_2(F_9) arithmetic on every pair."""
    witt = WittRing.of(3, 2)
    uc = UcRing(polynomial_algebra(witt.field, [], name="F9"), 1)
    elements = list(witt.elements())
    for r in elements:
        for s in elements:
            total, product = r + s, r * s
            assert uc.element(r.w0, r.w1) + uc.element(s.w0, s.w1) == uc.element(total.w0, total.w1)
            assert uc.element(r.w0, r.w1) * uc.element(s.w0, s.w1) == uc.element(product.w0, product.w1)


def test_scalar_of_p():
    """Test that p maps to (0, c)."""
    algebra = prime_field_algebra(3)
    witt = WittRing.of(3)
    for c in range(3):
        image = uc_scalar(witt.prime(), algebra, c)
        assert image.x0.is_zero()
        assert image.x1 == algebra.element(c)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0, 1, 2, "t"]))
def test_uc_ring_axioms(seed, c):
    """Test the ring axioms of U_c(F_3[t]/(t^3)) on random triples."""
    algebra = truncated_line(3, 3)
    uc = UcRing(algebra, algebra.var("t") if c == "t" else c)
    rng = make_rng(seed)
    for _ in range(10):
        a, b, d = (uc.random_element(rng) for _ in range(3))
        assert (a + b) + d == a + (b + d)
        assert (a * b) * d == a * (b * d)
        assert a * (b + d) == a * b + a * d
        assert a * b == b * a
        assert a + uc.zero() == a
        assert a * uc.one() == a
        assert (a - a).is_zero()


def test_rescale_hom_is_ring_map():
    """Test (x0, x1) |-> (x0, e x1) from U_c to U_ce."""
    algebra = truncated_line(3, 3)
    uc = UcRing(algebra, 1)
    rng = make_rng(3)
    e = algebra.var("t") + 2
    for _ in range(50):
        a, b = uc.random_element(rng), uc.random_element(rng)
        assert rescale_hom(e, a + b) == rescale_hom(e, a) + rescale_hom(e, b)
        assert rescale_hom(e, a * b) == rescale_hom(e, a) * rescale_hom(e, b)


def test_mixed_parameters_rejected():
    """Test that U_0 and U_1 elements do not add."""
    algebra = prime_field_algebra(3)
    with pytest.raises(StructuralError):
        UcRing(algebra, 0).one() + UcRing(algebra, 1).one()


def test_total_derivation_kinds(line):
    """Test delta(p) = c and the classification by c."""
    target = line.reduction
    delta = TotalDerivation(line, target, 1, {"x": 1})
    assert delta.kind == "p-derivation"
    assert delta(3) == target.one()
    assert delta(line.var("x") ** 2) == target.element("2*x^3")
    assert TotalDerivation(line, target, 0).kind == "frobenius-semilinear"
    assert TotalDerivation(line, target, 0)(3).is_zero()


def test_total_derivation_checks_relations():
    """Test that on W_2[x]/(x^2 - p) the value delta(p) must vanish."""
    double = witt_algebra(3, ["x"], ["x^2 - p"])
    target = double.reduction
    with pytest.raises(InvalidDerivationError):
        TotalDerivation(double, target, 1, {"x": 0})
    assert TotalDerivation(double, target, 0, {"x": 1}).kind == "frobenius-semilinear"


def test_derivation_hom_correspondence(line):
    """Test delta <-> (a |-> (a_0, delta(a)))."""
    target = line.reduction
    delta = TotalDerivation(line, target, 1, {"x": "x^2"})
    hom = derivation_to_hom(delta)
    image = hom(line.var("x"))
    assert image.x0 == target.var("x")
    assert image.x1 == target.element("x^2")
    assert hom(line.element(3)).x1 == target.one()
    back = hom_to_derivation(hom)
    assert back.gen_values == delta.gen_values
    assert back.c == delta.c


def test_uc_map_is_functorial():
    """Test U_c(F_3[t]/(t^3)) -> U_0(F_3) along t |-> 0."""
    algebra = truncated_line(3, 3)
    prime = prime_field_algebra(3)
    h = AlgebraHom(algebra, prime, {"t": "0"})
    uc = UcRing(algebra, algebra.var("t"))
    t = algebra.var("t")
    a, b = uc.element(t + 1, t), uc.element(2 + t ** 2, 1)
    image = uc_map(h, a)
    assert image == UcRing(prime, 0).element(1, 0)
    assert uc_map(h, a * b) == uc_map(h, a) * uc_map(h, b)
    assert uc_map(h, a + b) == uc_map(h, a) + uc_map(h, b)


def test_induced_module_map(line):
    """Test delta = g o d^tot for the induced A_0-linear map g."""
    target = line.reduction
    delta = TotalDerivation(line, target, 1, {"x": "x^2"})
    g = induced_module_map(delta)
    assert g.values[0] == target.one()
    a = line.element("x^2 + 3*x")
    assert g(dtot_expand(a, delta.module)) == delta(a)
    assert g(delta.module.d("x")) == target.element("x^2")


def test_lift_derivation_along_extension(line):
    """Test lifting to W_2[x, y] with delta(y) = 1."""
    target = line.reduction
    delta = TotalDerivation(line, target, 1, {"x": "x"})
    plane = line.extend(["y"])
    hom = AlgebraHom(line, plane, {"x": "x"})
    lifted = lift_derivation(delta, hom, new_values={"y": 1})
    assert lifted(plane.var("x")) == target.var("x")
    assert lifted.gen_values["y"] == target.one()
    assert lifted.c == delta.c


def test_lift_derivation_along_localization(line):
    """Test delta(1/x) = -x_inv^6 delta(x) on G_m."""
    units, canonical = localize(line, "x", name="Gm", inverse_name="x_inv")
    target = units.reduction
    delta = TotalDerivation(line, target, 1, {"x": 1}, structure=canonical.reduction())
    lifted = lift_derivation(delta, canonical)
    assert lifted.gen_values["x_inv"] == -(target.var("x_inv") ** 6)
    assert lifted(units.var("x")) == target.one()


def test_lift_derivation_unsupported_map(line):
    """Test that an arbitrary endomorphism is not a supported lifting map."""
    delta = TotalDerivation(line, line.reduction, 1)
    with pytest.raises(UnsupportedMapError):
        lift_derivation(delta, AlgebraHom(line, line, {"x": "x^2"}))
