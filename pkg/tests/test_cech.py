"""
Unit tests for glued schemes, Čech cochains and the Kodaira-Spencer,
Deligne-Illusie and Gauss-Manin classes.
"""
import pytest
from hypothesis import given, settings, strategies as st

from cech.classes import (GlobalLift, chart_splittings, classes_equal_up_to_sign, cup_with, deligne_illusie,
                          gauss_manin, global_frobenius_lift, global_hom_sections, is_coboundary, kodaira_spencer,
                          lift_difference, lifts_agree)
from cech.cochains import CechClass, Sheaf, d0, d1
from cech.examples import (affine_space, broken_projective_line, invariant_differential, multiplicative_group,
                           projective_line_three_charts)
from differentials.splitting import splitting_to_frobenius
from utils.errors import GluingError, InputError, StructuralError


@pytest.fixture(scope="module")
def curve_kappa(curve):
    return kodaira_spencer(curve)


def test_projective_line_glues(p1):
    """Test that every gluing check passes on P^1."""
    report = p1.check()
    assert report.passed
    assert report.checks


def test_three_chart_projective_line_glues():
    """Test the triple cocycle condition on the three-chart cover."""
    scheme = projective_line_three_charts(3)
    assert scheme.check().passed
    t = CechClass(scheme, 0, Sheaf.O, {0: "x^2", 1: "y", 2: 0})
    assert all(value.is_zero() for value in d1(d0(t)).values())
    assert d0(t).is_cocycle()


def test_broken_gluing_is_reported():
    """Test that y = x with x = 1/y fails the round-trip checks."""
    with pytest.raises(GluingError) as info:
        broken_projective_line(3).check()
    assert info.value.failures


def test_d0_of_constants_vanishes(p1):
    """Test d0 on O-valued 0-cochains."""
    assert d0(CechClass(p1, 0, Sheaf.O, {0: 1, 1: 1})).is_zero()
    assert not d0(CechClass(p1, 0, Sheaf.O, {0: "x", 1: 0})).is_zero()


def test_cochain_arithmetic_and_antisymmetry(p1):
    """Test value(b, a) = -value(a, b) and cochain sums."""
    c = CechClass(p1, 1, Sheaf.O, {(0, 1): "x_inv"})
    assert c.value(1, 0) == -c.value(0, 1)
    assert (c - c).is_zero()
    assert (c + c) == c.scale(2)
    with pytest.raises(StructuralError):
        CechClass(p1, 2, Sheaf.O, {})


def test_o_cocycle_on_projective_line_is_coboundary(p1):
    """Test H^1(P^1, O) = 0 in the window, with an explicit witness."""
    c = CechClass(p1, 1, Sheaf.O, {(0, 1): "x_inv + x^2"}, window=6)
    result = is_coboundary(c)
    assert result.equal
    assert d0(result.witness) == c


def test_coefficient_table_columns(p1):
    """Test the pandas rendering of a cochain."""
    table = CechClass(p1, 1, Sheaf.O, {(0, 1): "x_inv + 1"}).coefficient_table()
    assert list(table.columns) == ["index", "component", "monomial", "coefficient"]
    assert len(table) == 2
    assert set(table["index"]) == {"0-1"}


def test_kappa_vanishes_on_projective_line(p1):
    """Test that P^1 has kappa = 0 and h = 0 with the standard lifts."""
    kappa = kodaira_spencer(p1)
    assert kappa.is_zero()
    assert is_coboundary(kappa).equal
    assert classes_equal_up_to_sign(kappa, deligne_illusie(p1)).equal


def test_hom_sections_of_projective_line(p1):
    """Test dim H^0(Hom(F*Omega^1, O)) = 2p + 1 on P^1."""
    sections = global_hom_sections(p1)
    assert len(sections) == 7
    assert all(d0(s).is_zero() for s in sections)


def test_global_lift_of_projective_line(p1):
    """Test the glued lift x |-> x^3, y |-> y^3 and its torsor difference."""
    lift = global_frobenius_lift(p1)
    assert lift is not None
    assert lift.lifts[0].images["x"] == p1.charts[0].var("x") ** 3
    assert lift.lifts[1].images["y"] == p1.charts[1].var("y") ** 3
    assert lift_difference(lift, lift).is_zero()
    assert lift.to_dict()["charts"]["0"]["x"] == "x^3"


@pytest.mark.parametrize("build", [lambda: affine_space(2, 3), lambda: multiplicative_group(3)])
def test_global_lift_of_affine_schemes(build):
    """Test that one-chart schemes always lift."""
    assert global_frobenius_lift(build()) is not None


def test_genus_one_kappa_is_not_a_coboundary(curve, curve_kappa):
    """Test that the supersingular curve has no global Frobenius lift."""
    assert not curve_kappa.is_zero()
    result = is_coboundary(curve_kappa)
    assert not result.equal
    assert result.stabilized
    assert not result.inconclusive
    assert global_frobenius_lift(curve) is None


def test_kappa_equals_minus_h(curve, curve_kappa):
    """Test kappa = -h modulo coboundaries and the failure of kappa = +h."""
    h = deligne_illusie(curve)
    assert (curve_kappa + h).is_zero()
    minus = classes_equal_up_to_sign(curve_kappa, h, sign=-1)
    assert minus.equal
    assert minus.witness is not None
    plus = classes_equal_up_to_sign(curve_kappa, h, sign=1)
    assert not plus.equal
    wider = classes_equal_up_to_sign(curve_kappa, h, bound=minus.window + 2, sign=1)
    assert not wider.equal


def test_gauss_manin_is_cup_with_kappa(curve, curve_kappa):
    """Test GM(omega) = kappa cup omega for the invariant differential."""
    omega = invariant_differential()
    cup = cup_with(curve_kappa, omega)
    assert gauss_manin(curve, omega, lifts="sigma") == cup
    default = gauss_manin(curve, omega)
    assert classes_equal_up_to_sign(default, cup, sign=1).equal
    assert not is_coboundary(cup).equal


def test_gauss_manin_rejects_non_global_forms(curve):
    """Test that a form that does not glue is an input error."""
    with pytest.raises(InputError):
        gauss_manin(curve, [(1,), (0,)])
    with pytest.raises(InputError):
        gauss_manin(curve, [(1,)])


def test_gauss_manin_on_projective_line(p1):
    """Test that the only global section of F*Omega^1 on P^1 gives zero."""
    kappa = kodaira_spencer(p1)
    assert gauss_manin(p1, [(0,), (0,)]).is_zero()
    assert cup_with(kappa, [(0,), (0,)]).is_zero()
    with pytest.raises(InputError):
        gauss_manin(p1, [(1,), (0,)])


def shift_splittings(scheme, splittings, free_values):
    """Chart splittings h_i + psi_i for psi_i given on the free coordinates of chart i."""
    shifted = []
    for index, (splitting, free) in enumerate(zip(splittings, free_values)):
        values = scheme.chart_coordinates(index).functional_on_variables(free)
        shifted.append(splitting.shift(tuple(values[v] for v in scheme.charts[index].variables)))
    return shifted


def test_kappa_class_is_independent_of_splitting(curve, curve_kappa):
    """Test that perturbed chart splittings change kappa by a coboundary only."""
    shifted = shift_splittings(curve, chart_splittings(curve), [("x*y + 1",), ("v^2",)])
    kappa = kodaira_spencer(curve, splittings=shifted)
    assert kappa != curve_kappa
    result = classes_equal_up_to_sign(kappa, curve_kappa, sign=1)
    assert result.equal
    assert (kappa - curve_kappa) == d0(result.witness)


def test_global_section_leaves_kappa_unchanged(p1):
    """Test that shifting by a global section of Hom(F*Omega^1, O) keeps kappa and the gluing."""
    section = global_hom_sections(p1)[-1]
    splittings = chart_splittings(p1)
    shifted = shift_splittings(p1, splittings, [section.values[i] for i in range(len(p1.charts))])
    assert shifted != splittings
    assert kodaira_spencer(p1, splittings=shifted) == kodaira_spencer(p1, splittings=splittings)
    assert lifts_agree(p1, [splitting_to_frobenius(s) for s in shifted]) == []


def test_h_class_is_independent_of_lift(curve, curve_kappa):
    """Test that other chart lifts change h by a coboundary and keep kappa = -h."""
    h = deligne_illusie(curve)
    shifted = shift_splittings(curve, chart_splittings(curve), [("y",), ("u*v",)])
    other = deligne_illusie(curve, local_lifts=[splitting_to_frobenius(s) for s in shifted])
    assert other != h
    assert classes_equal_up_to_sign(other, h, sign=1).equal
    assert (kodaira_spencer(curve, splittings=shifted) + other).is_zero()
    assert classes_equal_up_to_sign(curve_kappa, other, sign=-1).equal


def test_genus_one_verdicts_repeat_in_larger_window(curve, curve_kappa):
    """Test that both genus-one verdicts are unchanged two degrees past the window."""
    h = deligne_illusie(curve)
    first = is_coboundary(curve_kappa, doublings=0)
    wider = is_coboundary(curve_kappa, bound=first.window + 2, doublings=0)
    assert not first.equal
    assert not wider.equal
    assert wider.window == first.window + 2
    assert first.stabilized and wider.stabilized
    minus = classes_equal_up_to_sign(curve_kappa, h, bound=first.window + 2, sign=-1, doublings=0)
    assert minus.equal
    assert minus.window == first.window + 2


@pytest.mark.parametrize("name, lifts", [
    ("affine_line", True),
    ("affine_plane", True),
    ("multiplicative_group", True),
    ("projective_line", True),
    ("three_charts", True),
    ("genus_one", False),
])
def test_kappa_coboundary_iff_global_lift(request, name, lifts):
    """Test that kappa is a coboundary exactly when a global Frobenius lift exists."""
    builders = {
        "affine_line": lambda: affine_space(1, 3),
        "affine_plane": lambda: affine_space(2, 3),
        "multiplicative_group": lambda: multiplicative_group(3),
        "projective_line": lambda: request.getfixturevalue("p1"),
        "three_charts": lambda: projective_line_three_charts(3),
        "genus_one": lambda: request.getfixturevalue("curve"),
    }
    scheme = builders[name]()
    kappa = kodaira_spencer(scheme)
    lift = global_frobenius_lift(scheme)
    assert is_coboundary(kappa).equal is lifts
    assert (lift is not None) is lifts
    if lift is not None:
        assert kodaira_spencer(scheme, splittings=lift.splittings).is_zero()


def _render(terms, variables):
    monomials = []
    for exponents, coefficient in sorted(terms.items()):
        factors = [str(coefficient)] + [f"{v}^{e}" for v, e in zip(variables, exponents) if e]
        monomials.append("*".join(factors))
    return " + ".join(monomials) or "0"


def functionals(variables, count):
    """Tuples of count polynomials of degree at most 4 in the given variables."""
    exponents = st.tuples(*[st.integers(0, 4)] * len(variables)).filter(lambda e: sum(e) <= 4)
    polynomial = st.dictionaries(exponents, st.integers(1, 2), max_size=4).map(lambda t: _render(t, variables))
    return st.tuples(*[polynomial] * count)


@pytest.fixture(scope="module")
def one_chart_lifts():
    lifts = {}
    for scheme in (affine_space(2, 3), multiplicative_group(3)):
        lifts[scheme.name] = global_frobenius_lift(scheme)
    return lifts


@pytest.mark.parametrize("name", ["A^2", "G_m"])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_lift_difference_is_torsor_action(one_chart_lifts, name, data):
    """Test that lift_difference recovers any degree <= 4 shift of a global lift."""
    lift = one_chart_lifts[name]
    scheme = lift.scheme
    coords = scheme.chart_coordinates(0)
    psi = data.draw(functionals(scheme.charts[0].variables, coords.rank))
    shifted = shift_splittings(scheme, lift.splittings, [psi])
    other = GlobalLift(scheme, [splitting_to_frobenius(s) for s in shifted], shifted, None, lift.window)
    difference = lift_difference(other, lift)
    expected = coords.functional_on_variables(psi)
    assert difference.values[0] == tuple(expected[z] for z in coords.free_variables)
    assert lift_difference(lift, other) == -difference
    assert lift_difference(other, other).is_zero()
