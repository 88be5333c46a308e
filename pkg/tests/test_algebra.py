"""
Unit tests for polynomials, parsing, Gröbner normal forms and homomorphisms.
"""
import pytest
from hypothesis import given, settings, strategies as st

from algebra.fp_algebra import localize, witt_algebra
from algebra.homomorphism import AlgebraHom, compose
from algebra.polynomial import PolyRing
from differentials.total import omega_tot
from utils.errors import DegenerateLocalizationError, NotFlatError, ParseError, PresentationError, StructuralError


def test_parse_polynomial(w3):
    """Test parsing with the constant p and rational coefficients."""
    ring = PolyRing(w3, ["x", "y"])
    assert ring.parse("p*x") == ring.var("x") * w3.prime()
    assert ring.parse("x/2") == ring.parse("5*x")
    assert str(ring.parse("x^3 - y")) == "x^3 - y"
    assert ring.parse("x**2") == ring.parse("x^2")


def test_parse_errors(w3):
    """Test that malformed literals raise ParseError with a column."""
    ring = PolyRing(w3, ["x", "y"])
    with pytest.raises(ParseError) as info:
        ring.parse("x + z")
    assert info.value.column == 5
    with pytest.raises(ParseError):
        ring.parse("x +")
    with pytest.raises(ParseError):
        ring.parse("x/3")
    with pytest.raises(ParseError):
        ring.parse("")


def test_normal_form_of_double_point():
    """Test reduction modulo x^2 - p."""
    algebra = witt_algebra(3, ["x"], ["x^2 - p"])
    x = algebra.var("x")
    assert x ** 2 == algebra.element(3)
    assert (x ** 4).is_zero()
    assert set(algebra.staircase(3)) == {(0,), (1,)}
    assert (algebra.reduction.var("x") ** 2).is_zero()


def test_p_torsion_is_not_flat():
    """Test that W_2[x]/(p x) is rejected with a torsion witness."""
    with pytest.raises(NotFlatError) as info:
        witt_algebra(3, ["x"], ["p*x"])
    assert info.value.witness is not None


def test_flat_presentation_carries_no_flag():
    """Test that a constructed W_2-algebra is flat by construction, with no flag to consult."""
    algebra = witt_algebra(3, ["x"], ["x^2 - p"])
    assert not hasattr(algebra, "flat")
    assert omega_tot(algebra).rank == 2


def test_non_unit_leading_coefficient():
    """Test that p x^2 + x is not flat-adapted."""
    with pytest.raises(PresentationError):
        witt_algebra(3, ["x"], ["p*x^2 + x"])


def test_divide_by_p(line):
    """Test the exact division by p of p-divisible elements."""
    value = line.element("3*x^2 + 3")
    assert line.divide_by_p(value) == line.reduction.element("x^2 + 1")
    with pytest.raises(StructuralError):
        line.divide_by_p(line.var("x"))


def test_localization(line, units):
    """Test x * x_inv = 1 and degenerate localizations."""
    assert units.var("x") * units.var("x_inv") == units.one()
    with pytest.raises(DegenerateLocalizationError):
        localize(line, "p")
    with pytest.raises(DegenerateLocalizationError):
        localize(line, "3*x")


def test_smoothness():
    """Test the Jacobian criterion."""
    assert witt_algebra(3, ["x", "y"], ["y^2 - x^3 + x"]).is_smooth()
    assert not witt_algebra(3, ["x"], ["x^2 - p"]).is_smooth()
    assert witt_algebra(3, ["x", "y"]).is_smooth()


def test_homomorphism_and_composition(line, units):
    """Test y |-> 1/x and composition with the inverse map."""
    other = witt_algebra(3, ["y"], name="B")
    b_units, _ = localize(other, "y", inverse_name="y_inv")
    forward = AlgebraHom(b_units, units, {"y": "x_inv", "y_inv": "x"})
    backward = AlgebraHom(units, b_units, {"x": "y_inv", "x_inv": "y"})
    round_trip = compose(forward, backward)
    assert round_trip.images["x"] == units.var("x")
    assert round_trip.images["x_inv"] == units.var("x_inv")
    assert forward(b_units.element("y^2 + y")) == units.element("x_inv^2 + x_inv")


def test_homomorphism_must_respect_relations(line):
    """Test that x |-> x is not a map W_2[x]/(x^2 - p) -> W_2[x]."""
    double = witt_algebra(3, ["x"], ["x^2 - p"])
    with pytest.raises(StructuralError):
        AlgebraHom(double, line, {"x": "x"})
    assert AlgebraHom(double, line, {"x": "x"}, verify=False).relation_failures()


def test_reduction_of_homomorphism(units):
    """Test the induced map modulo p."""
    hom = AlgebraHom(units, units, {"x": "x_inv", "x_inv": "x"})
    reduced = hom.reduction()
    assert reduced(units.reduction.var("x")) == units.reduction.var("x_inv")


@pytest.fixture(scope="module")
def presented():
    curve = witt_algebra(3, ["x", "y"], ["y^2 - x^3 + x"], name="E0")
    double = witt_algebra(3, ["x"], ["x^2 - p"], name="D")
    units, _ = localize(witt_algebra(3, ["x", "y"], name="A2"), "x*y - 1", inverse_name="w")
    return {"curve": curve, "double": double, "units": units}


def polynomials(ring):
    """Random polynomials of degree <= 4 with coefficients in Z/9."""
    exponents = st.tuples(*[st.integers(0, 4)] * ring.nvars).filter(lambda e: sum(e) <= 4)
    terms = st.lists(st.tuples(exponents, st.integers(0, 8)), max_size=6)
    return terms.map(ring.from_terms)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["curve", "double", "units"]), st.data())
def test_normal_form_is_idempotent_and_multiplicative(presented, name, data):
    """Test nf(nf f) = nf f and nf(f g) = nf(nf f * nf g)."""
    algebra = presented[name]
    f = data.draw(polynomials(algebra.ring))
    g = data.draw(polynomials(algebra.ring))
    nf = algebra.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(f * g) == nf(nf(f) * nf(g))
    assert nf(f + g) == nf(f) + nf(g)
    assert algebra.contains(f - nf(f))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["curve", "double", "units"]), st.data())
def test_normal_form_vanishes_on_the_ideal(presented, name, data):
    """Test that relations, basis elements and their multiples reduce to zero."""
    algebra = presented[name]
    f = data.draw(polynomials(algebra.ring))
    for generator in list(algebra.relations) + list(algebra.basis):
        assert algebra.normal_form(generator).is_zero()
        assert algebra.normal_form(generator * f).is_zero()


@pytest.fixture(scope="module")
def inversion():
    source, _ = localize(witt_algebra(3, ["x"], name="A"), "x", inverse_name="x_inv")
    target, _ = localize(witt_algebra(3, ["y"], name="B"), "y", inverse_name="y_inv")
    forward = AlgebraHom(target, source, {"y": "x_inv", "y_inv": "x"})
    backward = AlgebraHom(source, target, {"x": "y_inv", "x_inv": "y"})
    shift = AlgebraHom(target, target, {"y": "y^2", "y_inv": "y_inv^2"})
    return source, forward, backward, shift


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_apply_hom_respects_composition(inversion, data):
    """Test (g o f)(a) = g(f(a)) and that inverse maps round-trip on random elements."""
    source, forward, backward, shift = inversion
    a = source.element(data.draw(polynomials(source.ring)))
    b = source.element(data.draw(polynomials(source.ring)))
    assert compose(forward, backward)(a) == forward(backward(a)) == a
    assert compose(forward, compose(shift, backward))(a) == forward(shift(backward(a)))
    assert backward(a * b) == backward(a) * backward(b)
    assert backward(a + b) == backward(a) + backward(b)
