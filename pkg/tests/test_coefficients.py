"""
Unit tests for the coefficients package: F_q, W_2(F_q) and the carry polynomial.
"""
import pytest
from hypothesis import given, settings, strategies as st

from coefficients.carries import cp_coefficients, cp_eval
from coefficients.finite_field import FiniteField, check_prime, default_modulus
from coefficients.witt import WittRing, base_delta, frobenius_w2, theta
from utils.errors import StructuralError
from utils.helpers import make_rng


def test_check_prime_rejects_composites_and_two():
    """Test prime validation."""
    check_prime(3)
    check_prime(13)
    for bad in (1, 2, 4, 9, "3"):
        with pytest.raises(StructuralError):
            check_prime(bad)


def test_default_modulus():
    """Test the default irreducible modulus for F_9."""
    assert default_modulus(3, 2) == (1, 0, 1)


def test_extension_field_arithmetic():
    """Test t^2 = -1 in F_9 and inverses."""
    field = FiniteField(3, 2)
    t = field.gen()
    assert t * t == field(-1)
    for x in field.elements():
        if not x.is_zero():
            assert x * x.inverse() == field.one()


def test_reducible_modulus_rejected():
    """Test that a reducible modulus is refused."""
    with pytest.raises(StructuralError):
        FiniteField(3, 2, (2, 0, 1))


@pytest.mark.parametrize("p", [3, 5])
def test_witt_vectors_are_integers_mod_p_squared(p):
    """Test that n -> W_2(F_p) is a ring isomorphism from Z/p^2."""
    witt = WittRing.of(p)
    modulus = p * p
    for a in range(modulus):
        assert witt.to_int(witt.from_int(a)) == a
        for b in range(modulus):
            assert witt.from_int(a) + witt.from_int(b) == witt.from_int(a + b)
            assert witt.from_int(a) * witt.from_int(b) == witt.from_int(a * b)


def test_teichmuller_representatives(w3):
    """Test that [a] = (a, 0) corresponds to a^p mod p^2."""
    assert w3.teichmuller(2) == w3.from_int(8)
    assert w3.to_int(w3.teichmuller(2)) == 8
    assert w3.lift(1) == w3.one()


def test_prime_element(w3):
    """Test p = (0, 1) and p^2 = 0."""
    assert w3.prime() == w3.from_int(3)
    assert (w3.prime() * w3.prime()).is_zero()


def test_extension_ring_axioms_random():
    """Test ring axioms of W_2(F_9) on random triples."""
    witt = WittRing.of(3, 2)
    rng = make_rng(7)
    for _ in range(300):
        a, b, c = (witt.random_element(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


@pytest.mark.parametrize("p", [3, 5])
def test_base_delta_matches_theta(p):
    """Test that the canonical delta on Z/p^2 is (n - n^p)/p."""
    witt = WittRing.of(p)
    field = witt.field
    for n in range(p * p):
        assert base_delta(witt.from_int(n), 1) == field(theta(n, 1, p))
        assert base_delta(witt.from_int(n), 2) == field(theta(n, 2, p))


def test_times_p_and_divide_by_p(w3):
    """Test that divide_by_p inverts times_p."""
    for x in w3.field.elements():
        assert w3.divide_by_p(w3.times_p(x)) == x
    with pytest.raises(StructuralError):
        w3.divide_by_p(w3.one())


def test_cp_coefficients():
    """Test the binomial coefficients of C_p."""
    assert cp_coefficients(3) == (1, 1)
    assert cp_coefficients(5) == (1, 2, 2, 1)
    assert cp_eval(2, 3, 5) == -570


@settings(max_examples=100, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([3, 5, 7]))
def test_cp_eval_is_the_carry(x, y, p):
    """Test p * C_p(x, y) = x^p + y^p - (x + y)^p over the integers."""
    assert p * cp_eval(x, y, p) == x ** p + y ** p - (x + y) ** p


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_frobenius_is_ring_map_on_extension(seed):
    """Test that (r0, r1) -> (r0^p, r1^p) is additive and multiplicative on W_2(F_9)."""
    witt = WittRing.of(3, 2)
    rng = make_rng(seed)
    for _ in range(10):
        a, b = witt.random_element(rng), witt.random_element(rng)
        assert frobenius_w2(a + b) == frobenius_w2(a) + frobenius_w2(b)
        assert frobenius_w2(a * b) == frobenius_w2(a) * frobenius_w2(b)
    assert frobenius_w2(witt.one()) == witt.one()
