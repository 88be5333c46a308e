"""
Unit tests for the biring Q_c module.
"""
import pytest

from biring.biring import Biring, prime_field_algebra
from cli.axioms import biring_points, truncated_line
from coefficients.carries import cp_eval
from coefficients.witt import WittRing, theta
from utils.errors import StructuralError
from utils.helpers import make_rng
from witt_interp.interpolation import UcRing


@pytest.fixture
def q1():
    return Biring(3, 1)


def test_coaddition_formulas(q1):
    """Test coadd(e) = e1 + e2 and the carry term of coadd(eta)."""
    e1, e2 = q1.left(q1.e()), q1.right(q1.e())
    eta1, eta2 = q1.left(q1.eta()), q1.right(q1.eta())
    assert q1.coadd(q1.e()) == e1 + e2
    assert q1.coadd(q1.eta()) == eta1 + eta2 + cp_eval(e1, e2, 3) * q1.c


def test_comultiplication_formulas(q1):
    """Test comul(e) = e1 e2 and comul(eta) = e1^p eta2 + eta1 e2^p."""
    e1, e2 = q1.left(q1.e()), q1.right(q1.e())
    eta1, eta2 = q1.left(q1.eta()), q1.right(q1.eta())
    assert q1.comul(q1.e()) == e1 * e2
    assert q1.comul(q1.eta()) == e1 ** 3 * eta2 + eta1 * e2 ** 3


def test_coproducts_are_ring_maps(q1):
    """Test that the coproducts respect products of generators."""
    q = q1.e() * q1.eta() + 2
    assert q1.coadd(q) == q1.coadd(q1.e()) * q1.coadd(q1.eta()) + q1.coadd(2)
    assert q1.comul(q1.eta() ** 2) == q1.comul(q1.eta()) ** 2


def test_zero_carry_for_c_zero():
    """Test that Q_0 has the primitive coaddition eta1 + eta2."""
    q0 = Biring(3, 0)
    assert q0.coadd(q0.eta()) == q0.left(q0.eta()) + q0.right(q0.eta())


@pytest.mark.parametrize("c", [0, 1])
def test_counit_points(c):
    """Test that the counits give the zero and one of U_c."""
    biring = Biring(3, c)
    target = truncated_line(3, 3)
    uc = UcRing(target, c)
    assert biring.evaluate(biring.zero_point(target)) == uc.zero()
    assert biring.evaluate(biring.one_point(target)) == uc.one()


@pytest.mark.parametrize("c", [0, 1, 2])
def test_antipode_negates(c):
    """Test that f + f o antipode is the zero point."""
    biring = Biring(3, c)
    target = truncated_line(3, 3)
    t = target.var("t")
    f = biring.point(target, t + 1, t ** 2 + 2)
    total = biring.point_ops(f, biring.negate_point(f), "add")
    assert total == biring.zero_point(target)
    assert biring.evaluate(biring.negate_point(f)) == -biring.evaluate(f)


def test_point_operations_match_uc():
    """Test that evaluation transports the point operations for p = 3."""
    result = biring_points(3, make_rng(0), 5)
    assert result.passed, result.detail


def test_unit_point_is_multiplicative_identity(q1):
    """Test that the one point is neutral for the multiplication of points."""
    target = truncated_line(3, 4)
    t = target.var("t")
    f = q1.point(target, 2 * t + 1, t ** 3)
    assert q1.point_ops(f, q1.one_point(target), "mul") == f
    assert q1.point_ops(f, q1.zero_point(target), "add") == f


@pytest.mark.parametrize("c", [0, 1, 2])
def test_beta_structure_on_integers(c):
    """Test that beta_structure sends n to (n mod p, theta(n))."""
    biring = Biring(3, c)
    witt = WittRing.of(3)
    prime = prime_field_algebra(3)
    for n in range(9):
        point = biring.beta_structure(witt.from_int(n))
        assert point.image_e == prime.element(n % 3)
        assert point.image_eta == prime.element(theta(n, c, 3))


def test_beta_structure_of_p(q1):
    """Test that p maps to the point (0, c)."""
    point = q1.beta_structure(WittRing.of(3).prime())
    prime = prime_field_algebra(3)
    assert point.image_e == prime.zero()
    assert point.image_eta == prime.one()


def test_point_from_uc_inverts_evaluate(q1):
    """Test point_from_uc o evaluate = id."""
    target = truncated_line(3, 3)
    t = target.var("t")
    f = q1.point(target, t, 1 + t)
    assert q1.point_from_uc(q1.evaluate(f)) == f


def test_point_from_uc_checks_parameter(q1):
    """Test that a U_0 element is not a point of Q_1."""
    target = truncated_line(3, 3)
    with pytest.raises(StructuralError):
        q1.point_from_uc(UcRing(target, 0).one())


def test_unknown_point_operation(q1):
    """Test that an unknown operation name raises StructuralError."""
    target = prime_field_algebra(3)
    f = q1.point(target, 1, 0)
    with pytest.raises(StructuralError, match="Unknown point operation"):
        q1.point_ops(f, f, "sub")


def test_points_need_fp_algebra_of_same_characteristic(q1, line):
    """Test that points into W_2-algebras or other characteristics are rejected."""
    with pytest.raises(StructuralError):
        q1.point(line, 0, 0)
    with pytest.raises(StructuralError, match="characteristic"):
        q1.point(prime_field_algebra(5), 0, 0)


def test_points_with_different_targets(q1):
    """Test that point_ops rejects points into different algebras."""
    f = q1.point(truncated_line(3, 3), 1, 0)
    g = q1.point(truncated_line(3, 4), 1, 0)
    with pytest.raises(StructuralError):
        q1.point_ops(f, g, "add")
