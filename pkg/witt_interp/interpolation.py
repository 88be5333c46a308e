"""
The interpolated rings U_c(D_0): D_0 x D_0 with

    (x0, x1) + (y0, y1) = (x0 + y0, x1 + y1 + c * C_p(x0, y0))
    (x0, x1) * (y0, y1) = (x0 y0, x0^p y1 + y0^p x1)

U_1 is W_2(D_0); U_0 is the Frobenius-twisted square-zero extension.
"""
import logging
import random
from dataclasses import dataclass

from algebra.fp_algebra import AlgebraElement, FPAlgebra
from coefficients.carries import cp_eval
from coefficients.witt import W2Elem, WittRing, base_delta
from utils.errors import StructuralError

logger = logging.getLogger("TotalP.Interpolation")


@dataclass(frozen=True, eq=False)
class UCElem:
    x0: AlgebraElement
    x1: AlgebraElement
    c: AlgebraElement

    @property
    def algebra(self):
        return self.x0.algebra

    @property
    def p(self):
        return self.algebra.p

    def _check(self, other):
        if not isinstance(other, UCElem):
            raise StructuralError(f"Expected a UCElem, got {other!r}")
        if not self.algebra.same_as(other.algebra):
            raise StructuralError(f"Mismatched D_0: {self.algebra.name} and {other.algebra.name}")
        if self.c != other.c:
            raise StructuralError(f"Mismatched interpolation parameters c = {self.c} and c = {other.c}")

    def __add__(self, other):
        return uc_add(self, other)

    def __mul__(self, other):
        return uc_mul(self, other)

    def __neg__(self):
        negated = -self.x0
        return UCElem(negated, -self.x1 - self.c * cp_eval(self.x0, negated, self.p), self.c)

    def __sub__(self, other):
        return uc_add(self, -other)

    def __pow__(self, exponent):
        result = UcRing(self.algebra, self.c).one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, UCElem):
            return NotImplemented
        return (self.algebra.same_as(other.algebra) and self.c == other.c
                and self.x0 == other.x0 and self.x1 == other.x1)

    def __hash__(self):
        return hash((self.x0, self.x1))

    def is_zero(self):
        return self.x0.is_zero() and self.x1.is_zero()

    def __repr__(self):
        return f"U_{self.c}({self.x0}, {self.x1})"


def uc_add(a, b):
    a._check(b)
    return UCElem(a.x0 + b.x0, a.x1 + b.x1 + a.c * cp_eval(a.x0, b.x0, a.p), a.c)


def uc_mul(a, b):
    a._check(b)
    p = a.p
    return UCElem(a.x0 * b.x0, (a.x0 ** p) * b.x1 + (b.x0 ** p) * a.x1, a.c)


def _witt_ring(algebra):
    return WittRing(algebra.field)


def uc_scalar(r, algebra, c):
    """The structure map R -> U_c(D_0), r |-> (r0, c * base_delta(r, 1))."""
    if not isinstance(r, W2Elem):
        r = _witt_ring(algebra)(r)
    c = algebra.element(c)
    return UCElem(algebra.element(r.w0), c * base_delta(r, 1), c)


def rescale_hom(e, a):
    """U_c(D_0) -> U_{ce}(D_0), (x0, x1) |-> (x0, e x1)."""
    e = a.algebra.element(e)
    return UCElem(a.x0, e * a.x1, a.c * e)


def uc_map(h, a):
    """Functoriality: U_c(B_0) -> U_{h(c)}(C_0) for an F_q-algebra map h."""
    if not a.algebra.same_as(h.source):
        raise StructuralError(f"{h.name} does not start at {a.algebra.name}")
    return UCElem(h(a.x0), h(a.x1), h(a.c))


class UcRing:
    """U_c(D_0) as a parent object: constructors and sampling."""

    def __init__(self, algebra, c):
        if not isinstance(algebra, FPAlgebra) or algebra.is_witt:
            raise StructuralError("U_c(D_0) needs an F_q-algebra D_0")
        self.algebra = algebra
        self.c = algebra.element(c)

    def __repr__(self):
        return f"U_{self.c}({self.algebra.name})"

    def element(self, x0, x1=0):
        return UCElem(self.algebra.element(x0), self.algebra.element(x1), self.c)

    __call__ = element

    def zero(self):
        return self.element(0, 0)

    def one(self):
        return self.element(1, 0)

    def scalar(self, r):
        return uc_scalar(r, self.algebra, self.c)

    def random_element(self, rng=None, degree=2, terms=3):
        rng = rng or random
        return UCElem(self.algebra.random_element(rng, degree, terms),
                      self.algebra.random_element(rng, degree, terms), self.c)

    def project(self, a):
        """The ring map U_c(D_0) -> D_0, (x0, x1) |-> x0."""
        return a.x0

    def ideal_element(self, x1):
        """The element (0, x1) of the square-zero ideal I."""
        return self.element(0, x1)
