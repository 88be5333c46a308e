"""
Length-two p-typical Witt vectors W_2(F_q) in Witt coordinates.

Sum:     (a0, a1) + (b0, b1) = (a0 + b0, a1 + b1 + C_p(a0, b0))
Product: (a0, a1) * (b0, b1) = (a0 b0, a0^p b1 + b0^p a1)
"""
import logging
import random

from coefficients.carries import cp_eval
from coefficients.finite_field import FiniteField, FqElem
from utils.errors import StructuralError

logger = logging.getLogger("TotalP.Witt")


class WittRing:
    """W_2(F_q) over a given finite field."""

    def __init__(self, field):
        if not isinstance(field, FiniteField):
            raise StructuralError(f"Expected a FiniteField, got {field!r}")
        self.field = field
        self.p = field.p

    @classmethod
    def of(cls, p, m=1, modulus=None):
        return cls(FiniteField(p, m, modulus))

    def __eq__(self, other):
        return isinstance(other, WittRing) and self.field == other.field

    def __hash__(self):
        return hash(("WittRing", self.field))

    def __repr__(self):
        return f"W2({self.field!r})"

    def __call__(self, value):
        if isinstance(value, W2Elem):
            if value.ring != self:
                raise StructuralError(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, tuple) and len(value) == 2:
            return W2Elem(self, self.field(value[0]), self.field(value[1]))
        if isinstance(value, FqElem):
            return self.teichmuller(value)
        raise StructuralError(f"Cannot coerce {value!r} into {self!r}")

    def zero(self):
        return W2Elem(self, self.field.zero(), self.field.zero())

    def one(self):
        return W2Elem(self, self.field.one(), self.field.zero())

    def prime(self):
        """The element p = (0, 1)."""
        return W2Elem(self, self.field.zero(), self.field.one())

    def from_int(self, n):
        """Image of an integer; lands in W_2(F_p) = Z/p^2."""
        p = self.p
        a0 = n % p
        a1 = ((n - pow(a0, p, p * p)) // p) % p
        return W2Elem(self, self.field(a0), self.field(a1))

    def from_rational(self, numerator, denominator=1):
        if denominator % self.p == 0:
            raise StructuralError(f"Denominator {denominator} is divisible by {self.p}")
        return self.from_int(numerator) * self.from_int(denominator).inverse()

    def to_int(self, x):
        """The tau bijection onto Z/p^2 (prime-field coordinates only)."""
        x = self(x)
        p = self.p
        return (pow(int(x.w0), p, p * p) + p * int(x.w1)) % (p * p)

    def teichmuller(self, a):
        return W2Elem(self, self.field(a), self.field.zero())

    def lift(self, a):
        """A lift of a in F_q to W_2(F_q)."""
        return self.teichmuller(a)

    def times_p(self, x):
        """The map F_q -> W_2(F_q), x -> p * [x] = (0, x^p)."""
        x = self.field(x)
        return W2Elem(self, self.field.zero(), x ** self.p)

    def divide_by_p(self, w):
        """Inverse of times_p on elements with vanishing 0-th coordinate."""
        w = self(w)
        if not w.w0.is_zero():
            raise StructuralError(f"{w!r} is not divisible by p")
        return self.field.pth_root(w.w1)

    def reduce(self, x):
        return self(x).w0

    def frobenius(self, x):
        x = self(x)
        return W2Elem(self, x.w0 ** self.p, x.w1 ** self.p)

    def is_unit(self, x):
        return not self(x).w0.is_zero()

    def inverse(self, x):
        return self(x).inverse()

    def elements(self):
        for a0 in self.field.elements():
            for a1 in self.field.elements():
                yield W2Elem(self, a0, a1)

    def random_element(self, rng=None):
        rng = rng or random
        return W2Elem(self, self.field.random_element(rng), self.field.random_element(rng))


class W2Elem:
    """A length-two Witt vector (w0, w1)."""

    __slots__ = ("ring", "w0", "w1")

    def __init__(self, ring, w0, w1):
        self.ring = ring
        self.w0 = w0
        self.w1 = w1

    def _coerce(self, other):
        if isinstance(other, W2Elem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise StructuralError(f"Mismatched Witt rings: {self.ring!r} and {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return W2Elem(self.ring, self.w0 + other.w0,
                      self.w1 + other.w1 + cp_eval(self.w0, other.w0, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        negated = -self.w0
        return W2Elem(self.ring, negated, -self.w1 - cp_eval(self.w0, negated, self.ring.p))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        return W2Elem(self.ring, self.w0 * other.w0,
                      (self.w0 ** p) * other.w1 + (other.w0 ** p) * self.w1)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        # (x0, x1)^n = (x0^n, n x0^(p(n-1)) x1)
        if exponent == 0:
            return self.ring.one()
        p = self.ring.p
        return W2Elem(self.ring, self.w0 ** exponent,
                      (exponent % p) * (self.w0 ** (p * (exponent - 1))) * self.w1)

    def inverse(self):
        if self.w0.is_zero():
            raise ZeroDivisionError(f"{self!r} is not a unit")
        b0 = self.w0.inverse()
        return W2Elem(self.ring, b0, -self.w1 * b0 ** (2 * self.ring.p))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_zero(self):
        return self.w0.is_zero() and self.w1.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, W2Elem):
            return NotImplemented
        return self.ring == other.ring and self.w0 == other.w0 and self.w1 == other.w1

    def __hash__(self):
        return hash((self.w0, self.w1))

    def symmetric_int(self):
        """Representative of tau(self) in (-p^2/2, p^2/2]."""
        n = self.ring.to_int(self)
        modulus = self.ring.p ** 2
        return n - modulus if n > modulus // 2 else n

    def __str__(self):
        if self.ring.field.m == 1:
            return str(self.symmetric_int())
        return f"W({self.w0}, {self.w1})"

    def __repr__(self):
        return f"W2({self.w0}, {self.w1})"


def _check_same_ring(a, b):
    if not isinstance(a, W2Elem) or not isinstance(b, W2Elem):
        raise StructuralError("Witt operations expect W2Elem operands")
    if a.ring != b.ring:
        raise StructuralError(f"Mismatched Witt rings: {a.ring!r} and {b.ring!r}")


def w2_add(a, b):
    _check_same_ring(a, b)
    return a + b


def w2_mul(a, b):
    _check_same_ring(a, b)
    return a * b


def frobenius_w2(r):
    """Witt vector Frobenius (r0^p, r1^p)."""
    return r.ring.frobenius(r)


def base_delta(r, c=1):
    """
    The canonical total p-derivation on W_2(F_q), scaled by c.

    Computed as c * (phi(r) - r^p) / p; the quotient always equals r1.
    """
    ring = r.ring
    difference = frobenius_w2(r) - r ** ring.p
    return ring.field(c) * ring.divide_by_p(difference)


def theta(n, c, p):
    """Integer form on Z/p^2: c * (n - n^p) / p mod p."""
    n %= p * p
    return (c * ((n - n ** p) // p)) % p
