"""
Finite fields F_q = F_p[t]/(f) with a fixed monic irreducible modulus.

Elements are stored as coefficient tuples (low degree first) of length m.
"""
import logging
import random
from functools import lru_cache
from itertools import product

import sympy

from utils.errors import StructuralError

logger = logging.getLogger("TotalP.FiniteField")


def check_prime(p):
    """Reject anything that is not an odd prime."""
    if not isinstance(p, int) or isinstance(p, bool) or not sympy.isprime(p):
        raise StructuralError(f"{p!r} is not a prime")
    if p == 2:
        raise StructuralError("p = 2 is not supported")


def is_irreducible(modulus, p):
    """
    Test irreducibility of a polynomial over F_p.

    Args:
        modulus: Coefficients, low degree first
        p: The prime

    Returns:
        True if the polynomial is irreducible over F_p
    """
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed([int(c) % p for c in modulus])), t, modulus=p)
    if poly.degree() < 1:
        return False
    return bool(poly.is_irreducible)


@lru_cache(maxsize=None)
def default_modulus(p, m):
    """First monic irreducible of degree m, coefficients searched lexicographically."""
    check_prime(p)
    if m < 1:
        raise StructuralError(f"Extension degree must be positive, got {m}")
    for high_to_low in product(range(p), repeat=m):
        modulus = tuple(reversed(high_to_low)) + (1,)
        if is_irreducible(modulus, p):
            logger.debug(f"Default modulus for F_{p}^{m}: {modulus}")
            return modulus
    raise StructuralError(f"No irreducible polynomial of degree {m} over F_{p}")


class FiniteField:
    """The field F_q with q = p^m."""

    def __init__(self, p, m=1, modulus=None):
        check_prime(p)
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise StructuralError(f"Modulus {modulus} is not monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise StructuralError(f"Modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p ** m

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self):
        return hash(("FiniteField", self.p, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.m}"

    def __call__(self, value):
        if isinstance(value, FqElem):
            if value.field != self:
                raise StructuralError(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.m - 1))
        if isinstance(value, (tuple, list)):
            if len(value) > self.m:
                raise StructuralError(f"Too many coordinates for {self!r}: {value}")
            coords = tuple(int(c) % self.p for c in value)
            return FqElem(self, coords + (0,) * (self.m - len(coords)))
        raise StructuralError(f"Cannot coerce {value!r} into {self!r}")

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        """The class of t."""
        if self.m == 1:
            return self(-self.modulus[0])
        return self((0, 1))

    def from_rational(self, numerator, denominator=1):
        if denominator % self.p == 0:
            raise StructuralError(f"Denominator {denominator} is divisible by {self.p}")
        return self(numerator) * self(denominator).inverse()

    def elements(self):
        for coords in product(range(self.p), repeat=self.m):
            yield FqElem(self, tuple(coords))

    def random_element(self, rng=None):
        rng = rng or random
        return FqElem(self, tuple(rng.randrange(self.p) for _ in range(self.m)))

    def frobenius(self, x):
        return self(x) ** self.p

    def pth_root(self, x):
        """Inverse of Frobenius: x^(p^(m-1))."""
        return self(x) ** (self.p ** (self.m - 1))

    def multiplication_matrix(self, x):
        """Matrix over F_p of y -> x*y in the basis 1, t, ..., t^(m-1); columns are images."""
        x = self(x)
        columns = []
        for k in range(self.m):
            basis = [0] * self.m
            basis[k] = 1
            columns.append((x * self(tuple(basis))).coeffs)
        return [[columns[col][row] for col in range(self.m)] for row in range(self.m)]

    def _reduce(self, coeffs):
        p, m, modulus = self.p, self.m, self.modulus
        coeffs = list(coeffs)
        for degree in range(len(coeffs) - 1, m - 1, -1):
            top = coeffs[degree] % p
            if top:
                shift = degree - m
                for k in range(m):
                    coeffs[shift + k] -= top * modulus[k]
            coeffs[degree] = 0
        coeffs = [c % p for c in coeffs[:m]]
        return tuple(coeffs + [0] * (m - len(coeffs)))


class FqElem:
    """An element of a FiniteField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise StructuralError(f"Mismatched fields: {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        if self.field.m == 1:
            return FqElem(self.field, ((self.coeffs[0] * other.coeffs[0]) % p,))
        product_coeffs = [0] * (2 * self.field.m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product_coeffs[i + j] += a * b
        return FqElem(self.field, self.field._reduce(product_coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.field.m == 1:
            return FqElem(self.field, (pow(self.coeffs[0], exponent, self.field.p),))
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError(f"Zero has no inverse in {self.field!r}")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __int__(self):
        if any(self.coeffs[1:]):
            raise StructuralError(f"{self!r} is not in the prime field")
        return self.coeffs[0]

    def symmetric_int(self):
        """Prime-field representative in (-p/2, p/2]."""
        value = int(self)
        return value - self.field.p if value > self.field.p // 2 else value

    def __str__(self):
        if self.field.m == 1:
            return str(self.symmetric_int())
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*t^{k}" if c != 1 else f"t^{k}")
        return "(" + " + ".join(terms) + ")" if terms else "0"

    def __repr__(self):
        return f"{self.field!r}({self})"
