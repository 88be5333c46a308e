"""
Sparse multivariate polynomials over a coefficient ring (F_q or W_2(F_q)).

A polynomial is a dict from exponent tuples to nonzero coefficients.
"""
import logging

from coefficients.finite_field import FiniteField, FqElem
from coefficients.witt import W2Elem, WittRing
from utils.errors import StructuralError

logger = logging.getLogger("TotalP.Polynomial")

MONOMIAL_ORDERS = ("grevlex", "grlex", "lex")
RESERVED_NAMES = ("p",)


def _grevlex_key(monomial):
    return (sum(monomial), tuple(-e for e in reversed(monomial)))


def _grlex_key(monomial):
    return (sum(monomial), monomial)


def _lex_key(monomial):
    return monomial


ORDER_KEYS = {"grevlex": _grevlex_key, "grlex": _grlex_key, "lex": _lex_key}


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True if a divides b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b, a):
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """Polynomial ring over F_q or W_2(F_q) in named variables."""

    def __init__(self, coefficient_ring, variables, order="grevlex"):
        if not isinstance(coefficient_ring, (FiniteField, WittRing)):
            raise StructuralError(f"Unsupported coefficient ring {coefficient_ring!r}")
        if order not in MONOMIAL_ORDERS:
            raise StructuralError(f"Unknown monomial order {order!r}; use one of {MONOMIAL_ORDERS}")
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise StructuralError(f"Duplicate variable names in {variables}")
        for name in variables:
            if not isinstance(name, str) or not name.isidentifier() or name in RESERVED_NAMES:
                raise StructuralError(f"Invalid variable name {name!r}")
        self.coefficient_ring = coefficient_ring
        self.variables = variables
        self.order = order
        self.key = ORDER_KEYS[order]
        self.nvars = len(variables)
        self._index = {name: i for i, name in enumerate(variables)}

    @property
    def p(self):
        return self.coefficient_ring.p

    @property
    def is_witt(self):
        return isinstance(self.coefficient_ring, WittRing)

    @property
    def field(self):
        """The residue field F_q."""
        if self.is_witt:
            return self.coefficient_ring.field
        return self.coefficient_ring

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.coefficient_ring == other.coefficient_ring
                and self.variables == other.variables and self.order == other.order)

    def __hash__(self):
        return hash((self.coefficient_ring, self.variables, self.order))

    def __repr__(self):
        return f"{self.coefficient_ring!r}[{', '.join(self.variables)}]"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"Undefined variable {name!r} in {self!r}")

    def coefficient(self, value):
        return self.coefficient_ring(value)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, value):
        value = self.coefficient(value)
        if value.is_zero():
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: value})

    def monomial(self, exponents, coefficient=1):
        coefficient = self.coefficient(coefficient)
        if coefficient.is_zero():
            return self.zero()
        return Polynomial(self, {tuple(exponents): coefficient})

    def var(self, name):
        exponents = [0] * self.nvars
        exponents[self.index(name)] = 1
        return self.monomial(exponents)

    def gens(self):
        return [self.var(name) for name in self.variables]

    def from_terms(self, terms):
        """Build a polynomial from (exponents, coefficient) pairs, combining repeats."""
        result = {}
        zero = self.coefficient_ring.zero()
        for exponents, coefficient in terms:
            exponents = tuple(exponents)
            result[exponents] = result.get(exponents, zero) + self.coefficient(coefficient)
        return Polynomial(self, {m: c for m, c in result.items() if not c.is_zero()})

    def parse(self, text):
        from algebra.parser import parse_polynomial
        return parse_polynomial(text, self)

    def __call__(self, value):
        """Coerce ints, coefficients, strings and polynomials into this ring."""
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise StructuralError(f"{value} belongs to {value.ring!r}, not {self!r}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, FqElem, W2Elem)):
            return self.constant(value)
        element_poly = getattr(value, "poly", None)
        if isinstance(element_poly, Polynomial):
            return self(element_poly)
        raise StructuralError(f"Cannot coerce {value!r} into {self!r}")

    def extend(self, new_variables):
        return PolyRing(self.coefficient_ring, self.variables + tuple(new_variables), self.order)

    def with_coefficients(self, coefficient_ring):
        return PolyRing(coefficient_ring, self.variables, self.order)

    def embed(self, poly):
        """Image of a polynomial from a ring whose variables are a prefix of ours."""
        source = poly.ring
        if source.variables != self.variables[:source.nvars] or source.coefficient_ring != self.coefficient_ring:
            raise StructuralError(f"Cannot embed {source!r} into {self!r}")
        pad = (0,) * (self.nvars - source.nvars)
        return Polynomial(self, {m + pad: c for m, c in poly.terms.items()})


class Polynomial:
    """An immutable sparse polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise StructuralError(f"Mismatched rings: {self.ring!r} and {other.ring!r}")
            return other
        if isinstance(other, (int, FqElem, W2Elem)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            if monomial in result:
                total = result[monomial] + coefficient
                if total.is_zero():
                    del result[monomial]
                else:
                    result[monomial] = total
            else:
                result[monomial] = coefficient
        return Polynomial(self.ring, result)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

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
        if isinstance(other, (int, FqElem, W2Elem)):
            scalar = self.ring.coefficient(other)
            return Polynomial(self.ring, {m: c * scalar for m, c in self.terms.items()
                                          if not (c * scalar).is_zero()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                monomial = monomial_mul(m1, m2)
                value = c1 * c2
                if monomial in result:
                    value = result[monomial] + value
                result[monomial] = value
        return Polynomial(self.ring, {m: c for m, c in result.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise StructuralError("Negative powers of polynomials are undefined")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FqElem, W2Elem)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.coefficient_ring.zero())

    def sorted_terms(self):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda item: self.ring.key(item[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise StructuralError("The zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def map_coefficients(self, fn, ring=None):
        ring = ring or self.ring
        result = {}
        for monomial, coefficient in self.terms.items():
            value = fn(coefficient)
            if not value.is_zero():
                result[monomial] = value
        return Polynomial(ring, result)

    def derivative(self, index):
        result = {}
        for monomial, coefficient in self.terms.items():
            e = monomial[index]
            if e:
                value = coefficient * e
                if not value.is_zero():
                    shifted = list(monomial)
                    shifted[index] -= 1
                    result[tuple(shifted)] = value
        return Polynomial(self.ring, result)

    def evaluate(self, values, scalar, one):
        """
        Evaluate at values (one per variable) in any commutative ring.

        Args:
            values: Sequence of target elements, one per variable
            scalar: Callable mapping a coefficient to a target element
            one: Multiplicative identity of the target

        Returns:
            sum of scalar(c) * prod values[i]^e_i
        """
        powers = [[one] for _ in values]

        def power(i, e):
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * values[i])
            return cache[e]

        total = None
        for monomial, coefficient in self.sorted_terms():
            term = scalar(coefficient)
            for i, e in enumerate(monomial):
                if e:
                    term = term * power(i, e)
            total = term if total is None else total + term
        if total is None:
            return scalar(self.ring.coefficient_ring.zero())
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for monomial, coefficient in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.variables, monomial):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            text = str(coefficient)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            if factors:
                body = "*".join(factors) if text == "1" else f"{text}*" + "*".join(factors)
            else:
                body = text
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"Polynomial({self})"
