"""
Finitely presented algebras R[x]/I over R = F_q or W_2(F_q).

Elements are represented by normal forms with respect to a reduced Gröbner
basis; for W_2-algebras the basis is monic, which certifies flatness.
"""
import logging
import random
from dataclasses import dataclass
from itertools import combinations

from algebra.groebner import buchberger, divide
from algebra.polynomial import Polynomial, PolyRing, monomial_divides, monomial_mul, monomial_quotient
from coefficients.finite_field import FqElem
from coefficients.witt import W2Elem, WittRing
from utils.errors import DegenerateLocalizationError, StructuralError

logger = logging.getLogger("TotalP.Algebra")


@dataclass(frozen=True)
class Origin:
    """How an algebra was built from a parent: 'extension' or 'localization'."""
    kind: str
    parent: "FPAlgebra"
    new_variables: tuple
    inverted: Polynomial = None


class FPAlgebra:
    """A quotient R[x_1..x_n]/(relations)."""

    def __init__(self, ring, relations=(), name=None, require_smooth=False, origin=None, inverted=()):
        if not isinstance(ring, PolyRing):
            raise StructuralError(f"Expected a PolyRing, got {ring!r}")
        self.ring = ring
        self.name = name or "A"
        self.relations = [ring(r) for r in relations]
        self.origin = origin
        # (inverse variable, inverted polynomial) pairs from localizations
        self.inverted = tuple(inverted)
        result = buchberger(self.relations, ring)
        self.basis = result.basis
        self._normal_forms = {}
        self._reduction = None
        self._staircase_cache = {}
        if any(g.is_constant() for g in self.basis):
            logger.warning(f"{self.name}: the ideal is the unit ideal")
        if require_smooth and not self.is_smooth():
            raise StructuralError(f"{self.name} fails the Jacobian smoothness criterion")
        logger.debug(f"Built {self!r} with {len(self.basis)} basis elements")

    @classmethod
    def from_strings(cls, coefficient_ring, variables, relations=(), order="grevlex", name=None, **kwargs):
        ring = PolyRing(coefficient_ring, variables, order)
        return cls(ring, [ring.parse(r) if isinstance(r, str) else r for r in relations], name=name, **kwargs)

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.name} = {self.ring!r}/({rels})"

    # Ring data

    @property
    def p(self):
        return self.ring.p

    @property
    def variables(self):
        return self.ring.variables

    @property
    def coefficient_ring(self):
        return self.ring.coefficient_ring

    @property
    def field(self):
        return self.ring.field

    @property
    def is_witt(self):
        return self.ring.is_witt

    def same_as(self, other):
        return self is other or (isinstance(other, FPAlgebra) and self.ring == other.ring
                                 and self.basis == other.basis)

    def max_relation_degree(self):
        return max((g.degree() for g in self.basis), default=0)

    # Normal forms

    def _reducer(self, monomial):
        for g in self.basis:
            if monomial_divides(g.leading_monomial(), monomial):
                return g
        return None

    def _monomial_normal_form(self, monomial):
        cache = self._normal_forms
        if monomial in cache:
            return cache[monomial]
        zero = self.coefficient_ring.zero()
        stack = [monomial]
        while stack:
            current = stack[-1]
            if current in cache:
                stack.pop()
                continue
            g = self._reducer(current)
            if g is None:
                cache[current] = {current: self.coefficient_ring.one()}
                stack.pop()
                continue
            g_lm = g.leading_monomial()
            shift = monomial_quotient(current, g_lm)
            tail = [(monomial_mul(m, shift), c) for m, c in g.terms.items() if m != g_lm]
            # every tail monomial is smaller than current in the monomial order
            missing = [m for m, _ in tail if m not in cache]
            if missing:
                stack.extend(missing)
                continue
            terms = {}
            for m, c in tail:
                for nm, nc in cache[m].items():
                    terms[nm] = terms.get(nm, zero) - c * nc
            cache[current] = {m: c for m, c in terms.items() if not c.is_zero()}
            stack.pop()
        return cache[monomial]

    def normal_form(self, poly):
        """Canonical representative supported on the staircase."""
        poly = self.ring(poly)
        zero = self.coefficient_ring.zero()
        terms = {}
        for monomial, coefficient in poly.terms.items():
            for m, c in self._monomial_normal_form(monomial).items():
                terms[m] = terms.get(m, zero) + coefficient * c
        return Polynomial(self.ring, {m: c for m, c in terms.items() if not c.is_zero()})

    def divide(self, poly):
        """Division by the basis with quotients: poly == sum q_i g_i + remainder."""
        return divide(self.ring(poly), self.basis)

    def is_zero(self, poly):
        return self.normal_form(poly).is_zero()

    def contains(self, poly):
        """Ideal membership."""
        return self.is_zero(poly)

    def is_staircase(self, monomial):
        return not any(monomial_divides(g.leading_monomial(), monomial) for g in self.basis)

    def staircase(self, degree):
        """Staircase monomials of total degree <= degree, in ascending order."""
        cached = self._staircase_cache.get(degree)
        if cached is not None:
            return cached
        monomials = []

        def walk(prefix, remaining):
            if len(prefix) == self.ring.nvars:
                monomial = tuple(prefix)
                if self.is_staircase(monomial):
                    monomials.append(monomial)
                return
            for e in range(remaining + 1):
                walk(prefix + [e], remaining - e)

        walk([], degree)
        monomials.sort(key=self.ring.key)
        self._staircase_cache[degree] = monomials
        return monomials

    # Elements

    def element(self, value):
        if isinstance(value, AlgebraElement):
            if not value.algebra.same_as(self):
                raise StructuralError(f"{value} belongs to {value.algebra.name}, not {self.name}")
            return value
        return AlgebraElement(self, self.normal_form(self.ring(value)))

    __call__ = element

    def zero(self):
        return AlgebraElement(self, self.ring.zero())

    def one(self):
        return self.element(1)

    def var(self, name):
        return self.element(self.ring.var(name))

    def gens(self):
        return [self.var(name) for name in self.variables]

    def random_element(self, rng=None, degree=2, terms=4):
        rng = rng or random
        stair = self.staircase(degree)
        poly = self.ring.from_terms(
            (rng.choice(stair), self.coefficient_ring.random_element(rng)) for _ in range(terms)
        )
        return self.element(poly)

    # Reduction mod p

    @property
    def reduction(self):
        """A_0 = A / p A, presented by the reduced basis."""
        if not self.is_witt:
            return self
        if self._reduction is None:
            ring0 = self.ring.with_coefficients(self.field)
            origin = None
            if self.origin is not None:
                origin = Origin(self.origin.kind, self.origin.parent.reduction, self.origin.new_variables,
                                reduce_polynomial(self.origin.inverted, ring0)
                                if self.origin.inverted is not None else None)
            inverted = tuple((t, reduce_polynomial(s, ring0)) for t, s in self.inverted)
            self._reduction = FPAlgebra(ring0, [reduce_polynomial(g, ring0) for g in self.basis],
                                        name=f"{self.name}_0", origin=origin, inverted=inverted)
        return self._reduction

    def reduce(self, value):
        """The image of an element of A in A_0."""
        poly = value.poly if isinstance(value, AlgebraElement) else self.ring(value)
        if not self.is_witt:
            return self.element(poly)
        return self.reduction.element(reduce_polynomial(poly, self.reduction.ring))

    def lift(self, value):
        """Teichmüller-coefficient lift of an element of A_0 to A."""
        poly = value.poly if isinstance(value, AlgebraElement) else value
        witt = self.coefficient_ring
        return self.element(poly.map_coefficients(witt.teichmuller, self.ring))

    def times_p(self, value):
        """The additive map A_0 -> A, a -> p * lift(a)."""
        poly = value.poly if isinstance(value, AlgebraElement) else value
        witt = self.coefficient_ring
        return self.element(poly.map_coefficients(witt.times_p, self.ring))

    def divide_by_p(self, value):
        """Inverse of times_p on p-divisible elements; raises StructuralError otherwise."""
        poly = self.normal_form(value.poly if isinstance(value, AlgebraElement) else value)
        witt = self.coefficient_ring
        return self.reduction.element(poly.map_coefficients(witt.divide_by_p, self.reduction.ring))

    def frobenius_coefficients(self, poly):
        """Apply Witt (or field) Frobenius to every coefficient of an ambient polynomial."""
        return self.ring(poly).map_coefficients(self.coefficient_ring.frobenius)

    # Smoothness

    def jacobian(self):
        """Jacobian matrix of the defining relations, reduced mod p."""
        ring0 = self.ring.with_coefficients(self.field)
        rows = [reduce_polynomial(r, ring0) for r in self.relations]
        return [[r.derivative(i) for i in range(ring0.nvars)] for r in rows], rows

    def is_smooth(self):
        """
        Jacobian criterion for complete intersections: the relations together
        with all c x c minors of the Jacobian generate the unit ideal mod p.
        """
        matrix, rows = self.jacobian()
        c = len(rows)
        if c == 0:
            return True
        n = self.ring.nvars
        if c > n:
            return False
        ring0 = self.ring.with_coefficients(self.field)
        minors = []
        for columns in combinations(range(n), c):
            minors.append(_determinant([[matrix[r][col] for col in columns] for r in range(c)], ring0))
        generators = rows + [m for m in minors if not m.is_zero()]
        basis = buchberger(generators, ring0).basis
        smooth = any(g.is_constant() and not g.is_zero() for g in basis)
        logger.debug(f"{self.name}: Jacobian criterion {'passes' if smooth else 'fails'}")
        return smooth

    # Constructions

    def extend(self, new_variables, name=None):
        """Polynomial extension A[new variables]."""
        ring = self.ring.extend(new_variables)
        relations = [ring.embed(r) for r in self.relations]
        origin = Origin("extension", self, tuple(new_variables))
        return FPAlgebra(ring, relations, name=name or f"{self.name}[{', '.join(new_variables)}]",
                         origin=origin, inverted=self.inverted)

    def embed(self, value):
        """Image of an element of an ancestor along the chain of canonical maps."""
        poly = value.poly if isinstance(value, AlgebraElement) else value
        if poly.ring == self.ring:
            return self.element(poly)
        if self.origin is None:
            raise StructuralError(f"Cannot embed {poly} into {self.name}")
        parent_element = self.origin.parent.embed(poly)
        return self.element(self.ring.embed(parent_element.poly))



def reduce_polynomial(poly, ring0):
    """Reduce W_2-coefficients to F_q (identity for F_q-polynomials)."""
    if not poly.ring.is_witt:
        return Polynomial(ring0, dict(poly.terms))
    return poly.map_coefficients(lambda c: c.w0, ring0)


def reduce_mod_p(algebra):
    """A |-> A_0 = A / pA."""
    return algebra.reduction


def _determinant(matrix, ring):
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = ring.zero()
    for col in range(size):
        if matrix[0][col].is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        term = matrix[0][col] * _determinant(minor, ring)
        total = total + term if col % 2 == 0 else total - term
    return total


def fresh_name(base, taken):
    name = base
    counter = 1
    while name in taken or name == "p":
        name = f"{base}{counter}"
        counter += 1
    return name


def localize(algebra, s, name=None, inverse_name=None):
    """
    Adjoin an inverse of s: A[t]/(s t - 1).

    Args:
        algebra: A W_2- or F_q-algebra
        s: Element to invert (polynomial, string or AlgebraElement)
        name: Optional display name of the result
        inverse_name: Variable name for 1/s; defaults to '<x>_inv' when s is a
            variable x, else 's_inv'

    Returns:
        (localized algebra, canonical AlgebraHom A -> A[1/s])

    Raises:
        DegenerateLocalizationError: s vanishes in A_0
    """
    from algebra.homomorphism import AlgebraHom

    s_poly = s.poly if isinstance(s, AlgebraElement) else algebra.ring(s)
    s_poly = algebra.normal_form(s_poly)
    if algebra.reduce(s_poly).is_zero():
        raise DegenerateLocalizationError(f"{s_poly} vanishes modulo p in {algebra.name}")

    if inverse_name is None:
        variable = next((v for v in algebra.variables if s_poly == algebra.ring.var(v)), None)
        inverse_name = f"{variable}_inv" if variable else "s_inv"
    inverse_name = fresh_name(inverse_name, algebra.variables)

    ring = algebra.ring.extend([inverse_name])
    s_lifted = ring.embed(s_poly)
    t = ring.var(inverse_name)
    relations = [ring.embed(r) for r in algebra.relations] + [s_lifted * t - 1]
    origin = Origin("localization", algebra, (inverse_name,), s_lifted)
    localized = FPAlgebra(ring, relations, name=name or f"{algebra.name}[1/{s_poly}]", origin=origin,
                          inverted=algebra.inverted + ((inverse_name, s_lifted),))
    logger.info(f"Localized {algebra.name} at {s_poly}: new variable {inverse_name}")
    canonical = AlgebraHom(algebra, localized, {v: localized.ring.var(v) for v in algebra.variables})
    return localized, canonical


class AlgebraElement:
    """An element of an FPAlgebra, always in normal form."""

    __slots__ = ("algebra", "poly")

    def __init__(self, algebra, poly):
        self.algebra = algebra
        self.poly = poly

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra and not other.algebra.same_as(self.algebra):
                raise StructuralError(f"Mismatched algebras: {self.algebra.name} and {other.algebra.name}")
            return other
        if isinstance(other, (int, FqElem, W2Elem)):
            return self.algebra.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.algebra, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.algebra, self.poly - other.poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, FqElem, W2Elem)):
            return AlgebraElement(self.algebra, self.poly * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.algebra, self.algebra.normal_form(self.poly * other.poly))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise StructuralError("Negative powers are undefined; localize instead")
        result = self.algebra.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def is_zero(self):
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def is_constant(self):
        return self.poly.is_constant()

    def __eq__(self, other):
        if isinstance(other, (int, FqElem, W2Elem, Polynomial, str)):
            other = self.algebra.element(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.same_as(other.algebra) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"{self.algebra.name}({self.poly})"


def polynomial_algebra(coefficient_ring, variables, order="grevlex", name=None):
    """The free algebra R[x_1..x_n]."""
    return FPAlgebra(PolyRing(coefficient_ring, variables, order), [], name=name)


def witt_algebra(p, variables, relations=(), m=1, modulus=None, order="grevlex", name=None, **kwargs):
    """Convenience constructor over W_2(F_q)."""
    return FPAlgebra.from_strings(WittRing.of(p, m, modulus), variables, relations, order, name, **kwargs)


