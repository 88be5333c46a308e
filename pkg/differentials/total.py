"""
Total p-differentials of a flat W_2(F_q)-algebra A.

Omega^{1,tot}_A is the A_0-module generated by d^tot p, d^tot x_1..x_n with
one relation d^tot g = 0 per Gröbner basis element g of the ideal of A. The
expansion of d^tot on an ambient polynomial uses

    d^tot(a + b) = d^tot a + d^tot b + C_p(a, b) d^tot p
    d^tot(ab)    = (d^tot a) b^p + a^p (d^tot b)
    d^tot(r)     = ((phi(r) - r^p) / p) d^tot p      for r in W_2(F_q)
"""
import logging
from functools import lru_cache

from algebra.fp_algebra import AlgebraElement
from algebra.polynomial import Polynomial
from coefficients.carries import cp_eval
from coefficients.witt import base_delta
from utils.errors import InconsistencyError, StructuralError

logger = logging.getLogger("TotalP.Differentials")

MODULE_CACHE_SIZE = 256


class PresentedModule:
    """A finitely presented module over an F_q-algebra: generators modulo relation vectors."""

    def __init__(self, base, generator_names, relations=()):
        self.base = base
        self.generator_names = tuple(generator_names)
        self.rank = len(self.generator_names)
        self.relations = [self.element(r) if not isinstance(r, DiffElem) else r for r in relations]

    def element(self, coeffs):
        coeffs = tuple(self.base.element(c) for c in coeffs)
        if len(coeffs) != self.rank:
            raise StructuralError(f"Expected {self.rank} coefficients, got {len(coeffs)}")
        return DiffElem(self, coeffs)

    def zero(self):
        return DiffElem(self, tuple(self.base.zero() for _ in range(self.rank)))

    def gen(self, index):
        coeffs = [self.base.zero()] * self.rank
        coeffs[index] = self.base.one()
        return DiffElem(self, tuple(coeffs))

    def index(self, name):
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise StructuralError(f"No generator {name!r} in {self!r}")

    def is_free(self):
        return all(r.is_zero() for r in self.relations)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(self.generator_names)}; {len(self.relations)} relations)"


class DiffElem:
    """A coefficient vector over the base algebra of a PresentedModule."""

    __slots__ = ("module", "coeffs")

    def __init__(self, module, coeffs):
        self.module = module
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if not isinstance(other, DiffElem) or other.module is not self.module:
            if not (isinstance(other, DiffElem) and other.module.generator_names == self.module.generator_names
                    and other.module.base.same_as(self.module.base)):
                raise StructuralError("Module elements from different modules")

    def __add__(self, other):
        self._check(other)
        return DiffElem(self.module, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return DiffElem(self.module, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DiffElem(self.module, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar):
        if isinstance(scalar, AlgebraElement):
            scalar = self.module.base.element(scalar)
        return DiffElem(self.module, tuple(a * scalar for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiffElem):
            return NotImplemented
        return self.module.generator_names == other.module.generator_names and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def coefficient(self, name):
        return self.coeffs[self.module.index(name)]

    def __getitem__(self, index):
        return self.coeffs[index]

    def __str__(self):
        pieces = [f"({c})*{name}" for c, name in zip(self.coeffs, self.module.generator_names) if not c.is_zero()]
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self):
        return f"DiffElem({self})"


class DiffModule(PresentedModule):
    """Omega^{1,tot}_A presented over A_0."""

    def __init__(self, algebra):
        if not algebra.is_witt:
            raise StructuralError("Total differentials need a W_2(F_q)-algebra")
        self.algebra = algebra
        names = ["d^tot p"] + [f"d^tot {v}" for v in algebra.variables]
        super().__init__(algebra.reduction, names)
        self.relations = [dtot_expand(g, self) for g in algebra.basis]
        logger.debug(f"Omega^tot of {algebra.name}: rank {self.rank}, {len(self.relations)} relations")

    def dp(self):
        return self.gen(0)

    def d(self, variable):
        return self.gen(1 + self.algebra.ring.index(variable))

    def localization_relations(self):
        """d^tot(s t - 1) for every recorded inverse t = 1/s; the d^tot t coefficient is s^p."""
        ring = self.algebra.ring
        return [(t, s, dtot_expand(s * ring.var(t) - 1, self)) for t, s in self.algebra.inverted]


class FrobeniusModule(PresentedModule):
    """F*Omega^1_{A_0}: generators F*dx_i, relations = Jacobian rows with p-th powered entries."""

    def __init__(self, algebra):
        self.algebra = algebra
        base = algebra.reduction
        names = [f"F*d{v}" for v in algebra.variables]
        super().__init__(base, names)
        p = algebra.p
        rows = []
        for g in algebra.basis:
            g0 = algebra.reduce(g).poly
            rows.append(self.element([base.element(g0.derivative(i)) ** p for i in range(base.ring.nvars)]))
        self.relations = rows


@lru_cache(maxsize=MODULE_CACHE_SIZE)
def omega_tot(algebra):
    """
    Presentation of Omega^{1,tot}_A, cached per algebra instance.

    Raises:
        StructuralError: the algebra is not a W_2(F_q)-algebra
    """
    return DiffModule(algebra)


def frobenius_differentials(algebra):
    """Presentation of F*Omega^1_{A_0}."""
    return FrobeniusModule(algebra)


def _term_differential(monomial, coefficient, module):
    """Coefficient vector (as ambient dicts) of d^tot(c * x^m)."""
    algebra = module.algebra
    p = algebra.p
    n = algebra.ring.nvars
    field = algebra.field
    vectors = [{} for _ in range(n + 1)]
    delta = base_delta(coefficient, 1)
    if not delta.is_zero():
        vectors[0][tuple(p * e for e in monomial)] = delta
    c0p = coefficient.w0 ** p
    if not c0p.is_zero():
        for i, e in enumerate(monomial):
            if e % p:
                shifted = tuple(p * (f - 1) if j == i else p * f for j, f in enumerate(monomial))
                vectors[i + 1][shifted] = c0p * field(e)
    return vectors


def dtot_expand_terms(terms, module):
    """
    Expand d^tot of sum(c * x^m) for an explicit sequence of (monomial, coefficient)
    terms, folding sums left to right. Repeated monomials are allowed.
    """
    algebra = module.algebra
    base = module.base
    p = algebra.p
    field = algebra.field
    zero = field.zero()
    accumulated = [{} for _ in range(module.rank)]
    partial = None
    for monomial, coefficient in terms:
        coefficient = algebra.coefficient_ring(coefficient)
        if coefficient.is_zero():
            continue
        for index, vector in enumerate(_term_differential(monomial, coefficient, module)):
            target = accumulated[index]
            for m, c in vector.items():
                target[m] = target.get(m, zero) + c
        term0 = base.element(Polynomial(base.ring, {tuple(monomial): coefficient.w0})
                             if not coefficient.w0.is_zero() else base.ring.zero())
        if partial is None:
            partial = term0
            continue
        if not partial.is_zero() and not term0.is_zero():
            correction = cp_eval(partial, term0, p)
            for m, c in correction.poly.terms.items():
                accumulated[0][m] = accumulated[0].get(m, zero) + c
        partial = partial + term0
    coeffs = [base.element(Polynomial(base.ring, {m: c for m, c in vector.items() if not c.is_zero()}))
              for vector in accumulated]
    return DiffElem(module, coeffs)


def dtot_expand(a, module):
    """
    d^tot a as an A_0-linear combination of d^tot p, d^tot x_1, ..., d^tot x_n.

    Args:
        a: Ambient polynomial of A (or literal / AlgebraElement)
        module: The DiffModule of A

    Returns:
        DiffElem with normalized coefficients
    """
    algebra = module.algebra
    poly = a.poly if isinstance(a, AlgebraElement) else algebra.ring(a)
    return dtot_expand_terms(poly.sorted_terms(), module)


def alpha(x, module):
    """x |-> x d^tot p."""
    coeffs = [module.base.element(x)] + [module.base.zero()] * (module.rank - 1)
    return DiffElem(module, coeffs)


def beta(element, target=None):
    """Omega^{1,tot}_A -> F*Omega^1_{A_0}: drop the d^tot p coordinate."""
    target = target or frobenius_differentials(element.module.algebra)
    return DiffElem(target, element.coeffs[1:])


class ModulePullback:
    """
    The A_0-linear map Omega^{1,tot}_A (x) B_0 -> Omega^{1,tot}_B induced by f: A -> B.

    Well-definedness is certified on construction: for every relation d^tot g
    of A, its image equals sum_k qbar_k^p rel_k where f(g) = sum_k q_k h_k is
    the division of f(g) by the basis of B.
    """

    def __init__(self, hom, verify=True):
        self.hom = hom
        self.source = omega_tot(hom.source)
        self.target = omega_tot(hom.target)
        self.hom0 = hom.reduction()
        self.images = [self.target.dp()] + [dtot_expand(hom.images[v].poly, self.target)
                                           for v in hom.source.variables]
        if verify:
            self.verify()

    def apply(self, element, scalar=None):
        if element.module.generator_names != self.source.generator_names:
            raise StructuralError("Pullback applied to an element of another module")
        result = self.target.zero()
        for coefficient, image in zip(element.coeffs, self.images):
            if coefficient.is_zero():
                continue
            result = result + image * self.hom0(coefficient)
        if scalar is not None:
            result = result * self.target.base.element(scalar)
        return result

    __call__ = apply

    def matrix(self):
        """Rows are images of the source generators."""
        return [list(image.coeffs) for image in self.images]

    def verify(self):
        source_algebra = self.hom.source
        target_algebra = self.hom.target
        p = target_algebra.p
        image_polys = [self.hom.images[v].poly for v in source_algebra.variables]
        one = target_algebra.ring.one()
        for g, relation in zip(source_algebra.basis, self.source.relations):
            substituted = g.evaluate(image_polys, target_algebra.ring.constant, one)
            quotients, remainder = target_algebra.divide(substituted)
            if not remainder.is_zero():
                raise InconsistencyError(f"{self.hom.name} does not map relation {g} into the ideal")
            expected = self.target.zero()
            for q, target_relation in zip(quotients, self.target.relations):
                if q.is_zero():
                    continue
                expected = expected + target_relation * (target_algebra.reduce(q) ** p)
            if self.apply(relation) != expected:
                raise InconsistencyError(f"Pullback of d^tot({g}) along {self.hom.name} "
                                         f"is not in the relation span")
        return True


def pullback(hom, verify=True):
    """Pullback of total differentials along an AlgebraHom."""
    return ModulePullback(hom, verify=verify)
