"""
Division and Buchberger completion over F_q and W_2(F_q).

Over W_2 every basis element is kept monic. A remainder whose coefficients
all vanish mod p is a candidate p-torsion witness; it is re-examined after
completion and, if it survives, the presentation is not flat.
"""
import logging
from dataclasses import dataclass, field

from algebra.polynomial import (Polynomial, monomial_divides, monomial_lcm, monomial_mul,
                                monomial_quotient)
from utils.errors import NotFlatError, PresentationError

logger = logging.getLogger("TotalP.Groebner")


@dataclass
class GroebnerResult:
    basis: list
    pairs_examined: int = 0
    torsion_candidates: list = field(default_factory=list)


def divide(poly, basis):
    """
    Multivariate division by a list of polynomials with unit leading coefficients.

    Args:
        poly: Dividend
        basis: Divisors

    Returns:
        (quotients, remainder) with poly == sum q_i * g_i + remainder exactly
    """
    ring = poly.ring
    key = ring.key
    zero = ring.coefficient_ring.zero()
    leads = [(g.leading_monomial(), g.leading_coefficient().inverse(), g) for g in basis]
    work = dict(poly.terms)
    remainder = {}
    quotients = [{} for _ in basis]
    while work:
        lm = max(work, key=key)
        lc = work[lm]
        for index, (g_lm, g_inverse, g) in enumerate(leads):
            if monomial_divides(g_lm, lm):
                shift = monomial_quotient(lm, g_lm)
                factor = lc * g_inverse
                for monomial, coefficient in g.terms.items():
                    target = monomial_mul(monomial, shift)
                    value = work.get(target, zero) - factor * coefficient
                    if value.is_zero():
                        work.pop(target, None)
                    else:
                        work[target] = value
                quotients[index][shift] = quotients[index].get(shift, zero) + factor
                break
        else:
            remainder[lm] = work.pop(lm)
    quotient_polys = [Polynomial(ring, {m: c for m, c in q.items() if not c.is_zero()}) for q in quotients]
    return quotient_polys, Polynomial(ring, remainder)


def remainder(poly, basis):
    return divide(poly, basis)[1]


def make_monic(poly):
    return poly * poly.leading_coefficient().inverse()


def s_polynomial(f, g):
    """S-polynomial of two monic polynomials."""
    f_lm = f.leading_monomial()
    g_lm = g.leading_monomial()
    lcm = monomial_lcm(f_lm, g_lm)
    ring = f.ring
    return (ring.monomial(monomial_quotient(lcm, f_lm)) * f
            - ring.monomial(monomial_quotient(lcm, g_lm)) * g)


def _is_p_divisible(poly):
    return all(not poly.ring.coefficient_ring.is_unit(c) for c in poly.terms.values())


def _classify(poly, basis, torsion):
    """Add a nonzero remainder to the basis, or record it as torsion candidate."""
    ring = poly.ring
    if not ring.is_witt or ring.coefficient_ring.is_unit(poly.leading_coefficient()):
        return make_monic(poly)
    if _is_p_divisible(poly):
        torsion.append(poly)
        return None
    raise PresentationError(
        f"Remainder {poly} has non-unit leading coefficient but nonzero reduction; "
        f"the presentation is not flat-adapted for the {ring.order} order"
    )


def buchberger(generators, ring):
    """
    Complete generators to a Gröbner basis (monic, reduced).

    Raises:
        PresentationError: a remainder has non-unit leading coefficient and
            nonzero reduction mod p
        NotFlatError: a p-divisible element of the ideal is not reducible to
            zero, so p-torsion exists in the quotient
    """
    basis = []
    torsion = []
    pairs = []
    examined = 0

    def add(poly):
        new = _classify(poly, basis, torsion)
        if new is None:
            return
        for index in range(len(basis)):
            pairs.append((index, len(basis)))
        basis.append(new)

    for generator in generators:
        generator = ring(generator)
        if generator.is_zero():
            continue
        reduced = remainder(generator, basis) if basis else generator
        if not reduced.is_zero():
            add(reduced)

    while pairs:
        i, j = pairs.pop(0)
        examined += 1
        f, g = basis[i], basis[j]
        f_lm, g_lm = f.leading_monomial(), g.leading_monomial()
        # coprime leading monomials reduce to zero
        if all(a == 0 or b == 0 for a, b in zip(f_lm, g_lm)):
            continue
        reduced = remainder(s_polynomial(f, g), basis)
        if not reduced.is_zero():
            add(reduced)

    for candidate in torsion:
        residue = remainder(candidate, basis)
        if not residue.is_zero():
            raise NotFlatError(f"p-torsion detected: p-divisible element {residue} of the ideal "
                               f"is not p times an ideal element", witness=residue)

    reduced_basis = reduce_basis(basis)
    logger.debug(f"Gröbner basis of {len(reduced_basis)} elements after {examined} pairs")
    return GroebnerResult(basis=reduced_basis, pairs_examined=examined, torsion_candidates=torsion)


def reduce_basis(basis):
    """Minimal, tail-reduced basis sorted by leading monomial."""
    if not basis:
        return []
    key = basis[0].ring.key
    minimal = []
    for index, g in enumerate(basis):
        g_lm = g.leading_monomial()
        redundant = False
        for other_index, h in enumerate(basis):
            if other_index == index:
                continue
            h_lm = h.leading_monomial()
            if monomial_divides(h_lm, g_lm) and (h_lm != g_lm or other_index < index):
                redundant = True
                break
        if not redundant:
            minimal.append(g)

    reduced = []
    for index, g in enumerate(minimal):
        others = [h for other_index, h in enumerate(minimal) if other_index != index]
        lm = g.leading_monomial()
        head = g.ring.monomial(lm, g.terms[lm])
        tail = g - head
        reduced.append(make_monic(head + remainder(tail, others)))
    return sorted(reduced, key=lambda g: key(g.leading_monomial()))
