"""
The carry polynomial C_p(x, y) = (x^p + y^p - (x + y)^p) / p.
"""
from functools import lru_cache

import sympy

from utils.errors import StructuralError


@lru_cache(maxsize=None)
def cp_coefficients(p):
    """Integer coefficients binom(p, j) / p for j = 1..p-1."""
    if not isinstance(p, int) or not sympy.isprime(p):
        raise StructuralError(f"{p!r} is not a prime")
    return tuple(int(sympy.binomial(p, j)) // p for j in range(1, p))


def cp_eval(x, y, p):
    """
    Evaluate C_p(x, y) = -sum_{j=1}^{p-1} (binom(p, j)/p) x^(p-j) y^j.

    Works for any operands supporting +, *, ** and multiplication by int:
    integers, field elements, algebra elements, polynomials.
    """
    total = None
    for j, coefficient in enumerate(cp_coefficients(p), start=1):
        term = coefficient * (x ** (p - j)) * (y ** j)
        total = term if total is None else total + term
    return -total
