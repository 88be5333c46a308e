"""
Polynomial literal parsing.

Grammar: integers (and rationals with denominators prime to p), variable
names, the constant `p`, + - *, and powers written `^` or `**`.
"""
import logging
from tokenize import TokenError

import sympy
from sympy.polys.polyerrors import BasePolynomialError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from algebra.polynomial import Polynomial
from utils.errors import ParseError, StructuralError

logger = logging.getLogger("TotalP.Parser")

TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _coefficient(ring, value):
    value = sympy.Rational(value)
    try:
        return ring.coefficient_ring.from_rational(int(value.p), int(value.q))
    except StructuralError as e:
        raise ParseError(f"Coefficient {value} is not p-integral: {e}")


def parse_polynomial(text, ring):
    """
    Parse a polynomial literal into the given ring.

    Args:
        text: The literal, e.g. "x^3 - y^2 - x"
        ring: Target PolyRing

    Returns:
        Polynomial in ring
    """
    if isinstance(text, int):
        return ring.constant(text)
    text = str(text).strip()
    if not text:
        raise ParseError("Empty polynomial literal", column=1, source=text)

    symbols = [sympy.Symbol(name) for name in ring.variables]
    local_dict = {name: symbol for name, symbol in zip(ring.variables, symbols)}
    local_dict["p"] = sympy.Integer(ring.p)

    try:
        expression = parse_expr(text, local_dict=local_dict, transformations=TRANSFORMATIONS, evaluate=True)
    except SyntaxError as e:
        raise ParseError(f"Cannot parse {text!r}: {e.msg}", column=e.offset, source=text)
    except (TokenError, TypeError, ValueError) as e:
        raise ParseError(f"Cannot parse {text!r}: {e}", source=text)

    if not isinstance(expression, sympy.Expr):
        raise ParseError(f"{text!r} is not a polynomial expression", source=text)
    unknown = expression.free_symbols - set(symbols)
    if unknown:
        names = sorted(str(s) for s in unknown)
        column = min((text.find(name) + 1 for name in names if name in text), default=None)
        raise ParseError(f"Undefined variable(s) {', '.join(names)} in {text!r}", column=column, source=text)

    expression = sympy.expand(expression)
    if not symbols:
        if not expression.is_Rational:
            raise ParseError(f"{text!r} is not a constant", source=text)
        return ring.constant(_coefficient(ring, expression))

    try:
        poly = sympy.Poly(expression, *symbols, domain="QQ")
    except BasePolynomialError as e:
        raise ParseError(f"{text!r} is not a polynomial: {e}", source=text)

    terms = {}
    for monomial, value in poly.terms():
        coefficient = _coefficient(ring, value)
        if not coefficient.is_zero():
            terms[tuple(int(e) for e in monomial)] = coefficient
    return Polynomial(ring, terms)
