"""Coefficient rings: finite fields, length-two Witt vectors and their carry polynomial."""
from coefficients.finite_field import FiniteField, FqElem, default_modulus
from coefficients.witt import WittRing, W2Elem, w2_add, w2_mul, frobenius_w2, base_delta, theta
from coefficients.carries import cp_coefficients, cp_eval

__all__ = [
    "FiniteField", "FqElem", "default_modulus",
    "WittRing", "W2Elem", "w2_add", "w2_mul", "frobenius_w2", "base_delta", "theta",
    "cp_coefficients", "cp_eval",
]
