"""Polynomials, Gröbner bases, finitely presented algebras and their homomorphisms."""
from algebra.polynomial import PolyRing, Polynomial
from algebra.fp_algebra import (AlgebraElement, FPAlgebra, localize, polynomial_algebra, reduce_mod_p,
                                witt_algebra)
from algebra.homomorphism import AlgebraHom, apply_hom, compose, identity_hom

__all__ = [
    "PolyRing", "Polynomial", "AlgebraElement", "FPAlgebra", "localize", "polynomial_algebra",
    "reduce_mod_p", "witt_algebra", "AlgebraHom", "apply_hom", "compose", "identity_hom",
]
