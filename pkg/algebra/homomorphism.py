"""
R-algebra homomorphisms between finitely presented algebras, given by the
images of the source variables.
"""
import logging

from algebra.fp_algebra import AlgebraElement, FPAlgebra, reduce_polynomial
from algebra.polynomial import Polynomial
from utils.errors import StructuralError

logger = logging.getLogger("TotalP.Homomorphism")


class AlgebraHom:
    """
    A homomorphism source -> target with x_i |-> images[x_i].

    Args:
        source: Source FPAlgebra
        target: Target FPAlgebra over the same coefficient ring
        images: Mapping variable name -> image (string, polynomial or element)
        verify: Check that every relation of the source maps to zero
    """

    def __init__(self, source, target, images, verify=True, name=None):
        if not isinstance(source, FPAlgebra) or not isinstance(target, FPAlgebra):
            raise StructuralError("AlgebraHom expects FPAlgebra source and target")
        if source.coefficient_ring != target.coefficient_ring:
            raise StructuralError(f"Coefficient rings differ: {source.coefficient_ring!r} "
                                  f"and {target.coefficient_ring!r}")
        missing = [v for v in source.variables if v not in images]
        if missing:
            raise StructuralError(f"No image given for variable(s) {', '.join(missing)}")
        unknown = [v for v in images if v not in source.variables]
        if unknown:
            raise StructuralError(f"Undefined variable(s) {', '.join(unknown)} in {source.name}")
        self.source = source
        self.target = target
        self.name = name or f"{source.name}->{target.name}"
        self.images = {v: target.element(_as_poly(images[v], target)) for v in source.variables}
        if verify:
            self.verify()

    def verify(self):
        """Raise StructuralError unless every source relation maps to zero."""
        failures = self.relation_failures()
        if failures:
            raise StructuralError(f"{self.name} is not a homomorphism: "
                                  + "; ".join(f"{g} |-> {image}" for g, image in failures))
        return True

    def relation_failures(self):
        failures = []
        for g in self.source.basis:
            image = self.substitute(g)
            if not image.is_zero():
                failures.append((g, image))
        return failures

    def substitute(self, poly):
        """Image of an ambient polynomial of the source, as a target element."""
        poly = self.source.ring(poly)
        values = [self.images[v] for v in self.source.variables]
        return poly.evaluate(values, self.target.element, self.target.one())

    def __call__(self, value):
        return apply_hom(self, value)

    def __repr__(self):
        mapping = ", ".join(f"{v} |-> {self.images[v]}" for v in self.source.variables)
        return f"AlgebraHom({self.name}: {mapping})"

    def reduction(self):
        """The induced map A_0 -> B_0."""
        source0 = self.source.reduction
        target0 = self.target.reduction
        images = {v: reduce_polynomial(self.images[v].poly, target0.ring) for v in self.source.variables}
        return AlgebraHom(source0, target0, images, verify=False, name=f"{self.name}_0")

    def is_identity_on_variables(self):
        return all(self.images[v] == self.target.var(v) if v in self.target.variables else False
                   for v in self.source.variables)


def _as_poly(value, algebra):
    if isinstance(value, AlgebraElement):
        return value.poly
    if isinstance(value, Polynomial):
        return algebra.ring(value)
    return algebra.ring(value)


def apply_hom(hom, value):
    """
    Apply a homomorphism to an element, polynomial or literal of the source.

    Raises:
        StructuralError: the value refers to variables outside the source
    """
    if isinstance(value, AlgebraElement):
        if not value.algebra.same_as(hom.source):
            raise StructuralError(f"{value} is not an element of {hom.source.name}")
        value = value.poly
    return hom.substitute(value)


def compose(g, f):
    """g o f for f: A -> B and g: B -> C."""
    if not f.target.same_as(g.source):
        raise StructuralError(f"Cannot compose {g.name} after {f.name}: {f.target.name} != {g.source.name}")
    images = {v: g(f.images[v]) for v in f.source.variables}
    return AlgebraHom(f.source, g.target, images, verify=False, name=f"{g.name}o{f.name}")


def identity_hom(algebra):
    return AlgebraHom(algebra, algebra, {v: algebra.var(v) for v in algebra.variables}, verify=False,
                      name=f"id_{algebra.name}")
