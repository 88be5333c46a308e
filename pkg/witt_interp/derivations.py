"""
Total p-derivations A -> D_0 and their correspondence with R-algebra maps
A -> U_c(D_0), a |-> (f(a_0), delta(a)).
"""
import logging

from algebra.homomorphism import AlgebraHom, identity_hom
from algebra.polynomial import Polynomial
from differentials.total import dtot_expand, omega_tot
from utils.errors import InvalidDerivationError, StructuralError, UnsupportedMapError
from witt_interp.interpolation import UCElem, UcRing, uc_scalar

logger = logging.getLogger("TotalP.Derivations")


def _default_structure(source, target):
    if target.same_as(source.reduction):
        return identity_hom(source.reduction)
    raise StructuralError(f"A structure map {source.reduction.name} -> {target.name} is required")


class TotalDerivation:
    """
    A total p-derivation delta: A -> D_0 with delta(p) = c.

    Args:
        source: W_2(F_q)-algebra A
        target: F_q-algebra D_0
        c: delta(p), an element of D_0
        gen_values: variable -> delta(x) in D_0 (missing variables get 0)
        structure: A_0 -> D_0; defaults to the identity when D_0 is A_0

    Raises:
        InvalidDerivationError: the values violate a relation of A
    """

    def __init__(self, source, target, c, gen_values=None, structure=None):
        if not source.is_witt or target.is_witt:
            raise StructuralError("A total p-derivation goes from a W_2-algebra to an F_q-algebra")
        self.source = source
        self.target = target
        self.structure = structure if structure is not None else _default_structure(source, target)
        if not self.structure.source.same_as(source.reduction) or not self.structure.target.same_as(target):
            raise StructuralError(f"Structure map {self.structure.name} does not go {source.reduction.name} "
                                  f"-> {target.name}")
        self.c = target.element(c)
        gen_values = gen_values or {}
        unknown = [v for v in gen_values if v not in source.variables]
        if unknown:
            raise StructuralError(f"Undefined variable(s) {', '.join(unknown)} in {source.name}")
        self.gen_values = {v: target.element(gen_values.get(v, 0)) for v in source.variables}
        self.module = omega_tot(source)
        self._values = [self.c] + [self.gen_values[v] for v in source.variables]
        self.validate()

    def validate(self):
        for relation in self.module.relations:
            value = self.on_module(relation)
            if not value.is_zero():
                raise InvalidDerivationError(f"Generator values violate relation {relation}: value {value}")
        return True

    @property
    def kind(self):
        if self.c.is_zero():
            return "frobenius-semilinear"
        if self.c == self.target.one():
            return "p-derivation"
        return "total"

    def on_module(self, element):
        """The induced A_0-linear map Omega^{1,tot}_A -> D_0 applied to element."""
        total = self.target.zero()
        for coefficient, value in zip(element.coeffs, self._values):
            if coefficient.is_zero() or value.is_zero():
                continue
            total = total + self.structure(coefficient) * value
        return total

    def __call__(self, a):
        """delta(a) for an ambient polynomial, literal or element of A."""
        return self.on_module(dtot_expand(a, self.module))

    def __repr__(self):
        values = ", ".join(f"d{v} = {x}" for v, x in self.gen_values.items())
        return f"TotalDerivation({self.source.name} -> {self.target.name}; dp = {self.c}; {values})"


class InducedModuleMap:
    """The unique A_0-linear g: Omega^{1,tot}_A -> D_0 with delta = g o d^tot."""

    def __init__(self, derivation):
        self.derivation = derivation
        self.values = tuple(derivation._values)

    def __call__(self, element):
        return self.derivation.on_module(element)


def induced_module_map(derivation):
    return InducedModuleMap(derivation)


class UcHomomorphism:
    """
    An R-algebra map A -> U_c(D_0) given by images of the variables.

    Raises:
        InvalidDerivationError: some relation of A does not map to (0, 0)
    """

    def __init__(self, source, target, c, images, verify=True):
        self.source = source
        self.target = target
        self.uc = UcRing(target, c)
        self.c = self.uc.c
        missing = [v for v in source.variables if v not in images]
        if missing:
            raise StructuralError(f"No image for variable(s) {', '.join(missing)}")
        self.images = {}
        for v in source.variables:
            image = images[v]
            if not isinstance(image, UCElem):
                image = self.uc.element(*image)
            self.images[v] = image
        if verify:
            for g in source.basis:
                value = self(g)
                if not value.is_zero():
                    raise InvalidDerivationError(f"Relation {g} maps to {value} in {self.uc!r}")

    def __call__(self, a):
        poly = a.poly if hasattr(a, "poly") else self.source.ring(a)
        values = [self.images[v] for v in self.source.variables]
        return poly.evaluate(values, lambda r: uc_scalar(r, self.target, self.c), self.uc.one())

    def __repr__(self):
        return "UcHomomorphism(" + ", ".join(f"{v} |-> {e}" for v, e in self.images.items()) + ")"


def derivation_to_hom(derivation):
    """delta |-> (a |-> (f(a_0), delta(a)))."""
    source = derivation.source
    images = {}
    for v in source.variables:
        x0 = derivation.structure(source.reduction.var(v))
        images[v] = UCElem(x0, derivation.gen_values[v], derivation.c)
    return UcHomomorphism(source, derivation.target, derivation.c, images)


def hom_to_derivation(hom):
    """Inverse of derivation_to_hom."""
    source = hom.source
    structure = AlgebraHom(source.reduction, hom.target, {v: hom.images[v].x0 for v in source.variables},
                           name=f"f_{source.name}")
    return TotalDerivation(source, hom.target, hom.c, {v: hom.images[v].x1 for v in source.variables},
                           structure=structure)


def _inverted_in_parent(localized):
    parent = localized.origin.parent
    s = localized.origin.inverted
    return Polynomial(parent.ring, {m[:parent.ring.nvars]: c for m, c in s.terms.items()})


def lift_derivation(derivation, hom, structure=None, new_values=None):
    """
    Lift delta_A along A -> B for a polynomial extension or a localization.

    Args:
        derivation: TotalDerivation on A
        hom: The canonical map A -> B
        structure: B_0 -> D_0; defaults to the identity when D_0 is B_0, or to
            zero on new variables for polynomial extensions
        new_values: delta of new polynomial variables (default 0)

    Raises:
        UnsupportedMapError: hom is not a canonical extension or localization map
    """
    source = derivation.source
    target_algebra = hom.target
    origin = target_algebra.origin
    if (origin is None or not origin.parent.same_as(source) or not hom.source.same_as(source)
            or not hom.is_identity_on_variables()):
        raise UnsupportedMapError(f"{hom.name} is neither a polynomial extension nor a localization map")
    D0 = derivation.target
    B0 = target_algebra.reduction

    if structure is None:
        if D0.same_as(B0):
            structure = identity_hom(B0)
        elif origin.kind == "extension":
            images = {v: derivation.structure.images[v] for v in source.variables}
            images.update({v: D0.zero() for v in origin.new_variables})
            structure = AlgebraHom(B0, D0, images, name=f"f_{target_algebra.name}")
        else:
            raise StructuralError(f"A structure map {B0.name} -> {D0.name} is required for localizations")
    for v in source.variables:
        if structure.images[v] != derivation.structure.images[v]:
            raise StructuralError(f"Structure maps disagree on {v}")

    values = dict(derivation.gen_values)
    if origin.kind == "extension":
        new_values = new_values or {}
        for v in origin.new_variables:
            values[v] = D0.element(new_values.get(v, 0))
    elif origin.kind == "localization":
        t = origin.new_variables[0]
        delta_s = derivation(_inverted_in_parent(target_algebra))
        t_image = structure.images[t]
        values[t] = -(t_image ** (2 * source.p)) * delta_s
    else:
        raise UnsupportedMapError(f"Unsupported map shape {origin.kind!r}")
    lifted = TotalDerivation(target_algebra, D0, derivation.c, values, structure=structure)
    logger.debug(f"Lifted derivation to {target_algebra.name}")
    return lifted
