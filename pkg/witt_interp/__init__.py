"""Interpolated rings U_c(D_0) and total p-derivations."""
from witt_interp.interpolation import UCElem, UcRing, rescale_hom, uc_add, uc_map, uc_mul, uc_scalar
from witt_interp.derivations import (InducedModuleMap, TotalDerivation, UcHomomorphism, derivation_to_hom,
                                     hom_to_derivation, induced_module_map, lift_derivation)

__all__ = [
    "UCElem", "UcRing", "rescale_hom", "uc_add", "uc_map", "uc_mul", "uc_scalar",
    "InducedModuleMap", "TotalDerivation", "UcHomomorphism", "derivation_to_hom", "hom_to_derivation",
    "induced_module_map", "lift_derivation",
]
