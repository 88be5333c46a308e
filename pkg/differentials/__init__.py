"""Total p-differentials, their coordinates, pullbacks and splittings."""
from differentials.total import (DiffElem, DiffModule, FrobeniusModule, alpha, beta, dtot_expand,
                                 dtot_expand_terms, frobenius_differentials, omega_tot, pullback)
from differentials.coordinates import (CoordinateSystem, coordinate_system, is_isomorphism_on_overlap,
                                       transition_matrix)
from differentials.splitting import (FrobeniusLift, Splitting, find_splitting, frobenius_to_splitting,
                                     splitting_to_frobenius)

__all__ = [
    "DiffElem", "DiffModule", "FrobeniusModule", "alpha", "beta", "dtot_expand", "dtot_expand_terms",
    "frobenius_differentials", "omega_tot", "pullback", "CoordinateSystem", "coordinate_system",
    "is_isomorphism_on_overlap", "transition_matrix",
    "FrobeniusLift", "Splitting", "find_splitting", "frobenius_to_splitting", "splitting_to_frobenius",
]
