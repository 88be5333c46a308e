"""
Glued schemes and Čech classes of the total p-differential sequence.
"""
from cech.classes import (ComparisonResult, GlobalLift, chart_splittings, classes_equal_up_to_sign, cup_with,
                          deligne_illusie, gauss_manin, global_frobenius_lift, global_hom_sections,
                          is_coboundary, kodaira_spencer, lift_difference, lifts_agree)
from cech.cochains import CechClass, Sheaf, d0, d1, solve_coboundary, zero_cochain
from cech.scheme import GlueReport, GluedScheme, GluingData, Overlap, TripleData, TripleOverlap, glue_check

__all__ = [
    "CechClass", "ComparisonResult", "GlobalLift", "GlueReport", "GluedScheme", "GluingData", "Overlap",
    "Sheaf", "TripleData", "TripleOverlap", "chart_splittings", "classes_equal_up_to_sign", "cup_with", "d0",
    "d1", "deligne_illusie", "gauss_manin", "global_frobenius_lift", "global_hom_sections", "glue_check",
    "is_coboundary", "kodaira_spencer", "lift_difference", "lifts_agree", "solve_coboundary", "zero_cochain",
]
