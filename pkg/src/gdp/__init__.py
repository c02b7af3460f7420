"""Exact Riemann-Roch and positivity computations on Gorenstein del Pezzo surfaces."""
from .catalog_report import Verdict, report
from .intersection import QDivisor, WeilClass, k_product, mumford_product, pullback
from .positivity import is_ample, search_bott_failures
from .riemann_roch import ChiBreakdown, baker_cartier_bv, chi_omega1, chi_rank1
from .surface_model import SurfaceModel, builtin_covers, builtin_fixtures, load_catalog, s_a4, validate
from .toric import Fan2D, classify_fan, singularity_multiset

__all__ = [
    "ChiBreakdown",
    "Fan2D",
    "QDivisor",
    "SurfaceModel",
    "Verdict",
    "WeilClass",
    "baker_cartier_bv",
    "builtin_covers",
    "builtin_fixtures",
    "chi_omega1",
    "chi_rank1",
    "classify_fan",
    "is_ample",
    "k_product",
    "load_catalog",
    "mumford_product",
    "pullback",
    "report",
    "s_a4",
    "search_bott_failures",
    "singularity_multiset",
    "validate",
]
