"""
Top level API (:mod:`acm_atlas`)
================================
"""

from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _version

from .chern import BundleClass, dual, is_stable, normalize, twist
from .classify import CandidateRow, IntRange, c1_bounds, classify, solve_c2
from .rr import audit_formulas, chi_line, chi_rank2
from .serre import CurveClass, bundle_to_curve, curve_to_bundle
from .variety import PolarizedThreefold, make_cicy, make_custom, make_prime_fano

try:  # ruff:ignore[non-empty-init-module]
    __version__ = _version("acm-atlas")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "999"


__all__ = [
    "BundleClass",
    "CandidateRow",
    "CurveClass",
    "IntRange",
    "PolarizedThreefold",
    "__version__",
    "audit_formulas",
    "bundle_to_curve",
    "c1_bounds",
    "chi_line",
    "chi_rank2",
    "classify",
    "curve_to_bundle",
    "dual",
    "is_stable",
    "make_cicy",
    "make_custom",
    "make_prime_fano",
    "normalize",
    "solve_c2",
    "twist",
]
