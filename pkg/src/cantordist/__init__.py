"""Exact moments, order statistics, bitsums and longest runs of Cantor-type distributions."""

__version__ = "0.1.0"

from .ensembles import BitString, DistributionParams, EnsembleKind, count, parse_theta
from .exactnum import PHI, PSI, CubicElement, QuadElement, approximate, format_exact, parse_exact
from .genfunc import Poly, RationalGF, gf_coefficients

__all__ = [
    "BitString", "CubicElement", "DistributionParams", "EnsembleKind", "PHI", "PSI",
    "Poly", "QuadElement", "RationalGF", "approximate", "count", "format_exact",
    "gf_coefficients", "parse_exact", "parse_theta",
]
