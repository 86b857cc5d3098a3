"""Exact verification toolkit for semi-simple plane curves: logarithmic derivations,
standard forms, toric resolution graphs, zeta functions and Bernstein-Sato roots."""

from .errors import ArtifactError
from .polyparse import format_poly, parse_poly
from .smc import analyze, analyze_fixture, sweep
from .standardform import StandardFormData, classify, extract_standard_form

__all__ = [
    "ArtifactError",
    "StandardFormData",
    "analyze",
    "analyze_fixture",
    "classify",
    "extract_standard_form",
    "format_poly",
    "parse_poly",
    "sweep",
]

__version__ = "0.1.0"
