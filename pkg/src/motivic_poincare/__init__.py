"""Exact reduced motivic Poincare series of plane curve singularities."""

from .engine import (
    a2n1_closed_form,
    assemble,
    assemble_one_arrow_each,
    oracle_subset_expansion,
    semigroup_series,
)
from .poly import LaurentPoly, RationalSeries
from .resolution import ResolutionGraph, milnor_numbers, validate

__all__ = [
    "LaurentPoly",
    "RationalSeries",
    "ResolutionGraph",
    "a2n1_closed_form",
    "assemble",
    "assemble_one_arrow_each",
    "milnor_numbers",
    "oracle_subset_expansion",
    "semigroup_series",
    "validate",
]
