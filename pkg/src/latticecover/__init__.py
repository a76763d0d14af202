"""Minimum vertex subsets of square lattices whose spanned lines cover every vertex."""

from .geometry import (
    CoverageMask,
    LineKey,
    Point,
    Solution,
    coverage,
    is_cover,
    normalize_line,
    points_on_line,
    spanned_lines,
)
from .symmetry import CongruenceClass, SymmetryOp, apply_symmetry, canonical_form, classify, orbit_size

__version__ = "0.1.0"

__all__ = [
    "CongruenceClass",
    "CoverageMask",
    "LineKey",
    "Point",
    "Solution",
    "SymmetryOp",
    "apply_symmetry",
    "canonical_form",
    "classify",
    "coverage",
    "is_cover",
    "normalize_line",
    "orbit_size",
    "points_on_line",
    "spanned_lines",
]
