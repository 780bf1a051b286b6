"""Vanishing-Hessian hypersurface laboratory: exact polynomial tools."""

from ._core import (
    ParseError,
    Poly,
    ReportError,
    RetriesExhausted,
    analyze,
    find_polar_relation,
    gn_instance,
    hessian_vanishes,
    polar_image_dim,
    run_suite,
    vertex,
)

__all__ = [
    "ParseError",
    "Poly",
    "ReportError",
    "RetriesExhausted",
    "analyze",
    "find_polar_relation",
    "gn_instance",
    "hessian_vanishes",
    "is_cone",
    "polar_image_dim",
    "run_suite",
    "vertex",
]


def is_cone(f: Poly) -> bool:
    """True when the partials of f are linearly dependent."""
    return bool(vertex(f))
