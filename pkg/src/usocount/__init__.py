"""Unique-sink orientations of the cube induced by linear complementarity problems."""

__version__ = "0.1.0"

from .checks import (
    ClassProfile,
    classify,
    is_acyclic,
    is_holt_klee,
    is_locally_uniform,
    is_strongly_holt_klee,
    is_uso,
    unique_sink,
    unique_source,
)
from .cube import Orientation, Subcube, flip, reverse, subcube_restriction, uniform_orientation
from .lcp import induced_orientation, is_k_matrix, is_p_matrix, is_z_matrix, solve_lcp

__all__ = [
    "ClassProfile",
    "Orientation",
    "Subcube",
    "classify",
    "flip",
    "induced_orientation",
    "is_acyclic",
    "is_holt_klee",
    "is_k_matrix",
    "is_locally_uniform",
    "is_p_matrix",
    "is_strongly_holt_klee",
    "is_uso",
    "is_z_matrix",
    "reverse",
    "solve_lcp",
    "subcube_restriction",
    "uniform_orientation",
    "unique_sink",
    "unique_source",
]
