"""
Certified lower bounds for Waldschmidt constants of generic points
"""

from .axioms import AXIOMS, AXIOMS_BY_NAME, kb_axioms
from .combinators import (
    chudnovsky_bound,
    clump,
    clump_bound,
    decompose,
    double_points_split,
    monotone_lift,
    weaken,
)
from .orchestrator import PAPER, Strategy, clear_cache, derive_bound, describe_route

__all__ = [
    "AXIOMS",
    "AXIOMS_BY_NAME",
    "PAPER",
    "Strategy",
    "chudnovsky_bound",
    "clear_cache",
    "clump",
    "clump_bound",
    "decompose",
    "derive_bound",
    "describe_route",
    "double_points_split",
    "kb_axioms",
    "monotone_lift",
    "weaken",
]
