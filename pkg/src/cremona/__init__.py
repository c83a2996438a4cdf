"""
Symbolic Cremona reduction of m-parameterized linear systems
"""

from .certificate import EmptinessCertificate, NotProven
from .engine import (
    bound_from_clump,
    bound_from_empty,
    clump_system,
    cremona_step,
    empty_from_bound,
    glue,
    homogeneous_system,
    prove_empty,
)
from .system import SystemSpec, format_mults, parse_mults

__all__ = [
    "EmptinessCertificate",
    "NotProven",
    "SystemSpec",
    "bound_from_clump",
    "bound_from_empty",
    "clump_system",
    "cremona_step",
    "empty_from_bound",
    "format_mults",
    "glue",
    "homogeneous_system",
    "parse_mults",
    "prove_empty",
]
