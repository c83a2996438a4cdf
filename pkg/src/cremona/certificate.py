"""
Emptiness certificates and the steps they are made of
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

from ..core import LinExpr
from ..exceptions import PreconditionError
from ..facts import BoundFact
from .system import SystemSpec


@dataclass(frozen=True)
class CremonaStep:
    """Cremona reduction at the given expanded indices; m0 covers their positivity"""

    selection: Tuple[int, ...]
    k: LinExpr
    m0: int = 1


@dataclass(frozen=True)
class ClampStep:
    """Points whose multiplicity is <= 0 from m0 on, dropped after a reduction"""

    dropped: Tuple[int, ...]
    m0: int = 1


@dataclass(frozen=True)
class ContradictionStep:
    """A multiplicity exceeding the degree, or witness None for a negative degree"""

    witness: Optional[int]
    m0: int = 1

    @property
    def negative_degree(self) -> bool:
        return self.witness is None


@dataclass(frozen=True, eq=False)
class GlueStep:
    left: "EmptinessCertificate"
    right: "EmptinessCertificate"
    joint: int


@dataclass(frozen=True, eq=False)
class AxiomLeaf:
    """I((q m)^{x s})_{p m - 1} = 0 read off a certified bound p/q"""

    fact: BoundFact
    p: int
    q: int


Step = Union[CremonaStep, ClampStep, ContradictionStep, GlueStep, AxiomLeaf]


@dataclass(frozen=True, eq=False)
class EmptinessCertificate:
    """Proof that ``claim`` has no nonzero forms for every m >= m0"""

    claim: SystemSpec
    steps: Tuple[Step, ...]
    m0: int = 1

    @property
    def kind(self) -> str:
        first = self.steps[0]
        if isinstance(first, GlueStep):
            return "glue"
        if isinstance(first, AxiomLeaf):
            return "axiom"
        return "reduction"

    def cremona_steps(self) -> List[CremonaStep]:
        return [step for step in self.steps if isinstance(step, CremonaStep)]

    def leaf_facts(self) -> Iterator[BoundFact]:
        for step in self.steps:
            if isinstance(step, AxiomLeaf):
                yield step.fact
            elif isinstance(step, GlueStep):
                yield from step.left.leaf_facts()
                yield from step.right.leaf_facts()

    def __str__(self) -> str:
        return f"{self.claim} = 0 for m >= {self.m0} [{self.kind}]"


NOT_PROVEN_REASONS = ("max-steps", "too-few-points", "no-progress")


@dataclass(frozen=True)
class NotProven:
    """Outcome of a reduction that found no contradiction; carries no information"""

    claim: SystemSpec
    steps_tried: int
    reason: str

    def __post_init__(self) -> None:
        if self.reason not in NOT_PROVEN_REASONS:
            raise PreconditionError(f"Unknown reason '{self.reason}' for NotProven")
