"""
Certified Waldschmidt bound facts and their derivation trees
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

from .core import format_decimal, format_rat


@dataclass(frozen=True, eq=False)
class Derivation:
    """One rule application; inputs are BoundFacts or EmptinessCertificates"""

    rule: str
    params: Dict[str, Any] = field(default_factory=dict)
    inputs: Tuple[Any, ...] = ()
    tags: Tuple[str, ...] = ()


@dataclass(frozen=True, eq=False)
class BoundFact:
    """ahat(P^N, s generic points) >= bound"""

    N: int
    s: int
    bound: Fraction
    derivation: Optional[Derivation]

    @property
    def certified(self) -> bool:
        return self.derivation is not None

    @property
    def rule(self) -> str:
        return self.derivation.rule if self.derivation else "uncertified"

    def tags(self) -> Tuple[str, ...]:
        """Citation tags of every leaf below this fact, in first-seen order"""
        seen: Dict[str, None] = {}
        for node in self.walk():
            for tag in node.tags:
                seen.setdefault(tag, None)
        return tuple(seen)

    def walk(self) -> Iterator[Derivation]:
        """Every derivation node reachable from this fact, depth first"""
        stack: List[Any] = [self]
        visited: Set[int] = set()
        while stack:
            item = stack.pop()
            derivation = getattr(item, "derivation", None)
            if derivation is None or id(derivation) in visited:
                continue
            visited.add(id(derivation))
            yield derivation
            for child in reversed(derivation.inputs):
                if isinstance(child, BoundFact):
                    stack.append(child)
                else:
                    # emptiness certificates expose the facts their leaves cite
                    stack.extend(child.leaf_facts())

    def __str__(self) -> str:
        return (
            f"ahat(P^{self.N}, {self.s}) >= {format_rat(self.bound)}"
            f" ~ {format_decimal(self.bound)}"
        )
