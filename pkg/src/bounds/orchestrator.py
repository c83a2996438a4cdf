"""
Bound orchestrator - best certified lower bound for ahat(P^N, s)
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..config import config
from ..cremona.certificate import EmptinessCertificate, GlueStep
from ..exceptions import PreconditionError
from ..facts import BoundFact
from .axioms import kb_axioms
from .combinators import (
    chudnovsky_bound,
    decompose,
    decomposition_value,
    double_points_split,
    monotone_lift,
    weaken,
)
from .scripts import known_scripts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Strategy:
    """``paper`` replays the known scripts; ``search`` also explores splits"""

    name: str = "paper"
    depth: int = 0

    @classmethod
    def paper(cls) -> "Strategy":
        return cls("paper", 0)

    @classmethod
    def search(cls, depth: Optional[int] = None) -> "Strategy":
        return cls("search", config.SEARCH_DEPTH if depth is None else depth)

    @classmethod
    def parse(cls, text: str, depth: Optional[int] = None) -> "Strategy":
        name = text.strip().lower()
        if name == "paper":
            return cls.paper()
        if name == "search":
            return cls.search(depth)
        raise PreconditionError(f"Unknown strategy '{text}' (expected paper|search)")

    @property
    def is_search(self) -> bool:
        return self.name == "search" and self.depth > 0

    def narrower(self) -> "Strategy":
        if self.depth <= 1:
            return Strategy.paper()
        return Strategy("search", self.depth - 1)

    def __str__(self) -> str:
        return self.name if self.name == "paper" else f"search({self.depth})"


PAPER = Strategy.paper()

_memo: Dict[Tuple[int, int, Strategy], BoundFact] = {}
_script_facts: Dict[int, List[BoundFact]] = {}
_lock = threading.RLock()


def clear_cache() -> None:
    with _lock:
        _memo.clear()
        _script_facts.clear()


def _built_scripts(N: int) -> List[BoundFact]:
    """Every script fact for P^N, built once"""
    with _lock:
        cached = _script_facts.get(N)
    if cached is not None:
        return cached

    facts: List[BoundFact] = []
    for point in known_scripts(N):
        fact = point.build(lambda n, r: derive_bound(n, r, PAPER))
        if fact is None:
            continue
        if fact.s != point.s:
            raise PreconditionError(
                f"Script '{point.name}' built a fact at s={fact.s}, expected {point.s}"
            )
        facts.append(fact)
        logger.debug(f"Script P^{N} '{point.name}': {fact}")

    with _lock:
        return _script_facts.setdefault(N, facts)


def _scripted_candidates(N: int, s: int) -> List[BoundFact]:
    candidates = list(kb_axioms(N, s))
    chudnovsky = chudnovsky_bound(N, s)
    if chudnovsky is not None:
        candidates.append(chudnovsky)
    candidates.extend(fact for fact in _built_scripts(N) if fact.s <= s)
    return candidates


def _best_split_decomposition(
    N: int, s: int, strategy: Strategy
) -> Optional[BoundFact]:
    """Best k=1 decomposition s = r1 + r2 over P^{N-1}, inputs capped at 2"""
    if N < 3 or s < 2 or s > config.SEARCH_SPLIT_CAP:
        return None

    two = Fraction(2)
    best: Optional[Tuple[Fraction, int]] = None
    for r1 in range(1, s):
        a1 = min(derive_bound(N - 1, r1, strategy).bound, two)
        a2 = min(derive_bound(N - 1, s - r1, strategy).bound, two)
        if a1 <= 1:
            continue
        value = decomposition_value(1, [a1, a2])
        if best is None or value > best[0]:
            best = (value, r1)
    if best is None:
        return None

    r1 = best[1]
    first = derive_bound(N - 1, r1, strategy)
    second = derive_bound(N - 1, s - r1, strategy)
    return decompose(
        N,
        1,
        [weaken(first, min(first.bound, two)), weaken(second, min(second.bound, two))],
    )


def _search_candidates(N: int, s: int, strategy: Strategy) -> List[BoundFact]:
    inner = strategy.narrower()
    candidates: List[BoundFact] = []

    q = s // 2**N
    if q >= 1:
        candidates.append(double_points_split(derive_bound(N, q, inner)))

    decomposition = _best_split_decomposition(N, s, inner)
    if decomposition is not None:
        candidates.append(decomposition)
    return candidates


def _compute(N: int, s: int, strategy: Strategy) -> BoundFact:
    candidates = _scripted_candidates(N, s)
    if strategy.is_search:
        candidates.extend(_search_candidates(N, s, strategy))

    best: Optional[BoundFact] = None
    for candidate in candidates:
        # strictly greater: ties keep the earlier candidate
        if best is None or candidate.bound > best.bound:
            best = candidate
    if best is None:
        raise PreconditionError(f"No candidate bound for P^{N} with {s} points")
    return monotone_lift(best, s)


def derive_bound(N: int, s: int, strategy: Strategy = PAPER) -> BoundFact:
    """Best certified lower bound for ahat(P^N, s) under ``strategy``"""
    if N < 2 or s < 1:
        raise PreconditionError(f"derive_bound needs N >= 2 and s >= 1 (got {N}, {s})")

    key = (N, s, strategy)
    with _lock:
        cached = _memo.get(key)
    if cached is not None:
        return cached

    fact = _compute(N, s, strategy)
    with _lock:
        return _memo.setdefault(key, fact)


def _unwrap(fact: BoundFact) -> BoundFact:
    while fact.rule in ("monotone", "weaken"):
        assert fact.derivation is not None
        fact = fact.derivation.inputs[0]
    return fact


def _count_gluings(certificate: EmptinessCertificate) -> int:
    count = 0
    for step in certificate.steps:
        if isinstance(step, GlueStep):
            count += 1 + _count_gluings(step.left) + _count_gluings(step.right)
    return count


_AXIOM_ROUTES = {
    "exact-grid": "exact value k^N",
    "coordinate-simplex": "coordinate simplex",
    "n-plus-two": "N+2 / N+3 points",
    "n-plus-three": "N+2 / N+3 points",
    "p3-table": "imported P^3 value",
    "p4-table": "imported P^4 value",
}


def describe_route(fact: BoundFact) -> str:
    """Short label for how ``fact`` was obtained"""
    core = _unwrap(fact)
    derivation = core.derivation
    if derivation is None:
        return "uncertified"

    rule, params = derivation.rule, derivation.params
    if rule == "axiom":
        return _AXIOM_ROUTES.get(params["name"], f"axiom {params['name']}")
    if rule == "split":
        return f"double-point split of {derivation.inputs[0].s}"
    if rule == "clump-bound":
        return f"clump 2^x{params['a']},1^x{params['b']}"
    if rule == "decompose":
        return f"decomposition k={params['k']}"
    if rule == "chudnovsky":
        return f"Chudnovsky-type c={params['c']}"
    if rule == "bound-from-empty":
        gluings = _count_gluings(derivation.inputs[0])
        if gluings:
            return f"reduction + {gluings} gluing{'s' if gluings > 1 else ''}"
        return "reduction"
    return rule
