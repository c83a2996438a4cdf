"""
Rules that turn certified bounds into new certified bounds
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .. import citations
from ..core import binomial, format_rat
from ..cremona import bound_from_clump, clump_system, prove_empty
from ..cremona.certificate import EmptinessCertificate
from ..exceptions import PreconditionError
from ..facts import BoundFact, Derivation

logger = logging.getLogger(__name__)


def monotone_lift(fact: BoundFact, target: int) -> BoundFact:
    """More points never lower the Waldschmidt constant"""
    if target < fact.s:
        raise PreconditionError(
            f"Cannot lift a bound at s={fact.s} down to s={target}"
        )
    if target == fact.s:
        return fact
    derivation = Derivation("monotone", {"s": target}, (fact,))
    return BoundFact(fact.N, target, fact.bound, derivation)


def weaken(fact: BoundFact, bound: Fraction) -> BoundFact:
    """The same fact with a smaller (or equal) bound"""
    if bound > fact.bound:
        raise PreconditionError(
            f"Cannot weaken {format_rat(fact.bound)} up to {format_rat(bound)}"
        )
    if bound <= 0:
        raise PreconditionError(f"Bounds must stay positive, got {format_rat(bound)}")
    if bound == fact.bound:
        return fact
    derivation = Derivation("weaken", {"bound": format_rat(bound)}, (fact,))
    return BoundFact(fact.N, fact.s, bound, derivation)


def double_points_split(fact: BoundFact) -> BoundFact:
    """ahat(P^N, 2^N q) >= 2 ahat(P^N, q)"""
    derivation = Derivation("split", {}, (fact,), (citations.DOUBLE_POINT_SPLIT,))
    return BoundFact(fact.N, 2**fact.N * fact.s, 2 * fact.bound, derivation)


@dataclass(frozen=True)
class ClumpObligation:
    """Bounding s = 2^N a + b simple points reduces to the mixed system (2^a, 1^b)"""

    N: int
    a: int
    b: int

    @property
    def s(self) -> int:
        return 2**self.N * self.a + self.b

    def discharge(
        self, p: int, q: int, max_steps: Optional[int] = None
    ) -> Optional[BoundFact]:
        """Prove I((2q m)^a, (q m)^b)_{p m - 1} = 0 and read off p/q"""
        result = prove_empty(clump_system(self.N, self.a, self.b, p, q), max_steps)
        if not isinstance(result, EmptinessCertificate):
            logger.debug(f"Clump {self} at {p}/{q} not proven: {result.reason}")
            return None
        return bound_from_clump(result, q)


def clump(N: int, a: int, b: int) -> ClumpObligation:
    if a < 0 or b < 0 or a + b == 0:
        raise PreconditionError(f"Clump needs a, b >= 0 and a point (got {a}, {b})")
    return ClumpObligation(N, a, b)


def clump_bound(
    N: int, a: int, b: int, p: int, q: int, max_steps: Optional[int] = None
) -> Optional[BoundFact]:
    return clump(N, a, b).discharge(p, q, max_steps)


def chudnovsky_c(N: int, s: int) -> Optional[int]:
    """Largest c >= 2 with C(N+c, N) <= s"""
    if binomial(N + 2, N) > s:
        return None
    c = 2
    while binomial(N + c + 1, N) <= s:
        c += 1
    return c


def chudnovsky_bound(N: int, s: int) -> Optional[BoundFact]:
    """ahat >= (N+c+1)/N once s >= C(N+c, N) for some c >= 2 (N >= 3)"""
    if N < 3:
        return None
    c = chudnovsky_c(N, s)
    if c is None:
        return None
    derivation = Derivation(
        "chudnovsky",
        {"N": N, "s": s, "c": c},
        (),
        (citations.CHUDNOVSKY_TYPE,),
    )
    return BoundFact(N, s, Fraction(N + c + 1, N), derivation)


def decomposition_value(k: int, bounds: Sequence[Fraction]) -> Fraction:
    """(1 - sum_{j<=k} 1/a_j) a_{k+1} + k, after checking the preconditions"""
    if k < 1:
        raise PreconditionError(f"precondition k >= 1 failed (k={k})")
    if len(bounds) != k + 1:
        raise PreconditionError(
            f"precondition: decomposition with k={k} needs {k + 1} inputs, "
            f"got {len(bounds)}"
        )
    for j, a in enumerate(bounds[:k], 1):
        if not k <= a <= k + 1:
            raise PreconditionError(
                f"precondition k <= a_{j} <= k+1 failed (a_{j}={format_rat(a)})"
            )
    if not bounds[0] > k:
        raise PreconditionError(
            f"precondition a_1 > k failed (a_1={format_rat(bounds[0])})"
        )
    last = bounds[k]
    if not 0 < last <= k + 1:
        raise PreconditionError(
            f"precondition a_{k + 1} <= k+1 failed (a_{k + 1}={format_rat(last)})"
        )

    return (1 - sum(1 / a for a in bounds[:k])) * last + k


def decompose(N: int, k: int, facts: Sequence[BoundFact]) -> BoundFact:
    """Waldschmidt decomposition: k+1 hyperplane groups of P^{N-1} facts"""
    for fact in facts:
        if fact.N != N - 1:
            raise PreconditionError(
                f"decompose in P^{N} needs facts in P^{N - 1}, got P^{fact.N}"
            )
    bound = decomposition_value(k, [fact.bound for fact in facts])
    derivation = Derivation(
        "decompose",
        {"N": N, "k": k},
        tuple(facts),
        (citations.WALDSCHMIDT_DECOMPOSITION,),
    )
    return BoundFact(N, sum(fact.s for fact in facts), bound, derivation)
