"""
Derivation scripts: the specific reductions, gluings, splits and
decompositions that produce the known bounds in each dimension.

Each script point builds one certified fact at a fixed number of points. The
orchestrator lifts every script point at or below s and keeps the best.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from ..core import binomial
from ..cremona import (
    EmptinessCertificate,
    SystemSpec,
    bound_from_empty,
    empty_from_bound,
    glue,
    prove_empty,
)
from ..facts import BoundFact
from .axioms import AXIOMS_BY_NAME, axiom_fact
from .combinators import clump_bound, decompose, double_points_split, weaken

logger = logging.getLogger(__name__)

Derive = Callable[[int, int], BoundFact]
Builder = Callable[[Derive], Optional[BoundFact]]
Input = Tuple[int, Fraction]


@dataclass(frozen=True)
class ScriptPoint:
    """A fact at exactly s points, built on demand"""

    s: int
    name: str
    build: Builder


# (points, degree, right multiplicities, gluings) for I((20m)^{x6})_{30m-1} = 0
P4_GLUINGS: Tuple[Tuple[int, str, str, int], ...] = (
    (15, "36m-1", "20m x9, 30m", 1),
    (43, "44m-1", "20m, 30m x7", 7),
    (67, "48m-1", "20m, 30m x11", 11),
)

# (points, k, [(points in P^4, bound used)])
P5_DECOMPOSITIONS: Tuple[Tuple[int, int, Tuple[Input, ...]], ...] = (
    (14, 1, ((8, Fraction(8, 5)), (6, Fraction(3, 2)))),
    (22, 1, ((15, Fraction(9, 5)), (7, Fraction(3, 2)))),
    (125, 2, ((67, Fraction(12, 5)), (43, Fraction(11, 5)), (15, Fraction(9, 5)))),
)


def simplex_fact(N: int) -> BoundFact:
    axiom = AXIOMS_BY_NAME["coordinate-simplex"]
    return axiom_fact(axiom, N, N + 1, Fraction(N + 1, N))


def _split(fact: BoundFact) -> Builder:
    return lambda derive: double_points_split(fact)


def _glued(
    N: int, left: BoundFact, scale: int, degree: str, mults: str, gluings: int
) -> Builder:
    """Reduce the right system, then glue the scaled left fact ``gluings`` times"""

    def build(derive: Derive) -> Optional[BoundFact]:
        result = prove_empty(SystemSpec.parse(N, degree, mults))
        if not isinstance(result, EmptinessCertificate):
            logger.warning(f"Script reduction failed: {result.claim} ({result.reason})")
            return None
        piece = empty_from_bound(left, scale)
        certificate = result
        for _ in range(gluings):
            certificate = glue(piece, certificate)
        return bound_from_empty(certificate)

    return build


def _decomposition(N: int, k: int, inputs: Sequence[Input]) -> Builder:
    """k+1 facts from P^{N-1}, each weakened to the value the argument uses"""

    def build(derive: Derive) -> Optional[BoundFact]:
        facts: List[BoundFact] = []
        for r, needed in inputs:
            found = derive(N - 1, r)
            if found.bound < needed:
                logger.debug(
                    f"P^{N - 1} at {r} points gives {found.bound} < {needed}; "
                    f"skipping decomposition in P^{N}"
                )
                return None
            facts.append(weaken(found, needed))
        return decompose(N, k, facts)

    return build


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def large_ell_decompositions(N: int) -> List[ScriptPoint]:
    """k=1 decompositions for the brackets with ell^2 - 3 ell - (N-1) > 0"""
    points: List[ScriptPoint] = []
    for ell in range(4, N):
        if ell * ell - 3 * ell - (N - 1) <= 0:
            continue
        r1 = _ceil_div(binomial(N - 1 + ell, N - 1), N)
        r2 = _ceil_div(binomial(N - 2 + ell, N - 1), N)
        inputs = [(r1, Fraction(N - 1 + ell, N)), (r2, Fraction(N - 2 + ell, N))]
        builder = _decomposition(N, 1, inputs)
        points.append(ScriptPoint(r1 + r2, f"decomposition for ell={ell}", builder))
    return points


def known_scripts(N: int) -> List[ScriptPoint]:
    """Script points for P^N, in preference order"""
    points: List[ScriptPoint] = []

    if N == 3:
        seven = axiom_fact(AXIOMS_BY_NAME["p3-table"], 3, 7, Fraction(28, 15))
        points.append(ScriptPoint(56, "split of 7", _split(seven)))

    if N == 4:
        six = axiom_fact(AXIOMS_BY_NAME["n-plus-two"], 4, 6, Fraction(3, 2))
        for s, degree, mults, gluings in P4_GLUINGS:
            builder = _glued(4, six, 10, degree, mults, gluings)
            points.append(ScriptPoint(s, f"reduction + {gluings} gluing(s)", builder))

    if N == 5:
        for s, k, inputs in P5_DECOMPOSITIONS:
            points.append(
                ScriptPoint(s, f"decomposition k={k}", _decomposition(5, k, inputs))
            )
        points.append(ScriptPoint(192, "split of 6", _split(simplex_fact(5))))

    if N == 6:
        points.append(
            ScriptPoint(
                429, "clump 2^x6,1^x45", lambda derive: clump_bound(6, 6, 45, 22, 10)
            )
        )
        points.append(ScriptPoint(448, "split of 7", _split(simplex_fact(6))))

    if 7 <= N <= 10:
        points.append(
            ScriptPoint(2**N * (N + 1), f"split of {N + 1}", _split(simplex_fact(N)))
        )

    if N >= 6:
        points.extend(large_ell_decompositions(N))

    return points
