"""
Cremona Engine - Derives emptiness certificates for m-parameterized linear systems
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .. import citations
from ..config import config
from ..core import (
    LinExpr,
    eventually_nonpositive,
    eventually_positive,
    linexpr_compare,
)
from ..exceptions import PreconditionError
from ..facts import BoundFact, Derivation
from .certificate import (
    AxiomLeaf,
    ClampStep,
    ContradictionStep,
    CremonaStep,
    EmptinessCertificate,
    GlueStep,
    NotProven,
    Step,
)
from .system import SystemSpec

logger = logging.getLogger(__name__)

ProofResult = Union[EmptinessCertificate, NotProven]


@dataclass(frozen=True)
class Reduction:
    """Outcome of one Cremona step, before and after clamping"""

    system: SystemSpec
    k: LinExpr
    step: CremonaStep
    clamp: Optional[ClampStep]


def _validate_selection(system: SystemSpec, selection: Sequence[int]) -> None:
    size = system.N + 1
    if len(selection) != size:
        raise PreconditionError(
            f"Selection needs exactly N+1={size} indices, got {len(selection)}"
        )
    if len(set(selection)) != len(selection):
        raise PreconditionError(f"Selection repeats an index: {list(selection)}")
    count = system.point_count
    for index in selection:
        if not 0 <= index < count:
            raise PreconditionError(f"Index {index} outside 0..{count - 1}")


def reduction_k(system: SystemSpec, selection: Sequence[int]) -> LinExpr:
    """k = (N-1) * degree - sum of the selected multiplicities"""
    expanded = system.expanded()
    total = LinExpr(0, 0)
    for index in selection:
        total = total + expanded[index]
    return (system.N - 1) * system.degree - total


def apply_reduction(
    system: SystemSpec, selection: Sequence[int], clamp: bool = True
) -> Reduction:
    """Apply the quadratic transformation centred at the selected points"""
    _validate_selection(system, selection)
    expanded = list(system.expanded())

    m0 = 1
    for index in selection:
        positive = eventually_positive(expanded[index])
        if not positive.is_less:
            raise PreconditionError(
                f"Selected multiplicity {expanded[index]} is not eventually positive"
            )
        m0 = max(m0, positive.m0)

    k = reduction_k(system, selection)
    for index in selection:
        expanded[index] = expanded[index] + k
    degree = system.degree + k
    step = CremonaStep(tuple(selection), k, m0)

    reduced = SystemSpec.of(system.N, degree, expanded)
    clamp_step = None
    if clamp:
        reduced, clamp_step = clamp_points(reduced)
    return Reduction(reduced, k, step, clamp_step)


def clamp_points(system: SystemSpec) -> Tuple[SystemSpec, Optional[ClampStep]]:
    """Drop the points whose multiplicity is <= 0 for all large m"""
    dropped: List[int] = []
    m0 = 1
    for index, mult in enumerate(system.expanded()):
        verdict = eventually_nonpositive(mult)
        if verdict.is_less:
            dropped.append(index)
            m0 = max(m0, verdict.m0)
    if not dropped:
        return system, None
    gone = set(dropped)
    kept = [mult for index, mult in enumerate(system.expanded()) if index not in gone]
    return SystemSpec.of(system.N, system.degree, kept), ClampStep(tuple(dropped), m0)


def cremona_step(
    system: SystemSpec, selection: Sequence[int]
) -> Tuple[SystemSpec, LinExpr]:
    """Reduced system and the k added to its degree and selected multiplicities"""
    result = apply_reduction(system, selection)
    return result.system, result.k


def greedy_selection(system: SystemSpec) -> Tuple[int, ...]:
    """The N+1 eventually-largest multiplicities; ties by list order"""
    expanded = system.expanded()
    order = sorted(
        range(len(expanded)),
        key=lambda i: (-expanded[i].slope, -expanded[i].intercept, i),
    )
    return tuple(sorted(order[: system.N + 1]))


def find_contradiction(system: SystemSpec) -> Optional[ContradictionStep]:
    """A reason ``system`` is empty for large m, if one is visible directly"""
    negative = linexpr_compare(system.degree, LinExpr.constant(0))
    if negative.is_less:
        return ContradictionStep(None, negative.m0)

    expanded = system.expanded()
    order = sorted(
        range(len(expanded)),
        key=lambda i: (-expanded[i].slope, -expanded[i].intercept, i),
    )
    for index in order:
        verdict = linexpr_compare(system.degree, expanded[index])
        if verdict.is_less:
            return ContradictionStep(index, verdict.m0)
    return None


def prove_empty(system: SystemSpec, max_steps: Optional[int] = None) -> ProofResult:
    """Greedy Cremona reduction until the degree drops below a multiplicity"""
    max_steps = config.MAX_STEPS if max_steps is None else max_steps
    if max_steps < 1:
        raise PreconditionError(f"max_steps must be at least 1, got {max_steps}")

    steps: List[Step] = []
    current, clamp_step = clamp_points(system)
    if clamp_step is not None:
        steps.append(clamp_step)
    for attempt in range(max_steps + 1):
        contradiction = find_contradiction(current)
        if contradiction is not None:
            steps.append(contradiction)
            m0 = max(getattr(step, "m0", 1) for step in steps)
            certificate = EmptinessCertificate(system, tuple(steps), m0)
            logger.info(f"Proved {system} = 0 after {attempt} step(s), m0={m0}")
            return certificate

        if attempt == max_steps:
            break
        if current.point_count < current.N + 1:
            return NotProven(system, attempt, "too-few-points")

        selection = greedy_selection(current)
        k = reduction_k(current, selection)
        if not linexpr_compare(k, LinExpr.constant(0)).is_less:
            return NotProven(system, attempt, "no-progress")

        result = apply_reduction(current, selection)
        steps.append(result.step)
        if result.clamp is not None:
            steps.append(result.clamp)
        current = result.system
        logger.debug(
            f"Step {attempt + 1}: select {list(selection)}, k={k}, "
            f"degree {current.degree}"
        )

    return NotProven(system, max_steps, "max-steps")


def glue(
    left: EmptinessCertificate, right: EmptinessCertificate
) -> EmptinessCertificate:
    """Combine I(left)_{k} = 0 and I(right, k+1)_{d} = 0 into one system at degree d"""
    if left.claim.N != right.claim.N:
        raise PreconditionError(
            f"Cannot glue systems in P^{left.claim.N} and P^{right.claim.N}"
        )

    joint_mult = left.claim.degree + 1
    right_mults = list(right.claim.expanded())
    if joint_mult not in right_mults:
        raise PreconditionError(
            f"Right system has no point of multiplicity {joint_mult}"
        )
    joint = right_mults.index(joint_mult)
    del right_mults[joint]

    combined = SystemSpec.of(
        right.claim.N, right.claim.degree, list(left.claim.expanded()) + right_mults
    )
    return EmptinessCertificate(
        combined, (GlueStep(left, right, joint),), max(left.m0, right.m0)
    )


def homogeneous_system(N: int, s: int, p: int, q: int) -> SystemSpec:
    """I((q m)^{x s})_{p m - 1}"""
    return SystemSpec(N, LinExpr(p, -1), ((LinExpr(q, 0), s),))


def empty_from_bound(fact: BoundFact, scale: int = 1) -> EmptinessCertificate:
    """Read a certified bound p/q as emptiness of I((q m)^{x s})_{p m - 1}"""
    if not fact.certified:
        raise PreconditionError(f"Bound {fact} is not certified")
    if scale < 1:
        raise PreconditionError(f"Scale must be positive, got {scale}")

    p = fact.bound.numerator * scale
    q = fact.bound.denominator * scale
    claim = homogeneous_system(fact.N, fact.s, p, q)
    return EmptinessCertificate(claim, (AxiomLeaf(fact, p, q),), 1)


def homogeneous_pattern(claim: SystemSpec) -> Tuple[int, int]:
    """(p, q) when ``claim`` is I((q m)^{x s})_{p m - 1}"""
    slopes = {expr.slope for expr, _ in claim.mults}
    intercepts = {expr.intercept for expr, _ in claim.mults}
    if len(slopes) != 1 or intercepts != {0}:
        raise PreconditionError(
            f"{claim} is not homogeneous: multiplicities must all be q*m"
        )
    q = slopes.pop()
    if q < 1:
        raise PreconditionError(f"{claim} needs a positive multiplicity slope")
    if claim.degree.intercept != -1 or claim.degree.slope < 1:
        raise PreconditionError(f"{claim} needs degree p*m-1 with p >= 1")
    return claim.degree.slope, q


def bound_from_empty(cert: EmptinessCertificate) -> BoundFact:
    """ahat(P^N, s) >= p/q from emptiness of I((q m)^{x s})_{p m - 1}"""
    p, q = homogeneous_pattern(cert.claim)
    derivation = Derivation("bound-from-empty", {"p": p, "q": q}, (cert,))
    return BoundFact(cert.claim.N, cert.claim.point_count, Fraction(p, q), derivation)


def clump_system(N: int, a: int, b: int, p: int, q: int) -> SystemSpec:
    """I((2q m)^{x a}, (q m)^{x b})_{p m - 1}"""
    runs = tuple(
        (LinExpr(slope, 0), count) for slope, count in ((2 * q, a), (q, b)) if count
    )
    return SystemSpec(N, LinExpr(p, -1), runs)


def clump_pattern(claim: SystemSpec, q: int) -> Tuple[int, int, int]:
    """(a, b, p) when ``claim`` is I((2q m)^{x a}, (q m)^{x b})_{p m - 1}"""
    if q < 1:
        raise PreconditionError(f"Clump scale q must be positive, got {q}")
    if claim.degree.intercept != -1 or claim.degree.slope < 1:
        raise PreconditionError(f"{claim} needs degree p*m-1 with p >= 1")
    a = b = 0
    for expr, count in claim.mults:
        if expr == LinExpr(2 * q, 0):
            a += count
        elif expr == LinExpr(q, 0):
            b += count
        else:
            raise PreconditionError(
                f"{claim} has multiplicity {expr}, expected {2 * q}m or {q}m"
            )
    return a, b, claim.degree.slope


def bound_from_clump(cert: EmptinessCertificate, q: int) -> BoundFact:
    """A double point absorbs 2^N simple ones: ahat(P^N, 2^N a + b) >= p/q"""
    a, b, p = clump_pattern(cert.claim, q)
    N = cert.claim.N
    derivation = Derivation(
        "clump-bound",
        {"a": a, "b": b, "p": p, "q": q},
        (cert,),
        (citations.CLUMPING,),
    )
    return BoundFact(N, 2**N * a + b, Fraction(p, q), derivation)
