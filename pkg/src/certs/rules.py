"""
Rule definitions for the certificate checker.

Each rule recomputes its conclusion from its inputs and parameters with exact
arithmetic. Nothing here knows how the engine chose a step.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, NoReturn, Optional, Sequence, Tuple, Type, Union

from ..bounds.axioms import AXIOMS_BY_NAME
from ..bounds.combinators import decomposition_value
from ..core import (
    LinExpr,
    binomial,
    eventually_nonpositive,
    eventually_positive,
    format_rat,
    linexpr_compare,
    parse_rat,
)
from ..cremona.system import parse_mults
from ..exceptions import CertificateError, ParseError, PreconditionError


@dataclass(frozen=True)
class Reducing:
    """A system part way through a reduction; ``origin`` is what will be proven empty"""

    N: int
    degree: LinExpr
    mults: Tuple[LinExpr, ...]
    origin: Tuple[LinExpr, Tuple[LinExpr, ...]]
    m0: int


@dataclass(frozen=True)
class Empty:
    """I(mults)_degree = 0 in P^N for every m >= m0"""

    N: int
    degree: LinExpr
    mults: Tuple[LinExpr, ...]
    m0: int


@dataclass(frozen=True)
class Bound:
    """ahat(P^N, s) >= bound"""

    N: int
    s: int
    bound: Fraction


Conclusion = Union[Reducing, Empty, Bound]


def expand(mults: str) -> Tuple[LinExpr, ...]:
    return tuple(expr for expr, count in parse_mults(mults) for _ in range(count))


class RuleChecker(ABC):
    """Base class for one certificate rule"""

    rule: str = ""
    arity: Optional[int] = 1

    def check(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        if self.arity is not None and len(inputs) != self.arity:
            raise CertificateError(
                f"'{self.rule}' takes {self.arity} input(s), got {len(inputs)}",
                kind="structural",
            )
        try:
            return self.apply(params, inputs)
        except (KeyError, TypeError, ValueError, ParseError) as e:
            raise CertificateError(
                f"'{self.rule}' has malformed parameters: {e}", kind="structural"
            )
        except PreconditionError as e:
            raise CertificateError(str(e))

    @abstractmethod
    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        """Recompute this step's conclusion"""
        pass

    def _input(self, inputs: Sequence[Conclusion], index: int, kind: Type[Any]) -> Any:
        value = inputs[index]
        if not isinstance(value, kind):
            raise CertificateError(
                f"'{self.rule}' input {index} must be {kind.__name__}, "
                f"got {type(value).__name__}",
                kind="structural",
            )
        return value

    @staticmethod
    def _fail(reason: str) -> NoReturn:
        raise CertificateError(reason)


def _int(params: Dict[str, Any], key: str) -> int:
    value = params[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"'{key}' must be an integer")
    return value


class OpenRule(RuleChecker):
    rule = "open"
    arity = 0

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        N = _int(params, "N")
        if N < 2:
            self._fail(f"Linear systems need N >= 2, got {N}")
        degree = LinExpr.parse(params["degree"])
        mults = expand(params["mults"])
        return Reducing(N, degree, mults, (degree, mults), 1)


class CremonaRule(RuleChecker):
    rule = "cremona"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        state: Reducing = self._input(inputs, 0, Reducing)
        selection = [int(i) for i in params["selection"]]
        if len(selection) != state.N + 1 or len(set(selection)) != len(selection):
            self._fail(f"Selection {selection} is not {state.N + 1} distinct points")
        if any(not 0 <= i < len(state.mults) for i in selection):
            self._fail(f"Selection {selection} indexes past {len(state.mults)} points")

        m0 = 1
        for i in selection:
            positive = eventually_positive(state.mults[i])
            if not positive.is_less:
                self._fail(f"Selected multiplicity {state.mults[i]} is not positive")
            m0 = max(m0, positive.m0)

        k = (state.N - 1) * state.degree
        for i in selection:
            k = k - state.mults[i]
        claimed = LinExpr.parse(params["k"])
        if claimed != k:
            self._fail(f"k mismatch: certificate says {claimed}, rule gives {k}")
        if _int(params, "m0") != m0:
            self._fail(f"m0 mismatch: certificate says {params['m0']}, rule gives {m0}")

        mults = list(state.mults)
        for i in selection:
            mults[i] = mults[i] + k
        return Reducing(
            state.N, state.degree + k, tuple(mults), state.origin, max(state.m0, m0)
        )


class ClampRule(RuleChecker):
    rule = "clamp"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        state: Reducing = self._input(inputs, 0, Reducing)
        dropped = sorted({int(i) for i in params["dropped"]})
        m0 = 1
        for i in dropped:
            if not 0 <= i < len(state.mults):
                self._fail(f"Clamp index {i} outside 0..{len(state.mults) - 1}")
            verdict = eventually_nonpositive(state.mults[i])
            if not verdict.is_less:
                self._fail(f"Clamped multiplicity {state.mults[i]} is not <= 0")
            m0 = max(m0, verdict.m0)
        if _int(params, "m0") != m0:
            self._fail(f"m0 mismatch: certificate says {params['m0']}, rule gives {m0}")

        gone = set(dropped)
        kept = tuple(e for i, e in enumerate(state.mults) if i not in gone)
        return Reducing(state.N, state.degree, kept, state.origin, max(state.m0, m0))


class ContradictionRule(RuleChecker):
    rule = "contradiction"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        state: Reducing = self._input(inputs, 0, Reducing)
        witness = params["witness"]
        if witness == "negative-degree":
            verdict = linexpr_compare(state.degree, LinExpr.constant(0))
            if not verdict.is_less:
                self._fail(f"Degree {state.degree} is not eventually negative")
        else:
            index = _int(params, "witness")
            if not 0 <= index < len(state.mults):
                self._fail(f"Witness {index} outside 0..{len(state.mults) - 1}")
            verdict = linexpr_compare(state.degree, state.mults[index])
            if not verdict.is_less:
                self._fail(
                    f"Multiplicity {state.mults[index]} does not exceed "
                    f"degree {state.degree}"
                )
        if _int(params, "m0") != verdict.m0:
            self._fail(
                f"m0 mismatch: certificate says {params['m0']}, rule gives {verdict.m0}"
            )
        degree, mults = state.origin
        return Empty(state.N, degree, mults, max(state.m0, verdict.m0))


class GlueRule(RuleChecker):
    rule = "glue"
    arity = 2

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        left: Empty = self._input(inputs, 0, Empty)
        right: Empty = self._input(inputs, 1, Empty)
        if left.N != right.N:
            self._fail(f"Cannot glue P^{left.N} onto P^{right.N}")
        joint = _int(params, "joint")
        if not 0 <= joint < len(right.mults):
            self._fail(f"Joint {joint} outside 0..{len(right.mults) - 1}")
        if right.mults[joint] != left.degree + 1:
            self._fail(
                f"Joint multiplicity {right.mults[joint]} is not "
                f"{left.degree + 1} = left degree + 1"
            )
        rest = right.mults[:joint] + right.mults[joint + 1 :]
        return Empty(right.N, right.degree, left.mults + rest, max(left.m0, right.m0))


class EmptyFromBoundRule(RuleChecker):
    rule = "empty-from-bound"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        fact: Bound = self._input(inputs, 0, Bound)
        p, q = _int(params, "p"), _int(params, "q")
        if p < 1 or q < 1:
            self._fail(f"p and q must be positive (got {p}, {q})")
        if Fraction(p, q) > fact.bound:
            self._fail(f"{p}/{q} exceeds the bound {format_rat(fact.bound)}")
        return Empty(fact.N, LinExpr(p, -1), (LinExpr(q, 0),) * fact.s, 1)


def _homogeneous_degree(empty: Empty, p: int) -> None:
    if empty.degree != LinExpr(p, -1):
        raise CertificateError(f"Degree {empty.degree} is not {LinExpr(p, -1)}")


class BoundFromEmptyRule(RuleChecker):
    rule = "bound-from-empty"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        empty: Empty = self._input(inputs, 0, Empty)
        p, q = _int(params, "p"), _int(params, "q")
        if p < 1 or q < 1:
            self._fail(f"p and q must be positive (got {p}, {q})")
        _homogeneous_degree(empty, p)
        if any(mult != LinExpr(q, 0) for mult in empty.mults):
            self._fail(f"Multiplicities are not all {LinExpr(q, 0)}")
        return Bound(empty.N, len(empty.mults), Fraction(p, q))


class ClumpBoundRule(RuleChecker):
    rule = "clump-bound"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        empty: Empty = self._input(inputs, 0, Empty)
        a, b = _int(params, "a"), _int(params, "b")
        p, q = _int(params, "p"), _int(params, "q")
        if p < 1 or q < 1:
            self._fail(f"p and q must be positive (got {p}, {q})")
        _homogeneous_degree(empty, p)
        doubles = sum(1 for mult in empty.mults if mult == LinExpr(2 * q, 0))
        simples = sum(1 for mult in empty.mults if mult == LinExpr(q, 0))
        if doubles + simples != len(empty.mults) or (doubles, simples) != (a, b):
            self._fail(
                f"Claim is not ({2 * q}m)^x{a}, ({q}m)^x{b} "
                f"(found {doubles} double, {simples} simple)"
            )
        return Bound(empty.N, 2**empty.N * a + b, Fraction(p, q))


class AxiomRule(RuleChecker):
    rule = "axiom"
    arity = 0

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        name = params["name"]
        N, s = _int(params, "N"), _int(params, "s")
        bound = parse_rat(params["bound"])
        axiom = AXIOMS_BY_NAME.get(name)
        if axiom is None:
            self._fail(f"Unknown axiom '{name}'")
        elif not axiom.holds(N, s, bound):
            self._fail(f"({N}, {s}, {format_rat(bound)}) is no instance of {name}")
        return Bound(N, s, bound)


class MonotoneRule(RuleChecker):
    rule = "monotone"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        fact: Bound = self._input(inputs, 0, Bound)
        s = _int(params, "s")
        if s < fact.s:
            self._fail(f"Cannot lift from s={fact.s} down to s={s}")
        return Bound(fact.N, s, fact.bound)


class WeakenRule(RuleChecker):
    rule = "weaken"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        fact: Bound = self._input(inputs, 0, Bound)
        bound = parse_rat(params["bound"])
        if not 0 < bound <= fact.bound:
            self._fail(f"Cannot weaken {format_rat(fact.bound)} to {format_rat(bound)}")
        return Bound(fact.N, fact.s, bound)


class SplitRule(RuleChecker):
    rule = "split"

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        fact: Bound = self._input(inputs, 0, Bound)
        return Bound(fact.N, 2**fact.N * fact.s, 2 * fact.bound)


class ChudnovskyRule(RuleChecker):
    rule = "chudnovsky"
    arity = 0

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        N, s, c = _int(params, "N"), _int(params, "s"), _int(params, "c")
        if N < 3 or c < 2:
            self._fail(f"Chudnovsky-type bound needs N >= 3 and c >= 2 (got {N}, {c})")
        if s < binomial(N + c, N):
            self._fail(f"s={s} is below C({N + c}, {N}) = {binomial(N + c, N)}")
        return Bound(N, s, Fraction(N + c + 1, N))


class DecomposeRule(RuleChecker):
    rule = "decompose"
    arity = None

    def apply(self, params: Dict[str, Any], inputs: Sequence[Conclusion]) -> Conclusion:
        N, k = _int(params, "N"), _int(params, "k")
        if len(inputs) != k + 1:
            raise CertificateError(
                f"decompose with k={k} takes {k + 1} inputs, got {len(inputs)}",
                kind="structural",
            )
        facts: List[Bound] = [self._input(inputs, i, Bound) for i in range(k + 1)]
        for fact in facts:
            if fact.N != N - 1:
                self._fail(f"decompose in P^{N} needs P^{N - 1} inputs, got P^{fact.N}")
        bound = decomposition_value(k, [fact.bound for fact in facts])
        return Bound(N, sum(fact.s for fact in facts), bound)


RULES: Dict[str, RuleChecker] = {
    checker.rule: checker
    for checker in (
        OpenRule(),
        CremonaRule(),
        ClampRule(),
        ContradictionRule(),
        GlueRule(),
        EmptyFromBoundRule(),
        BoundFromEmptyRule(),
        ClumpBoundRule(),
        AxiomRule(),
        MonotoneRule(),
        WeakenRule(),
        SplitRule(),
        ChudnovskyRule(),
        DecomposeRule(),
    )
}
