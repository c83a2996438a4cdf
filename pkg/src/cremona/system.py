"""
Linear systems I(m_1, ..., m_s)_d of forms with prescribed vanishing at generic points
"""

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from ..core import LinExpr
from ..exceptions import ParseError, ReductionError

MultRun = Tuple[LinExpr, int]

_RUN_RE = re.compile(r"^\s*(?P<expr>.+?)\s*(?:[x×\*]\s*(?P<count>\d+))?\s*$")


def group_runs(expanded: Iterable[LinExpr]) -> Tuple[MultRun, ...]:
    """Collapse consecutive equal multiplicities into (expr, count) runs"""
    runs: List[List] = []
    for expr in expanded:
        if runs and runs[-1][0] == expr:
            runs[-1][1] += 1
        else:
            runs.append([expr, 1])
    return tuple((expr, count) for expr, count in runs)


def parse_mults(text: str) -> Tuple[MultRun, ...]:
    """Parse ``"20m x9, 30m x1"`` into multiplicity runs"""
    runs: List[MultRun] = []
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        match = _RUN_RE.match(chunk)
        if not match:
            raise ParseError(f"Malformed multiplicity run: '{chunk.strip()}'")
        count = int(match.group("count") or 1)
        runs.append((LinExpr.parse(match.group("expr")), count))
    if not runs:
        raise ParseError(f"No multiplicities in '{text}'")
    return tuple(runs)


def format_mults(runs: Sequence[MultRun]) -> str:
    return ", ".join(f"{expr} x{count}" for expr, count in runs)


@dataclass(frozen=True)
class SystemSpec:
    """Degree and multiplicities of an m-parameterized linear system in P^N

    Parsed systems have at least one point; a reduction may clamp them all away.
    """

    N: int
    degree: LinExpr
    mults: Tuple[MultRun, ...]

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ReductionError(f"Linear systems need N >= 2, got N={self.N}")
        if any(count <= 0 for _, count in self.mults):
            raise ReductionError("Multiplicity counts must be positive")

    @classmethod
    def of(cls, N: int, degree: LinExpr, expanded: Iterable[LinExpr]) -> "SystemSpec":
        return cls(N, degree, group_runs(expanded))

    @classmethod
    def parse(cls, N: int, degree: str, mults: str) -> "SystemSpec":
        return cls(N, LinExpr.parse(degree), parse_mults(mults))

    @property
    def point_count(self) -> int:
        return sum(count for _, count in self.mults)

    def expanded(self) -> Tuple[LinExpr, ...]:
        return tuple(expr for expr, count in self.mults for _ in range(count))

    def instantiate(self, m: int) -> Tuple[int, List[int]]:
        """Concrete (degree, multiplicities) at m, dropping nonpositive ones"""
        values = [expr.at(m) for expr in self.expanded()]
        return self.degree.at(m), [v for v in values if v > 0]

    def __str__(self) -> str:
        return f"I({format_mults(self.mults)})_{{{self.degree}}} in P^{self.N}"
