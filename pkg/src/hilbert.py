"""
Hilbert function of general double points and the degree bounds derived from it
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .core import binomial
from .exceptions import PreconditionError


class PointMode(Enum):
    """How general the point configuration is assumed to be"""

    VERY_GENERAL = "very-general"
    GENERAL = "general"

    @classmethod
    def parse(cls, text: str) -> "PointMode":
        normalized = text.strip().lower().replace("_", "-")
        for mode in cls:
            if mode.value == normalized:
                return mode
        raise ValueError(f"Unknown point mode '{text}'")


@dataclass(frozen=True)
class HilbertValue:
    """Value of HF_{R/I^(2)}(d); ``value`` is None for an exceptional triple"""

    N: int
    s: int
    d: int
    value: Optional[int]

    @property
    def exceptional(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is None:
            return "EXCEPTIONAL (use --oracle)"
        return str(self.value)


@dataclass(frozen=True)
class EllBracket:
    N: int
    s: int
    ell: int
    mode: PointMode


def hilbert_polynomial(N: int, s: int) -> int:
    """Constant Hilbert polynomial s(N+1) of s double points"""
    return s * (N + 1)


def is_exceptional(N: int, s: int, d: int) -> bool:
    """Whether (N, s, d) is on the Alexander-Hirschowitz exception list"""
    if d == 2 and 2 <= s <= N:
        return True
    if d == 3 and N == 4 and s == 7:
        return True
    if d == 4 and 2 <= N <= 4 and s == binomial(N + 2, 2) - 1:
        return True
    return False


def hf_double(N: int, s: int, d: int) -> HilbertValue:
    """HF of s general double points in P^N at degree d"""
    if N < 1 or s < 1 or d < 0:
        raise PreconditionError(
            f"hf_double needs N >= 1, s >= 1, d >= 0 (got {N}, {s}, {d})"
        )
    if is_exceptional(N, s, d):
        return HilbertValue(N, s, d, None)
    return HilbertValue(N, s, d, min(binomial(d + N, N), hilbert_polynomial(N, s)))


def alpha2_upper(N: int, s: int) -> Tuple[int, bool]:
    """Least d with s(N+1) < C(d+N, N), and whether no exception lies at or below it"""
    if N < 1 or s < 1:
        raise PreconditionError(f"alpha2_upper needs N >= 1 and s >= 1 (got {N}, {s})")
    target = hilbert_polynomial(N, s)
    d = 0
    while binomial(d + N, N) <= target:
        d += 1
    sharp = not any(is_exceptional(N, s, k) for k in range(d + 1))
    return d, sharp


def reg2_upper(N: int, s: int) -> Tuple[int, bool]:
    """Upper bound d*+1 for reg(I^(2)), skipping exceptional degrees upward"""
    if N < 1 or s < 1:
        raise PreconditionError(f"reg2_upper needs N >= 1 and s >= 1 (got {N}, {s})")
    target = hilbert_polynomial(N, s)
    naive = 0
    while binomial(naive + N, N) < target:
        naive += 1

    d = naive
    while is_exceptional(N, s, d):
        d += 1
    return d + 1, d != naive


def ell_bracket(N: int, s: int, mode: PointMode) -> EllBracket:
    """The unique ell bracketing (N+1)s between C(N+ell, N) and C(N+ell+1, N)"""
    target = hilbert_polynomial(N, s)
    if target < 1:
        raise PreconditionError(f"ell_bracket needs (N+1)s >= 1 (got {target})")

    ell = 0
    if mode is PointMode.VERY_GENERAL:
        # C(N+ell, N) <= (N+1)s < C(N+ell+1, N)
        while binomial(N + ell + 1, N) <= target:
            ell += 1
    else:
        # C(N+ell, N) < (N+1)s <= C(N+ell+1, N)
        while binomial(N + ell + 1, N) < target:
            ell += 1
    return EllBracket(N, s, ell, mode)
