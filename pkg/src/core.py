"""
Exact arithmetic shared by every module: binomials, rationals and the
affine-linear expressions in the scaling parameter m
"""

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .exceptions import ParseError

Rat = Fraction


def binomial(n: int, k: int) -> int:
    """C(n, k), zero whenever k < 0, k > n or n < 0"""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def parse_rat(text: str) -> Fraction:
    """Parse ``p/q`` or an integer into an exact rational"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"Not an exact rational: '{text}'")


def format_rat(value: Fraction) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, places: int = 4) -> str:
    """Decimal approximation for display only"""
    scaled = round(value * 10**places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


_LINEXPR_RE = re.compile(
    r"^\s*(?:(?P<slope>[+-]?\d*)\s*m)?\s*(?P<intercept>[+-]?\s*\d+)?\s*$"
)


@dataclass(frozen=True, order=True)
class LinExpr:
    """slope * m + intercept over the integers"""

    slope: int
    intercept: int = 0

    @classmethod
    def parse(cls, text: str) -> "LinExpr":
        """Parse ``36m-1``, ``20m``, ``-2m-3``, ``m`` or a bare integer"""
        match = _LINEXPR_RE.match(text)
        if not match or not text.strip():
            raise ParseError(f"Malformed linear expression: '{text}'")

        raw_slope = match.group("slope")
        raw_intercept = match.group("intercept")
        if raw_slope is None and raw_intercept is None:
            raise ParseError(f"Malformed linear expression: '{text}'")

        if raw_slope is None:
            slope = 0
        elif raw_slope in ("", "+"):
            slope = 1
        elif raw_slope == "-":
            slope = -1
        else:
            slope = int(raw_slope)

        if raw_intercept is None:
            intercept = 0
        else:
            compact = raw_intercept.replace(" ", "")
            # "36m 1" has no sign between the parts
            if raw_slope is not None and compact[0] not in "+-":
                raise ParseError(f"Malformed linear expression: '{text}'")
            intercept = int(compact)
        return cls(slope, intercept)

    @classmethod
    def constant(cls, value: int) -> "LinExpr":
        return cls(0, value)

    def __str__(self) -> str:
        if self.slope == 0:
            return str(self.intercept)
        text = f"{self.slope}m"
        if self.intercept:
            text += f"{self.intercept:+d}"
        return text

    def __add__(self, other: Union["LinExpr", int]) -> "LinExpr":
        if isinstance(other, int):
            return LinExpr(self.slope, self.intercept + other)
        return LinExpr(self.slope + other.slope, self.intercept + other.intercept)

    __radd__ = __add__

    def __sub__(self, other: Union["LinExpr", int]) -> "LinExpr":
        if isinstance(other, int):
            return LinExpr(self.slope, self.intercept - other)
        return LinExpr(self.slope - other.slope, self.intercept - other.intercept)

    def __neg__(self) -> "LinExpr":
        return LinExpr(-self.slope, -self.intercept)

    def __mul__(self, factor: int) -> "LinExpr":
        return LinExpr(self.slope * factor, self.intercept * factor)

    __rmul__ = __mul__

    def at(self, m: int) -> int:
        return self.slope * m + self.intercept


class Ordering(Enum):
    """Eventual order of two expressions"""

    LESS = "eventually-less"
    GREATER = "eventually-greater"
    EQUAL = "always-equal"


@dataclass(frozen=True)
class Comparison:
    """Verdict of linexpr_compare; strict orderings hold for every m >= m0"""

    ordering: Ordering
    m0: int = 1

    @property
    def is_less(self) -> bool:
        return self.ordering is Ordering.LESS

    @property
    def is_greater(self) -> bool:
        return self.ordering is Ordering.GREATER

    @property
    def is_equal(self) -> bool:
        return self.ordering is Ordering.EQUAL

    def __str__(self) -> str:
        if self.is_equal:
            return self.ordering.value
        return f"{self.ordering.value}(m0={self.m0})"


def linexpr_compare(a: LinExpr, b: LinExpr) -> Comparison:
    """Compare a(m) and b(m) for all sufficiently large integers m >= 1"""
    if a.slope == b.slope:
        if a.intercept == b.intercept:
            return Comparison(Ordering.EQUAL)
        ordering = Ordering.LESS if a.intercept < b.intercept else Ordering.GREATER
        return Comparison(ordering, 1)

    # a(m) < b(m) iff (b.slope - a.slope) m > a.intercept - b.intercept
    threshold = (a.intercept - b.intercept) // (b.slope - a.slope) + 1
    ordering = Ordering.LESS if b.slope > a.slope else Ordering.GREATER
    return Comparison(ordering, max(1, threshold))


def linexpr_eval(e: LinExpr, m: int) -> int:
    """slope * m + intercept at a positive integer m"""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return e.at(m)


def eventually_positive(e: LinExpr) -> Comparison:
    """Comparison of 0 against e; LESS means e(m) >= 1 from m0 on"""
    return linexpr_compare(LinExpr.constant(0), e)


def eventually_nonpositive(e: LinExpr) -> Comparison:
    """Comparison of e against 1; LESS means e(m) <= 0 from m0 on"""
    return linexpr_compare(e, LinExpr.constant(1))
