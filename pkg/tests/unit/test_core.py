"""Tests for exact arithmetic and linear expressions in m"""

from fractions import Fraction

import pytest

from src.core import (
    LinExpr,
    Ordering,
    binomial,
    eventually_nonpositive,
    eventually_positive,
    format_decimal,
    format_rat,
    linexpr_compare,
    linexpr_eval,
    parse_rat,
)
from src.exceptions import ParseError


class TestLinExprParsing:
    """Test the text form of linear expressions"""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("36m-1", LinExpr(36, -1)),
            ("20m", LinExpr(20, 0)),
            ("-2m-3", LinExpr(-2, -3)),
            ("m", LinExpr(1, 0)),
            ("-m+4", LinExpr(-1, 4)),
            ("7", LinExpr(0, 7)),
            (" 30m - 1 ", LinExpr(30, -1)),
        ],
    )
    def test_parse(self, text: str, expected: LinExpr) -> None:
        """Test parsing of well-formed expressions"""
        assert LinExpr.parse(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "36m 1", "m m", "2.5m"])
    def test_parse_malformed(self, text: str) -> None:
        """Test that malformed expressions raise ParseError"""
        with pytest.raises(ParseError):
            LinExpr.parse(text)

    @pytest.mark.parametrize("text", ["36m-1", "20m", "-2m-3", "5", "-6m+12"])
    def test_text_form_is_stable(self, text: str) -> None:
        """Test that printing reproduces the canonical text"""
        assert str(LinExpr.parse(text)) == text


class TestLinExprArithmetic:
    """Test integer arithmetic on expressions"""

    def test_add_and_subtract(self) -> None:
        assert LinExpr(36, -1) + 1 == LinExpr(36, 0)
        assert LinExpr(20, 0) + LinExpr(-2, -3) == LinExpr(18, -3)
        assert LinExpr(20, 0) - LinExpr(30, 0) == LinExpr(-10, 0)
        assert -LinExpr(2, -1) == LinExpr(-2, 1)

    def test_scale(self) -> None:
        assert 3 * LinExpr(36, -1) == LinExpr(108, -3)
        assert LinExpr(2, 1) * 0 == LinExpr(0, 0)

    def test_evaluation(self) -> None:
        assert LinExpr(36, -1).at(1) == 35
        assert linexpr_eval(LinExpr(16, -31), 2) == 1
        with pytest.raises(ValueError):
            linexpr_eval(LinExpr(1, 0), 0)


class TestEventualComparison:
    """Test comparison for all sufficiently large m"""

    def test_equal(self) -> None:
        verdict = linexpr_compare(LinExpr(3, 1), LinExpr(3, 1))
        assert verdict.ordering is Ordering.EQUAL
        assert verdict.is_equal

    def test_same_slope(self) -> None:
        verdict = linexpr_compare(LinExpr(2, 1), LinExpr(2, 3))
        assert verdict.is_less
        assert verdict.m0 == 1

    def test_threshold_is_exact(self) -> None:
        """Test that m0 is the first m from which the order holds"""
        less = linexpr_compare(LinExpr(0, 5), LinExpr(1, 0))
        assert less.is_less and less.m0 == 6

        greater = linexpr_compare(LinExpr(1, 0), LinExpr(0, 5))
        assert greater.is_greater and greater.m0 == 6

    def test_final_reduction_degree(self) -> None:
        """Test the degree/multiplicity comparison ending a reduction"""
        verdict = linexpr_compare(LinExpr(16, -31), LinExpr(18, -3))
        assert verdict.is_less
        assert verdict.m0 == 1

    def test_eventually_positive(self) -> None:
        verdict = eventually_positive(LinExpr(1, -3))
        assert verdict.is_less and verdict.m0 == 4
        assert not eventually_positive(LinExpr(0, 0)).is_less

    def test_eventually_nonpositive(self) -> None:
        verdict = eventually_nonpositive(LinExpr(-2, 4))
        assert verdict.is_less and verdict.m0 == 2
        assert eventually_nonpositive(LinExpr(0, 0)).is_less
        assert not eventually_nonpositive(LinExpr(1, -100)).is_less


class TestRationals:
    """Test exact rational helpers"""

    def test_binomial(self) -> None:
        assert binomial(17, 5) == 6188
        assert binomial(5, 7) == 0
        assert binomial(-1, 0) == 0
        assert binomial(4, -1) == 0

    def test_parse_and_format(self) -> None:
        assert parse_rat("28/15") == Fraction(28, 15)
        assert parse_rat(" 3 ") == Fraction(3)
        assert format_rat(Fraction(4, 2)) == "2"
        assert format_rat(Fraction(491, 220)) == "491/220"

    @pytest.mark.parametrize("text", ["x", "1/0", ""])
    def test_parse_malformed(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_rat(text)

    def test_decimal(self) -> None:
        assert format_decimal(Fraction(25, 16)) == "1.5625"
        assert format_decimal(Fraction(5, 3)) == "1.6667"
        assert format_decimal(Fraction(2)) == "2.0000"
