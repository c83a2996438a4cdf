"""Tests for the Hilbert function of double points and derived degree bounds"""

import pytest

from src.exceptions import PreconditionError
from src.hilbert import (
    PointMode,
    alpha2_upper,
    ell_bracket,
    hf_double,
    is_exceptional,
    reg2_upper,
)


class TestExceptions:
    """Test the Alexander-Hirschowitz exception list"""

    @pytest.mark.parametrize(
        "N, s, d",
        [(2, 2, 2), (4, 3, 2), (4, 7, 3), (2, 5, 4), (3, 9, 4), (4, 14, 4)],
    )
    def test_exceptional(self, N: int, s: int, d: int) -> None:
        assert is_exceptional(N, s, d)

    @pytest.mark.parametrize(
        "N, s, d", [(3, 6, 4), (2, 1, 2), (4, 5, 2), (5, 7, 3), (5, 20, 4)]
    )
    def test_not_exceptional(self, N: int, s: int, d: int) -> None:
        assert not is_exceptional(N, s, d)


class TestHilbertFunction:
    """Test hf_double"""

    def test_expected_value(self) -> None:
        """Test the minimum of monomial count and condition count"""
        assert hf_double(3, 6, 4).value == 24
        assert hf_double(3, 6, 2).value == 10
        assert hf_double(2, 3, 3).value == 9

    def test_exceptional_value(self) -> None:
        value = hf_double(4, 7, 3)
        assert value.exceptional
        assert str(value) == "EXCEPTIONAL (use --oracle)"

    def test_invalid_arguments(self) -> None:
        with pytest.raises(PreconditionError):
            hf_double(0, 1, 1)
        with pytest.raises(PreconditionError):
            hf_double(2, 3, -1)


class TestDegreeBounds:
    """Test alpha2_upper, reg2_upper and the ell bracket"""

    def test_alpha2_upper(self) -> None:
        assert alpha2_upper(3, 6) == (4, True)
        assert alpha2_upper(5, 8) == (3, True)

    def test_alpha2_upper_flags_exception(self) -> None:
        """Test that an exception at or below the bound is reported"""
        _, sharp = alpha2_upper(4, 14)
        assert not sharp

    def test_reg2_upper(self) -> None:
        assert reg2_upper(3, 6) == (5, False)
        assert reg2_upper(5, 8) == (4, False)
        assert reg2_upper(5, 22) == (6, False)

    def test_reg2_upper_skips_exceptional_degree(self) -> None:
        """Test that 14 double points in P^4 push the bound from 5 to 6"""
        assert reg2_upper(4, 14) == (6, True)

    @pytest.mark.parametrize(
        "N, s, mode, ell",
        [
            (3, 6, PointMode.GENERAL, 3),
            (3, 6, PointMode.VERY_GENERAL, 3),
            (5, 8, PointMode.GENERAL, 2),
            (4, 14, PointMode.GENERAL, 3),
            (5, 22, PointMode.GENERAL, 4),
        ],
    )
    def test_ell_bracket(self, N: int, s: int, mode: PointMode, ell: int) -> None:
        assert ell_bracket(N, s, mode).ell == ell

    def test_bracket_boundary_depends_on_mode(self) -> None:
        """Test that (N+1)s = C(N+ell+1, N) falls on different sides per mode"""
        assert ell_bracket(3, 5, PointMode.GENERAL).ell == 2
        assert ell_bracket(3, 5, PointMode.VERY_GENERAL).ell == 3


class TestPointMode:
    def test_parse(self) -> None:
        assert PointMode.parse("general") is PointMode.GENERAL
        assert PointMode.parse("Very_General") is PointMode.VERY_GENERAL

    def test_parse_unknown(self) -> None:
        with pytest.raises(ValueError):
            PointMode.parse("special")
