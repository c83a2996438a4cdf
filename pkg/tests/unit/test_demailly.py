"""Tests for the Demailly verifier at m=2"""

from fractions import Fraction
from typing import Optional

import pytest

from src.demailly import (
    EQUALITY_NOTE,
    BinomialLemma,
    Status,
    builtin_suite,
    check_binomial_lemmas,
    containment_exponent,
    custom_suite,
    is_claimed,
    large_ell_surplus,
    lemma_rows,
    required_threshold,
    run_suite,
    suite_names,
    verify_case,
)
from src.exceptions import ConfigError, PreconditionError
from src.hilbert import PointMode

G = PointMode.GENERAL
VG = PointMode.VERY_GENERAL


class TestThresholds:
    """Test the required value and the containment exponent"""

    def test_required_threshold(self) -> None:
        assert required_threshold(5, 12, G) == (3, Fraction(3, 2))
        assert required_threshold(5, 22, G)[1] == Fraction(5, 3)

    def test_required_threshold_needs_points(self) -> None:
        with pytest.raises(PreconditionError):
            required_threshold(4, 0, G)

    @pytest.mark.parametrize(
        "N,ahat,reg,expected",
        [
            (3, Fraction(28, 15), 5, 8),
            (5, Fraction(25, 16), 4, 5),
            (5, Fraction(7, 5), 4, 14),
            (3, Fraction(7, 4), 5, None),
        ],
    )
    def test_containment_exponent(
        self, N: int, ahat: Fraction, reg: int, expected: Optional[int]
    ) -> None:
        assert containment_exponent(N, ahat, reg) == expected

    def test_containment_exponent_needs_positive_bound(self) -> None:
        with pytest.raises(PreconditionError):
            containment_exponent(3, Fraction(0), 4)


class TestVerifyCase:
    """Test single verdicts"""

    def test_open_case(self) -> None:
        verdict = verify_case(5, 12, G)

        assert verdict.status is Status.UNPROVEN
        assert verdict.ell == 3
        assert verdict.required == Fraction(3, 2)
        assert verdict.achieved.bound == Fraction(7, 5)
        assert "known open case" in verdict.notes
        assert verdict.expected_open
        assert not verdict.unexpected

    def test_equality_case(self) -> None:
        verdict = verify_case(5, 22, G)

        assert verdict.status is Status.PROVEN
        assert verdict.required == verdict.achieved.bound == Fraction(5, 3)
        assert verdict.containment_r is None
        assert EQUALITY_NOTE in verdict.notes
        assert verdict.route == "decomposition k=1"

    @pytest.mark.parametrize("N,s,r", [(5, 8, 14), (3, 7, 8)])
    def test_proven_with_exponent(self, N: int, s: int, r: int) -> None:
        verdict = verify_case(N, s, G)
        assert verdict.status is Status.PROVEN
        assert verdict.containment_r == r

    @pytest.mark.parametrize("N,s", [(3, 6), (4, 14)])
    def test_discrepancies(self, N: int, s: int) -> None:
        verdict = verify_case(N, s, G)
        assert verdict.status is Status.DISCREPANCY
        assert verdict.unexpected
        assert "DISCREPANCY" in str(verdict)

    def test_very_general_mode(self) -> None:
        verdict = verify_case(3, 6, VG)
        assert verdict.status is Status.PROVEN
        assert verdict.containment_r is None

    def test_needs_three_dimensions(self) -> None:
        with pytest.raises(PreconditionError):
            verify_case(2, 5, G)

    def test_claimed_ranges(self) -> None:
        assert is_claimed(5, 9, G)
        assert not is_claimed(5, 10, G)
        assert is_claimed(4, 625, G)
        assert not is_claimed(4, 626, G)
        assert is_claimed(6, 64, VG)
        assert not is_claimed(6, 65, VG)


class TestBinomialLemmas:
    """Test the binomial inequalities and their ranges"""

    @pytest.mark.parametrize(
        "lemma,N,expected",
        [
            (BinomialLemma.FOUR_POWER, 5, True),
            (BinomialLemma.FOUR_POWER, 4, False),
            (BinomialLemma.THREE_POWER_TIGHT, 10, False),
            (BinomialLemma.THREE_POWER_TIGHT, 11, True),
            (BinomialLemma.THREE_POWER, 6, False),
            (BinomialLemma.THREE_POWER, 7, True),
            (BinomialLemma.TWO_POWER, 4, False),
            (BinomialLemma.TWO_POWER, 5, True),
        ],
    )
    def test_power_lemmas(self, lemma: BinomialLemma, N: int, expected: bool) -> None:
        assert check_binomial_lemmas(lemma, N) is expected

    def test_ell_lemmas(self) -> None:
        assert check_binomial_lemmas(BinomialLemma.SMALL_ELL, 6, 4)
        assert check_binomial_lemmas(BinomialLemma.LARGE_ELL, 6, 5)
        assert large_ell_surplus(6, 5) == 3

    def test_ell_lemma_needs_ell(self) -> None:
        with pytest.raises(PreconditionError):
            check_binomial_lemmas(BinomialLemma.SMALL_ELL, 6)

    def test_rows_hold_in_range(self) -> None:
        rows = lemma_rows(12)

        assert rows
        assert not any(row.unexpected for row in rows)
        failing = {(row.lemma, row.N) for row in rows if not row.holds}
        assert (BinomialLemma.THREE_POWER_TIGHT, 10) in failing

    def test_parse(self) -> None:
        assert BinomialLemma.parse("Two-Power") is BinomialLemma.TWO_POWER
        with pytest.raises(ConfigError):
            BinomialLemma.parse("five-power")


class TestSuites:
    """Test suite construction and batch runs"""

    def test_builtin_suites(self) -> None:
        assert len(builtin_suite("p3").cases) == 211
        very_general = builtin_suite("very-general", 5, 5)
        assert very_general.mode is VG
        assert very_general.cases[0] == (5, 8)
        assert len(very_general.cases) == 25
        assert builtin_suite("lemmas", n_max=12).lemma_n_max == 12

    @pytest.mark.parametrize(
        "alias,name",
        [
            ("thm3.2", "very-general"),
            ("thm4.4", "many-points"),
            ("thm5.1", "p3"),
            ("thm5.2", "p4"),
            ("thm5.3", "p5"),
        ],
    )
    def test_descriptor_aliases(self, alias: str, name: str) -> None:
        assert builtin_suite(alias) == builtin_suite(name)
        assert alias in suite_names()

    def test_unknown_suite(self) -> None:
        with pytest.raises(ConfigError, match="Unknown suite"):
            builtin_suite("p9")

    def test_custom_suite_range(self) -> None:
        with pytest.raises(ConfigError):
            custom_suite(G, 5, 13, 8)

    def test_run_custom_suite(self) -> None:
        report = run_suite(custom_suite(G, 5, 8, 13))

        assert [v.s for v in report.verdicts] == list(range(8, 14))
        assert report.counts == {"PROVEN": 2, "UNPROVEN": 4, "DISCREPANCY": 0}
        assert report.ok
        assert report.summary() == "custom: PROVEN: 2, UNPROVEN: 4, DISCREPANCY: 0"

    def test_run_in_worker_processes(self) -> None:
        serial = run_suite(custom_suite(G, 5, 8, 13))
        parallel = run_suite(custom_suite(G, 5, 8, 13), jobs=2)

        assert [(v.s, v.status) for v in parallel.verdicts] == [
            (v.s, v.status) for v in serial.verdicts
        ]

    def test_sink_records_certificate_ids(self) -> None:
        report = run_suite(custom_suite(G, 5, 8, 9), sink=lambda v: f"id-{v.s}")
        assert [v.certificate for v in report.verdicts] == ["id-8", "id-9"]

    def test_discrepancy_fails_report(self) -> None:
        report = run_suite(custom_suite(G, 3, 6, 7))
        assert report.counts["DISCREPANCY"] == 1
        assert not report.ok

    def test_lemma_suite(self) -> None:
        report = run_suite(builtin_suite("lemmas", n_max=12))
        assert not report.verdicts
        assert report.ok
        assert "lemma rows" in report.summary()
