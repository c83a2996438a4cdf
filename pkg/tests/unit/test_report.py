"""Tests for verdict report tables"""

import pytest

from src.demailly import BinomialLemma, LemmaRow, verify_case
from src.exceptions import ConfigError
from src.hilbert import PointMode
from src.report import COLUMNS, ReportRow, emit_report

G = PointMode.GENERAL


class TestReportRow:
    """Test flattening verdicts into cells"""

    def test_from_verdict(self) -> None:
        row = ReportRow.from_verdict(verify_case(5, 22, G))

        assert row.cells() == [
            "5",
            "22",
            "4",
            "5/3",
            "5/3",
            "PROVEN",
            "-",
            "-",
            "decomposition k=1",
        ]

    def test_containment_exponent_cell(self) -> None:
        row = ReportRow.from_verdict(verify_case(5, 8, G))
        assert row.cells()[6] == "14"

    def test_from_claim(self) -> None:
        claim = {
            "N": 3,
            "s": 6,
            "mode": "general",
            "ell": 2,
            "required": "7/4",
            "achieved": "5/3",
            "status": "DISCREPANCY",
            "containment_r": None,
        }
        row = ReportRow.from_claim(claim, "abcdef0123456789")

        assert row.route == ""
        assert row.cells()[7] == "abcdef0123456789"


class TestEmitReport:
    """Test markdown and tab-separated output"""

    def test_empty_markdown(self) -> None:
        text = emit_report([])
        lines = text.splitlines()

        assert len(lines) == 2
        assert lines[0] == "| " + " | ".join(COLUMNS) + " |"
        assert lines[1] == "|---|---|---|---|---|---|---|---|---|"
        assert text.endswith("\n")

    def test_empty_tsv(self) -> None:
        assert emit_report([], fmt="tsv") == "\t".join(COLUMNS) + "\n"

    def test_rows_sorted_by_dimension_then_points(self) -> None:
        verdicts = [verify_case(5, 22, G), verify_case(4, 14, G), verify_case(5, 8, G)]

        lines = emit_report(verdicts, fmt="tsv").splitlines()

        assert [line.split("\t")[:2] for line in lines[1:]] == [
            ["4", "14"],
            ["5", "8"],
            ["5", "22"],
        ]

    def test_deterministic(self) -> None:
        verdicts = [verify_case(5, s, G) for s in (8, 9, 22)]
        assert emit_report(verdicts) == emit_report(list(reversed(verdicts)))

    def test_title_only_in_markdown(self) -> None:
        assert emit_report([], title="p5").startswith("# p5\n\n| N |")
        assert emit_report([], fmt="tsv", title="p5").startswith("N\t")

    def test_lemma_table(self) -> None:
        lemmas = [
            LemmaRow(BinomialLemma.TWO_POWER, 5, None, True, True),
            LemmaRow(BinomialLemma.TWO_POWER, 4, None, False, False),
        ]

        text = emit_report([], lemmas=lemmas)

        assert "## Binomial lemmas" in text
        assert "| two-power | 4 | - | no | no |" in text
        assert text.index("| two-power | 4 |") < text.index("| two-power | 5 |")

    def test_unknown_format(self) -> None:
        with pytest.raises(ConfigError, match="Unknown report format"):
            emit_report([], fmt="html")
