"""
Report generation - markdown and tab-separated tables of verdicts
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from .core import format_rat
from .demailly import LemmaRow, Verdict
from .exceptions import ConfigError

FORMATS = ("md", "tsv")

COLUMNS = (
    "N",
    "s",
    "ℓ",
    "required",
    "achieved",
    "status",
    "r",
    "certificate",
    "route",
)
LEMMA_COLUMNS = ("lemma", "N", "ℓ", "holds", "in range")


@dataclass(frozen=True)
class ReportRow:
    """One verdict flattened to display strings"""

    N: int
    s: int
    mode: str
    ell: int
    required: str
    achieved: str
    status: str
    containment_r: Optional[int]
    certificate: str
    route: str

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "ReportRow":
        return cls(
            verdict.N,
            verdict.s,
            verdict.mode.value,
            verdict.ell,
            format_rat(verdict.required),
            format_rat(verdict.achieved.bound),
            verdict.status.value,
            verdict.containment_r,
            verdict.certificate or "",
            verdict.route,
        )

    @classmethod
    def from_claim(cls, claim: Dict[str, Any], certificate: str = "") -> "ReportRow":
        """Row for the claim of a stored verdict certificate"""
        return cls(
            claim["N"],
            claim["s"],
            claim["mode"],
            claim["ell"],
            claim["required"],
            claim["achieved"],
            claim["status"],
            claim.get("containment_r"),
            certificate,
            claim.get("route", ""),
        )

    def cells(self) -> List[str]:
        r = "-" if self.containment_r is None else str(self.containment_r)
        return [
            str(self.N),
            str(self.s),
            str(self.ell),
            self.required,
            self.achieved,
            self.status,
            r,
            self.certificate or "-",
            self.route,
        ]


def _lemma_cells(row: LemmaRow) -> List[str]:
    return [
        row.lemma.value,
        str(row.N),
        "-" if row.ell is None else str(row.ell),
        "yes" if row.holds else "no",
        "yes" if row.in_range else "no",
    ]


def _table(header: Sequence[str], body: Iterable[List[str]], fmt: str) -> List[str]:
    if fmt == "tsv":
        return ["\t".join(header)] + ["\t".join(cells) for cells in body]
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    lines.extend("| " + " | ".join(cells) + " |" for cells in body)
    return lines


def emit_report(
    verdicts: Iterable[Union[Verdict, ReportRow]],
    fmt: str = "md",
    lemmas: Sequence[LemmaRow] = (),
    title: Optional[str] = None,
) -> str:
    """Deterministic table of verdicts sorted by (N, s), then any lemma rows"""
    if fmt not in FORMATS:
        raise ConfigError(f"Unknown report format '{fmt}' (choose md or tsv)")

    rows = [
        row if isinstance(row, ReportRow) else ReportRow.from_verdict(row)
        for row in verdicts
    ]
    rows.sort(key=lambda row: (row.N, row.s, row.mode))

    lines: List[str] = []
    if title and fmt == "md":
        lines.extend([f"# {title}", ""])
    lines.extend(_table(COLUMNS, (row.cells() for row in rows), fmt))

    if lemmas:
        ordered = sorted(lemmas, key=lambda r: (r.lemma.value, r.N, r.ell or 0))
        lines.append("")
        if fmt == "md":
            lines.extend(["## Binomial lemmas", ""])
        lines.extend(_table(LEMMA_COLUMNS, map(_lemma_cells, ordered), fmt))
    return "\n".join(lines) + "\n"
