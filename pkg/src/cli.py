#!/usr/bin/env python3
"""
Waldschmidt Bounds - certified Waldschmidt constant bounds and Demailly checks
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .bounds import Strategy, derive_bound, describe_route
from .certs import CertificateStore, check_path, dump
from .config import config, load_config_file
from .cremona import NotProven, SystemSpec, prove_empty
from .demailly import (
    SuiteReport,
    SuiteSpec,
    builtin_suite,
    custom_suite,
    run_suite,
    suite_names,
)
from .exceptions import ConfigError, WaldschmidtError
from .hilbert import PointMode, hf_double
from .oracle import (
    OracleReport,
    ah_crosscheck,
    system_dim,
    validate_cremona_rule,
    validate_store,
)
from .report import ReportRow, emit_report

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def parse_range(text: str) -> Tuple[int, int]:
    """``a..b`` or a single integer"""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise ConfigError(f"Expected a..b or an integer, got '{text}'")


def _store(args: argparse.Namespace) -> Optional[CertificateStore]:
    return CertificateStore(args.certs) if args.certs else None


def _emit(obj: object, path: Optional[Path], store: Optional[CertificateStore]) -> None:
    if path is None and store is None:
        return
    cert = dump(obj)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(cert.to_json(), encoding="utf-8")
        print(f"Wrote certificate: {path}")
    if store is not None:
        print(f"Stored certificate: {store.save(cert)}")


def cmd_bound(args: argparse.Namespace) -> int:
    strategy = Strategy.parse(args.strategy, args.depth)
    fact = derive_bound(args.N, args.points, strategy)
    print(fact)
    print(f"strategy: {strategy}")
    print(f"route: {describe_route(fact)}")
    tags = fact.tags()
    if tags:
        print("citations: " + "; ".join(tags))
    _emit(fact, args.emit, _store(args))
    return 0


def cmd_empty(args: argparse.Namespace) -> int:
    system = SystemSpec.parse(args.N, args.degree, args.mults)
    result = prove_empty(system, args.max_steps)
    if isinstance(result, NotProven):
        print(f"NOT PROVEN: {system} ({result.reason}, {result.steps_tried} steps)")
        return 1
    print(result)
    _emit(result, args.emit, _store(args))
    return 0


def _suite_from_args(args: argparse.Namespace) -> SuiteSpec:
    if args.suite:
        return builtin_suite(args.suite, args.n_min, args.n_max)
    if args.mode is None or args.N is None or args.s is None:
        raise ConfigError("demailly needs --suite, or all of --mode, --N and --s")
    lo, hi = parse_range(args.s)
    return custom_suite(PointMode.parse(args.mode), args.N, lo, hi)


def _run(args: argparse.Namespace, spec: SuiteSpec) -> SuiteReport:
    store = _store(args)
    return run_suite(
        spec,
        jobs=args.jobs,
        strategy=Strategy.parse(args.strategy, args.depth),
        sink=store.save if store is not None else None,
    )


def _write(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"Wrote report: {path}")


def cmd_demailly(args: argparse.Namespace) -> int:
    report = _run(args, _suite_from_args(args))
    for verdict in report.verdicts:
        if verdict.unexpected:
            print(f"{verdict} [{'; '.join(verdict.notes)}]")
    for row in report.lemmas:
        if row.unexpected:
            print(f"lemma {row.lemma.value} fails at N={row.N} ell={row.ell}")
    print(report.summary())

    if args.report is not None:
        text = emit_report(report.verdicts, args.format, report.lemmas, report.name)
        _write(text, args.report)
    return 0 if report.ok else 1


def cmd_hilbert(args: argparse.Namespace) -> int:
    value = hf_double(args.N, args.s, args.d)
    print(f"HF(N={args.N}, s={args.s}, d={args.d}) = {value}")
    if not args.oracle:
        return 0
    prime = None if args.prime in (None, "auto") else int(args.prime)
    result = system_dim(args.N, args.d, [2] * args.s, prime=prime)
    print(f"oracle: HF = {result.rank} ({result})")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    failed = 0
    for path in args.files:
        result = check_path(path)
        print(f"{path}: {result}")
        failed += not result.ok
    return 1 if failed else 0


def cmd_oracle_validate(args: argparse.Namespace) -> int:
    report: OracleReport
    if args.rule == "certs":
        if args.certs is None:
            raise ConfigError("--rule certs needs --certs DIR")
        report = validate_store(CertificateStore(args.certs), extra=args.extra)
    elif args.N is None:
        raise ConfigError(f"--rule {args.rule} needs --N")
    elif args.rule == "cremona":
        report = validate_cremona_rule(args.N, args.trials, d_max=args.d_max)
    else:
        report = ah_crosscheck(args.N, args.s_max, args.d_max or 6)
    for line in report.failures:
        print(f"FAILED: {line}")
    print(report.summary())
    return 0 if report.ok else 1


def cmd_report(args: argparse.Namespace) -> int:
    if args.suite:
        report = _run(args, builtin_suite(args.suite))
        text = emit_report(report.verdicts, args.format, report.lemmas, report.name)
        _write(text, args.out)
        return 0 if report.ok else 1

    store = CertificateStore(args.from_certs)
    rows: List[ReportRow] = []
    for certificate_id in store.ids():
        cert = store.load(certificate_id)
        if cert.kind == "verdict":
            rows.append(ReportRow.from_claim(cert.claim, certificate_id))
    logger.info(f"Read {len(rows)} verdict certificates from {args.from_certs}")
    _write(emit_report(rows, args.format, title=str(args.from_certs)), args.out)
    return 0


def _add_strategy(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--strategy", choices=["paper", "search"], default="paper")
    parser.add_argument("--depth", type=int, help="Search recursion depth")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waldschmidt",
        description="Certified Waldschmidt constant bounds for generic points",
    )
    parser.add_argument("--config", type=Path, help="key=value configuration file")
    parser.add_argument("--jobs", type=int, help="Worker processes for suites")
    parser.add_argument("--certs", type=Path, help="Certificate store directory")
    parser.add_argument("--seed", type=int, help="Oracle sampling seed")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v info, -vv debug"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="Best certified bound for ahat(P^N, s)")
    bound.add_argument("--N", type=int, required=True)
    bound.add_argument("--points", type=int, required=True)
    bound.add_argument("--emit", type=Path, help="Write the certificate here")
    _add_strategy(bound)
    bound.set_defaults(handler=cmd_bound)

    empty = sub.add_parser("empty", help="Prove a linear system empty by reduction")
    empty.add_argument("--N", type=int, required=True)
    empty.add_argument("--degree", required=True, help='e.g. "36m-1"')
    empty.add_argument("--mults", required=True, help='e.g. "20m x9, 30m x1"')
    empty.add_argument("--max-steps", type=int)
    empty.add_argument("--emit", type=Path, help="Write the certificate here")
    empty.set_defaults(handler=cmd_empty)

    demailly = sub.add_parser("demailly", help="Verify Demailly's bound at m=2")
    demailly.add_argument("--suite", choices=suite_names())
    demailly.add_argument("--n-min", type=int, help="Smallest N for ranged suites")
    demailly.add_argument("--n-max", type=int, help="Largest N for ranged suites")
    demailly.add_argument("--mode", choices=[mode.value for mode in PointMode])
    demailly.add_argument("--N", type=int)
    demailly.add_argument("--s", help="Point range a..b")
    demailly.add_argument("--report", type=Path, help="Write a report here")
    demailly.add_argument("--format", choices=["md", "tsv"], default="md")
    _add_strategy(demailly)
    demailly.set_defaults(handler=cmd_demailly)

    hilbert = sub.add_parser("hilbert", help="Hilbert function of double points")
    hilbert.add_argument("--N", type=int, required=True)
    hilbert.add_argument("--s", type=int, required=True)
    hilbert.add_argument("--d", type=int, required=True)
    hilbert.add_argument("--oracle", action="store_true", help="Sample the rank too")
    hilbert.add_argument("--prime", help="Oracle modulus or 'auto'")
    hilbert.set_defaults(handler=cmd_hilbert)

    check = sub.add_parser("check", help="Re-validate certificate files")
    check.add_argument("files", type=Path, nargs="+")
    check.set_defaults(handler=cmd_check)

    validate = sub.add_parser("oracle-validate", help="Cross-check rules by sampling")
    validate.add_argument("--rule", choices=["cremona", "ah", "certs"], required=True)
    validate.add_argument("--N", type=int)
    validate.add_argument("--trials", type=int, default=100)
    validate.add_argument("--d-max", type=int)
    validate.add_argument("--s-max", type=int, default=15)
    validate.add_argument("--extra", type=int, default=1, help="Extra m per claim")
    validate.set_defaults(handler=cmd_oracle_validate)

    report = sub.add_parser("report", help="Render verdicts as a table")
    source = report.add_mutually_exclusive_group(required=True)
    source.add_argument("--suite", choices=suite_names())
    source.add_argument("--from-certs", type=Path)
    report.add_argument("--format", choices=["md", "tsv"], default="md")
    report.add_argument("--out", type=Path)
    _add_strategy(report)
    report.set_defaults(handler=cmd_report)
    return parser


def _configure(args: argparse.Namespace) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT)

    if args.config is not None:
        config.adopt(load_config_file(args.config))
    overrides: Dict[str, int] = {}
    if args.seed is not None:
        overrides["DEFAULT_SEED"] = args.seed
    if args.jobs is not None:
        if args.jobs < 1:
            raise ConfigError(f"--jobs must be at least 1, got {args.jobs}")
        overrides["JOBS"] = args.jobs
    if overrides:
        config.adopt(config.with_overrides(**overrides))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        _configure(args)
        return int(args.handler(args))
    except (WaldschmidtError, FileNotFoundError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
