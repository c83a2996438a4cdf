"""
Certificate Checker - Re-derives every step of a certificate file from scratch
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..core import LinExpr, format_rat, parse_rat
from ..demailly import (
    Status,
    containment_exponent,
    is_claimed,
    required_threshold,
)
from ..exceptions import CertificateError, ParseError, WaldschmidtError
from ..hilbert import PointMode, reg2_upper
from .rules import RULES, Bound, Conclusion, Empty, expand
from .serialize import CertificateFile, from_json

logger = logging.getLogger(__name__)


def format_conclusion(conclusion: Conclusion) -> str:
    if isinstance(conclusion, Bound):
        bound = format_rat(conclusion.bound)
        return f"ahat(P^{conclusion.N}, {conclusion.s}) >= {bound}"
    if isinstance(conclusion, Empty):
        mults = ", ".join(str(mult) for mult in conclusion.mults)
        return (
            f"I({mults})_{{{conclusion.degree}}} = 0 in P^{conclusion.N} "
            f"for m >= {conclusion.m0}"
        )
    return str(conclusion)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of checking one certificate file"""

    ok: bool
    conclusion: Optional[Conclusion] = None
    error: Optional[CertificateError] = None

    def __str__(self) -> str:
        if self.ok:
            assert self.conclusion is not None
            return f"OK: {format_conclusion(self.conclusion)}"
        assert self.error is not None
        where = ""
        if self.error.step_index is not None:
            where = f" at step {self.error.step_index}"
        return f"REJECTED ({self.error.kind}){where}: {self.error.reason}"


def _derive_steps(cert: CertificateFile) -> List[Conclusion]:
    if not cert.steps:
        raise CertificateError("Certificate has no steps", kind="structural")

    conclusions: List[Conclusion] = []
    for index, step in enumerate(cert.steps):
        for source in step.inputs:
            if not 0 <= source < index:
                raise CertificateError(
                    f"Input {source} does not precede step {index}",
                    step_index=index,
                    kind="structural",
                )
        checker = RULES.get(step.rule)
        if checker is None:
            raise CertificateError(
                f"Unknown rule '{step.rule}'", step_index=index, kind="structural"
            )
        try:
            conclusion = checker.check(
                step.params, [conclusions[i] for i in step.inputs]
            )
        except CertificateError as e:
            e.step_index = index
            raise
        logger.debug(f"Step {index} ({step.rule}): {conclusion}")
        conclusions.append(conclusion)
    return conclusions


def _mismatch(what: str, claimed: Any, derived: Any) -> CertificateError:
    return CertificateError(f"Claimed {what} {claimed} but the steps derive {derived}")


def _match_emptiness(claim: Dict[str, Any], final: Conclusion, m0: int) -> None:
    if not isinstance(final, Empty):
        raise _mismatch("emptiness", claim, final)
    degree = LinExpr.parse(claim["degree"])
    mults = expand(claim["mults"])
    if (claim["N"], degree, mults) != (final.N, final.degree, final.mults):
        raise _mismatch("system", claim, final)
    if m0 < final.m0:
        raise CertificateError(
            f"Certificate declares m0={m0} but its steps need m0={final.m0}"
        )


def _match_bound(claim: Dict[str, Any], final: Conclusion) -> Bound:
    if not isinstance(final, Bound):
        raise _mismatch("bound", claim, final)
    bound = parse_rat(claim["bound"] if "bound" in claim else claim["achieved"])
    if (claim["N"], claim["s"], bound) != (final.N, final.s, final.bound):
        raise _mismatch("bound", claim, final)
    return final


def _match_verdict(claim: Dict[str, Any], final: Conclusion) -> None:
    fact = _match_bound(claim, final)
    mode = PointMode.parse(claim["mode"])
    ell, required = required_threshold(fact.N, fact.s, mode)
    if claim["ell"] != ell or parse_rat(claim["required"]) != required:
        raise _mismatch("threshold", (claim["ell"], claim["required"]), (ell, required))

    if fact.bound >= required:
        status = Status.PROVEN
    elif is_claimed(fact.N, fact.s, mode):
        status = Status.DISCREPANCY
    else:
        status = Status.UNPROVEN
    if claim["status"] != status.value:
        raise _mismatch("status", claim["status"], status.value)

    r = None
    if status is Status.PROVEN and mode is PointMode.GENERAL:
        r = containment_exponent(fact.N, fact.bound, reg2_upper(fact.N, fact.s)[0])
    if claim.get("containment_r") != r:
        raise _mismatch("containment exponent", claim.get("containment_r"), r)


def check_certificate(cert: CertificateFile) -> CheckResult:
    """Replay every step and compare the last conclusion with the claim"""
    try:
        conclusions = _derive_steps(cert)
        final = conclusions[-1]
        try:
            if cert.kind == "emptiness":
                _match_emptiness(cert.claim, final, cert.m0)
            elif cert.kind == "bound":
                _match_bound(cert.claim, final)
            else:
                _match_verdict(cert.claim, final)
        except (KeyError, TypeError, ValueError, ParseError) as e:
            raise CertificateError(f"Malformed claim: {e}", kind="structural")
    except CertificateError as e:
        logger.warning(f"Certificate rejected: {e.reason}")
        return CheckResult(False, error=e)
    except WaldschmidtError as e:
        return CheckResult(False, error=CertificateError(str(e)))

    logger.info(f"Certificate accepted: {format_conclusion(final)}")
    return CheckResult(True, conclusion=final)


def check_text(text: str) -> CheckResult:
    try:
        cert = from_json(text)
    except ParseError as e:
        return CheckResult(False, error=CertificateError(str(e), kind="structural"))
    return check_certificate(cert)


def check_path(path: Union[str, Path]) -> CheckResult:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Certificate '{path}' not found")
    return check_text(path.read_text(encoding="utf-8"))

