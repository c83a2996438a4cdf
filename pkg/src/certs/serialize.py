"""
Certificate files: a JSON document whose steps form a DAG by index
"""

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..config import config
from ..core import format_rat
from ..cremona.certificate import (
    AxiomLeaf,
    ClampStep,
    ContradictionStep,
    CremonaStep,
    EmptinessCertificate,
    GlueStep,
)
from ..cremona.system import SystemSpec, format_mults
from ..demailly import Verdict
from ..exceptions import ParseError
from ..facts import BoundFact

KINDS = ("emptiness", "bound", "verdict")


@dataclass
class StepRecord:
    rule: str
    params: Dict[str, Any] = field(default_factory=dict)
    inputs: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"rule": self.rule, "params": self.params, "inputs": self.inputs}


@dataclass
class CertificateFile:
    """Top-level certificate document (format version 1)"""

    kind: str
    claim: Dict[str, Any]
    steps: List[StepRecord]
    m0: int = 1
    tags: List[str] = field(default_factory=list)
    version: int = 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "kind": self.kind,
            "claim": self.claim,
            "steps": [step.to_dict() for step in self.steps],
            "m0": self.m0,
            "tags": self.tags,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @property
    def certificate_id(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()[:16]


def _require(data: Dict[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in data:
        raise ParseError(f"{where}: missing '{key}'")
    value = data[key]
    # bool is an int subclass and never a valid count or index
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ParseError(f"{where}: '{key}' must be {kind.__name__}")
    return value


def from_json(text: str) -> CertificateFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Certificate is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ParseError("Certificate must be a JSON object")

    version = _require(data, "version", int, "certificate")
    if version != config.CERT_VERSION:
        raise ParseError(f"Unsupported certificate version {version}")
    kind = _require(data, "kind", str, "certificate")
    if kind not in KINDS:
        raise ParseError(f"Unknown certificate kind '{kind}'")

    steps: List[StepRecord] = []
    for index, raw in enumerate(_require(data, "steps", list, "certificate")):
        where = f"step {index}"
        if not isinstance(raw, dict):
            raise ParseError(f"{where}: must be an object")
        inputs = _require(raw, "inputs", list, where)
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in inputs):
            raise ParseError(f"{where}: inputs must be step indices")
        steps.append(
            StepRecord(
                _require(raw, "rule", str, where),
                _require(raw, "params", dict, where),
                inputs,
            )
        )

    tags = _require(data, "tags", list, "certificate")
    return CertificateFile(
        kind=kind,
        claim=_require(data, "claim", dict, "certificate"),
        steps=steps,
        m0=_require(data, "m0", int, "certificate"),
        tags=[str(tag) for tag in tags],
        version=version,
    )


def system_claim(system: SystemSpec) -> Dict[str, Any]:
    return {
        "N": system.N,
        "degree": str(system.degree),
        "mults": format_mults(system.mults),
    }


def bound_claim(fact: BoundFact) -> Dict[str, Any]:
    return {"N": fact.N, "s": fact.s, "bound": format_rat(fact.bound)}


class _Flattener:
    """Post-order walk assigning each shared node one step index"""

    def __init__(self) -> None:
        self.steps: List[StepRecord] = []
        self.seen: Dict[int, int] = {}
        self.max_m0 = 1
        self.tags: Dict[str, None] = {}

    def _emit(self, record: StepRecord) -> int:
        self.steps.append(record)
        return len(self.steps) - 1

    def fact(self, fact: BoundFact) -> int:
        if id(fact) in self.seen:
            return self.seen[id(fact)]
        derivation = fact.derivation
        if derivation is None:
            raise ParseError(f"Cannot serialize uncertified fact {fact}")

        inputs: List[int] = []
        for child in derivation.inputs:
            if isinstance(child, BoundFact):
                inputs.append(self.fact(child))
            else:
                inputs.append(self.emptiness(child))
        for tag in derivation.tags:
            self.tags.setdefault(tag, None)

        record = StepRecord(derivation.rule, dict(derivation.params), inputs)
        index = self._emit(record)
        self.seen[id(fact)] = index
        return index

    def emptiness(self, cert: EmptinessCertificate) -> int:
        if id(cert) in self.seen:
            return self.seen[id(cert)]
        self.max_m0 = max(self.max_m0, cert.m0)

        first = cert.steps[0]
        if isinstance(first, AxiomLeaf):
            source = self.fact(first.fact)
            index = self._emit(
                StepRecord("empty-from-bound", {"p": first.p, "q": first.q}, [source])
            )
        elif isinstance(first, GlueStep):
            left = self.emptiness(first.left)
            right = self.emptiness(first.right)
            record = StepRecord("glue", {"joint": first.joint}, [left, right])
            index = self._emit(record)
        else:
            index = self._emit(StepRecord("open", system_claim(cert.claim), []))
            for step in cert.steps:
                index = self._emit(self._reduction_step(step, index))

        self.seen[id(cert)] = index
        return index

    @staticmethod
    def _reduction_step(step: Any, previous: int) -> StepRecord:
        if isinstance(step, CremonaStep):
            params = {
                "selection": list(step.selection),
                "k": str(step.k),
                "m0": step.m0,
            }
            return StepRecord("cremona", params, [previous])
        if isinstance(step, ClampStep):
            return StepRecord(
                "clamp", {"dropped": list(step.dropped), "m0": step.m0}, [previous]
            )
        if isinstance(step, ContradictionStep):
            witness = "negative-degree" if step.witness is None else step.witness
            return StepRecord(
                "contradiction", {"witness": witness, "m0": step.m0}, [previous]
            )
        raise ParseError(f"Unexpected reduction step {step!r}")


def dump_emptiness(cert: EmptinessCertificate) -> CertificateFile:
    flat = _Flattener()
    flat.emptiness(cert)
    return CertificateFile(
        "emptiness", system_claim(cert.claim), flat.steps, cert.m0, list(flat.tags)
    )


def dump_fact(fact: BoundFact) -> CertificateFile:
    flat = _Flattener()
    flat.fact(fact)
    return CertificateFile(
        "bound", bound_claim(fact), flat.steps, flat.max_m0, list(flat.tags)
    )


def verdict_claim(verdict: Verdict) -> Dict[str, Any]:
    return {
        "N": verdict.N,
        "s": verdict.s,
        "mode": verdict.mode.value,
        "ell": verdict.ell,
        "required": format_rat(verdict.required),
        "achieved": format_rat(verdict.achieved.bound),
        "status": verdict.status.value,
        "containment_r": verdict.containment_r,
        "route": verdict.route,
        "notes": list(verdict.notes),
    }


def dump_verdict(verdict: Verdict) -> CertificateFile:
    flat = _Flattener()
    flat.fact(verdict.achieved)
    return CertificateFile(
        "verdict", verdict_claim(verdict), flat.steps, flat.max_m0, list(flat.tags)
    )


def dump(obj: Any) -> CertificateFile:
    """Certificate file for a fact, an emptiness certificate or a verdict"""
    if isinstance(obj, Verdict):
        return dump_verdict(obj)
    if isinstance(obj, EmptinessCertificate):
        return dump_emptiness(obj)
    if isinstance(obj, BoundFact):
        return dump_fact(obj)
    raise ParseError(f"Cannot serialize {type(obj).__name__}")
