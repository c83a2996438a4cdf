"""
Finite-field oracle - dimension of linear systems with assigned base points
via the rank of an interpolation matrix over F_p.

Full column rank at one sample of points is a proof of generic emptiness:
the matrix has integer entries, so full rank mod p forces full rank over Q.
A positive sampled dimension is only evidence.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import gmpy2
import numpy as np

from .certs import CertificateStore, check_certificate
from .config import config
from .core import LinExpr, binomial
from .cremona.certificate import EmptinessCertificate
from .cremona.engine import apply_reduction, homogeneous_pattern, homogeneous_system
from .cremona.system import SystemSpec
from .exceptions import OracleError, ParseError, PreconditionError, WaldschmidtError
from .hilbert import hf_double

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    N: int
    d: int
    mults: Tuple[int, ...]
    columns: int
    conditions: int
    rank: int
    prime: int
    seed: int

    @property
    def dim_at_sample(self) -> int:
        return self.columns - self.rank

    @property
    def certified_empty(self) -> bool:
        return self.rank == self.columns

    def __str__(self) -> str:
        verdict = "certified empty" if self.certified_empty else "not certified"
        return (
            f"N={self.N} d={self.d} mults={list(self.mults)}: columns {self.columns}, "
            f"conditions {self.conditions}, rank {self.rank}, "
            f"dim {self.dim_at_sample} ({verdict})"
        )


def exponents(n_vars: int, max_degree: int) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors in n_vars variables with total degree <= max_degree"""
    if n_vars == 0:
        yield ()
        return
    for first in range(max_degree, -1, -1):
        for rest in exponents(n_vars - 1, max_degree - first):
            yield (first,) + rest


# below this modulus every product of two residues fits in int64
_INT64_PRIME_LIMIT = 1 << 31


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p by dense elimination; object dtype unless p < 2^31"""
    A = np.array(matrix, dtype=object) % p
    if p < _INT64_PRIME_LIMIT:
        A = A.astype(np.int64)
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(A[rank:, c] != 0)[0]
        if len(nonzero) == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            A[[rank, pivot], :] = A[[pivot, rank], :]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank, :] = (A[rank, :] * inv) % p
        factors = A[rank + 1 :, c].copy()
        A[rank + 1 :, :] = (A[rank + 1 :, :] - np.outer(factors, A[rank, :])) % p
        rank += 1
    return rank


def _check_prime(prime: int, d: int) -> None:
    if not gmpy2.is_prime(prime):
        raise OracleError(f"Modulus {prime} is not prime")
    if prime <= d:
        raise OracleError(f"Prime {prime} must exceed the degree {d}")


def interpolation_matrix(
    N: int, d: int, mults: Sequence[int], prime: int, seed: int
) -> np.ndarray:
    """Hasse-derivative conditions of order < m_i at random affine points"""
    monomials = np.array(list(exponents(N, d)), dtype=np.int64).reshape(-1, N)
    rng = np.random.default_rng(seed)
    binomials = np.array(
        [[binomial(e, b) % prime for b in range(d + 1)] for e in range(d + 1)],
        dtype=object,
    )

    rows: List[np.ndarray] = []
    for m in mults:
        point = [int(x) for x in rng.integers(0, prime, size=N, dtype=np.int64)]
        powers = [
            np.array([pow(x, k, prime) for k in range(d + 1)], dtype=object)
            for x in point
        ]
        for beta in exponents(N, m - 1):
            valid = np.all(monomials >= np.array(beta, dtype=np.int64), axis=1)
            row = np.zeros(len(monomials), dtype=object)
            if not valid.any():
                rows.append(row)
                continue
            entries = np.ones(int(valid.sum()), dtype=object)
            for i, b in enumerate(beta):
                e = monomials[valid, i]
                entries = entries * binomials[e, b] * powers[i][e - b] % prime
            row[valid] = entries
            rows.append(row)

    if not rows:
        return np.zeros((0, len(monomials)), dtype=object)
    return np.vstack(rows)


def system_dim(
    N: int,
    d: int,
    mults: Sequence[int],
    prime: Optional[int] = None,
    seed: Optional[int] = None,
    column_cap: Optional[int] = None,
) -> OracleResult:
    """Sampled dimension of I(mults)_d in P^N"""
    prime = config.DEFAULT_PRIME if prime is None else prime
    seed = config.DEFAULT_SEED if seed is None else seed
    column_cap = config.COLUMN_CAP if column_cap is None else column_cap

    if N < 1 or d < 0:
        raise OracleError(f"system_dim needs N >= 1 and d >= 0 (got {N}, {d})")
    if any(m < 1 for m in mults):
        raise OracleError(f"Multiplicities must be positive: {list(mults)}")
    _check_prime(prime, d)
    columns = binomial(d + N, N)
    if columns > column_cap:
        raise OracleError(f"{columns} columns exceed the cap of {column_cap}")

    conditions = sum(binomial(N + m - 1, N) for m in mults)
    matrix = interpolation_matrix(N, d, mults, prime, seed)
    logger.debug(f"Oracle matrix {matrix.shape} for N={N} d={d}")
    rank = rank_mod_p(matrix, prime) if len(matrix) else 0
    return OracleResult(N, d, tuple(mults), columns, conditions, rank, prime, seed)


def instance_of(system: SystemSpec, m: int) -> Tuple[int, List[int]]:
    """Concrete (degree, positive multiplicities) of a family at m"""
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    return system.instantiate(m)


def scaled_instance(claim: SystemSpec) -> SystemSpec:
    """I((q m)^s)_{p m - 1} with p and q divided by their gcd"""
    p, q = homogeneous_pattern(claim)
    g = math.gcd(p, q)
    return homogeneous_system(claim.N, claim.point_count, p // g, q // g)


@dataclass(frozen=True)
class InstanceCheck:
    m: int
    degree: int
    columns: int
    status: str  # "empty", "skipped" or "FAILED"


@dataclass
class OracleReport:
    """Rows produced by one validation run"""

    title: str
    rows: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return (
            f"{self.title}: {len(self.rows)} checked, {len(self.failures)} failed, "
            f"{self.skipped} skipped (size cap)"
        )


def check_instance(
    system: SystemSpec,
    m: int,
    prime: Optional[int] = None,
    seed: Optional[int] = None,
) -> InstanceCheck:
    degree, mults = instance_of(system, m)
    if degree < 0:
        return InstanceCheck(m, degree, 0, "empty")
    columns = binomial(degree + system.N, system.N)
    if columns > config.COLUMN_CAP:
        return InstanceCheck(m, degree, columns, "skipped")
    if not mults:
        return InstanceCheck(m, degree, columns, "FAILED")
    result = system_dim(system.N, degree, mults, prime, seed)
    return InstanceCheck(
        m, degree, columns, "empty" if result.certified_empty else "FAILED"
    )


def _check_claim(
    report: OracleReport,
    claim: SystemSpec,
    m0: int,
    extra: int,
    prime: Optional[int],
    seed: Optional[int],
) -> None:
    systems = [claim]
    try:
        scaled = scaled_instance(claim)
        if scaled != claim:
            systems.append(scaled)
    except PreconditionError:
        pass

    for system in systems:
        for m in range(m0, m0 + extra + 1):
            check = check_instance(system, m, prime, seed)
            line = f"{system} at m={m}: degree {check.degree}, {check.status}"
            if check.status == "skipped":
                report.skipped += 1
                logger.warning(f"Skipping {system} at m={m}: {check.columns} columns")
                continue
            report.rows.append(line)
            if check.status == "FAILED":
                report.failures.append(line)


def validate_certificate(
    cert: EmptinessCertificate,
    extra: int = 3,
    prime: Optional[int] = None,
    seed: Optional[int] = None,
) -> OracleReport:
    """Instantiate the claim at m0..m0+extra and ask the oracle about each"""
    report = OracleReport(f"instances of {cert.claim}")
    _check_claim(report, cert.claim, cert.m0, extra, prime, seed)
    return report


def validate_store(
    store: CertificateStore,
    extra: int = 1,
    prime: Optional[int] = None,
    seed: Optional[int] = None,
) -> OracleReport:
    """Re-check every stored certificate, then sample its emptiness claim

    Bound and verdict certificates only go through the checker; an emptiness
    claim is also instantiated at m0..m0+extra.
    """
    report = OracleReport(f"certificates in {store.directory}")
    for certificate_id in store.ids():
        try:
            cert = store.load(certificate_id)
        except ParseError as e:
            report.failures.append(f"{certificate_id}: {e}")
            continue
        result = check_certificate(cert)
        if not result.ok:
            report.failures.append(f"{certificate_id}: {result}")
            continue
        if cert.kind != "emptiness":
            report.rows.append(f"{certificate_id}: {result}")
            continue

        claim = cert.claim
        try:
            system = SystemSpec.parse(claim["N"], claim["degree"], claim["mults"])
        except WaldschmidtError as e:
            report.failures.append(f"{certificate_id}: unreadable claim: {e}")
            continue
        logger.info(f"Sampling {certificate_id}: {system} from m={cert.m0}")
        _check_claim(report, system, cert.m0, extra, prime, seed)
    return report


def ah_crosscheck(
    N_max: int = 4,
    s_max: int = 15,
    d_max: int = 6,
    prime: Optional[int] = None,
    seed: Optional[int] = None,
) -> OracleReport:
    """Compare hf_double with sampled ranks of s double points"""
    report = OracleReport(f"double points N<={N_max} s<={s_max} d<={d_max}")
    for N in range(2, N_max + 1):
        for s in range(1, s_max + 1):
            for d in range(0, d_max + 1):
                if binomial(d + N, N) > config.COLUMN_CAP:
                    report.skipped += 1
                    continue
                result = system_dim(N, d, [2] * s, prime, seed)
                expected = hf_double(N, s, d)
                naive = min(binomial(d + N, N), s * (N + 1))
                line = f"N={N} s={s} d={d}: HF {result.rank}, expected {expected}"
                report.rows.append(line)
                if expected.exceptional:
                    if result.rank >= naive:
                        report.failures.append(f"{line} (no defect detected)")
                elif result.rank != expected.value:
                    report.failures.append(line)
    return report


def validate_cremona_rule(
    N: int,
    trials: int = 100,
    seed: Optional[int] = None,
    d_max: Optional[int] = None,
    prime: Optional[int] = None,
) -> OracleReport:
    """Random one-step reductions: an empty reduced system needs an empty original"""
    if N not in (2, 3):
        raise PreconditionError(f"Cremona validation runs in P^2 or P^3, got P^{N}")
    seed = config.DEFAULT_SEED if seed is None else seed
    d_max = d_max or (10 if N == 2 else 8)
    rng = random.Random(seed)
    report = OracleReport(f"Cremona rule in P^{N}, {trials} trials")

    for trial in range(trials):
        d = rng.randint(1, d_max)
        count = rng.randint(N + 1, N + 4)
        mults = [rng.randint(1, d) for _ in range(count)]
        system = SystemSpec.of(N, LinExpr.constant(d), map(LinExpr.constant, mults))
        selection = sorted(rng.sample(range(count), N + 1))
        reduced = apply_reduction(system, selection).system

        degree, reduced_mults = reduced.instantiate(1)
        if degree < 0:
            reduced_empty = True
        elif not reduced_mults:
            reduced_empty = False
        else:
            reduced_empty = system_dim(
                N, degree, reduced_mults, prime, seed + trial
            ).certified_empty
        original = system_dim(N, d, mults, prime, seed + trial)

        line = f"I({mults})_{d} -> {reduced}: reduced empty {reduced_empty}"
        report.rows.append(line)
        if reduced_empty and not original.certified_empty:
            report.failures.append(f"{line}, original {original}")
    return report
