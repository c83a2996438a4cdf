"""
Imported Waldschmidt-constant facts.

This is the only place where a bound enters without being derived. Each axiom
is encoded for exactly the instances the derivations use; widening a table
means importing a statement nobody has checked here.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Tuple

import gmpy2

from .. import citations
from ..core import format_rat
from ..facts import BoundFact, Derivation

Instance = Tuple[int, Fraction]


def _exact_values(N: int, s_max: int) -> Iterator[Instance]:
    # s = k^N points in a grid: ahat = k
    k_max = int(gmpy2.iroot(s_max, N)[0]) if s_max >= 1 else 0
    for k in range(1, k_max + 1):
        yield k**N, Fraction(k)


def _coordinate_simplex(N: int, s_max: int) -> Iterator[Instance]:
    if N + 1 <= s_max:
        yield N + 1, Fraction(N + 1, N)


def _n_plus_two(N: int, s_max: int) -> Iterator[Instance]:
    if N + 2 <= s_max:
        yield N + 2, Fraction(N + 2, N)


def _n_plus_three(N: int, s_max: int) -> Iterator[Instance]:
    if N + 3 <= s_max:
        yield N + 3, Fraction(N + 2, N)


_P3_TABLE: Dict[int, Fraction] = {
    7: Fraction(28, 15),
    14: Fraction(7, 3),
    21: Fraction(8, 3),
}

_P4_TABLE: Dict[int, Fraction] = {8: Fraction(8, 5)}


def _table(
    dimension: int, table: Dict[int, Fraction]
) -> Callable[[int, int], Iterator[Instance]]:
    def instances(N: int, s_max: int) -> Iterator[Instance]:
        if N != dimension:
            return
        for s, bound in sorted(table.items()):
            if s <= s_max:
                yield s, bound

    return instances


@dataclass(frozen=True)
class Axiom:
    """A family of imported facts, keyed by the name certificates cite"""

    name: str
    source: str
    instances: Callable[[int, int], Iterator[Instance]]

    def holds(self, N: int, s: int, bound: Fraction) -> bool:
        return (s, bound) in set(self.instances(N, s))


AXIOMS: Tuple[Axiom, ...] = (
    Axiom("exact-grid", citations.GRID_SPECIALIZATION, _exact_values),
    Axiom("coordinate-simplex", citations.STAR_CONFIGURATION, _coordinate_simplex),
    Axiom("n-plus-two", citations.N_PLUS_TWO_POINTS, _n_plus_two),
    Axiom("n-plus-three", citations.N_PLUS_THREE_POINTS, _n_plus_three),
    Axiom("p3-table", citations.P3_GENERIC_POINTS, _table(3, _P3_TABLE)),
    Axiom("p4-table", citations.P4_EIGHT_POINTS, _table(4, _P4_TABLE)),
)

AXIOMS_BY_NAME: Dict[str, Axiom] = {axiom.name: axiom for axiom in AXIOMS}


def axiom_fact(axiom: Axiom, N: int, s: int, bound: Fraction) -> BoundFact:
    derivation = Derivation(
        "axiom",
        {"name": axiom.name, "N": N, "s": s, "bound": format_rat(bound)},
        (),
        (axiom.source,),
    )
    return BoundFact(N, s, bound, derivation)


def kb_axioms(N: int, s: int) -> List[BoundFact]:
    """Every axiom instance at (N, s') with s' <= s, in table order"""
    facts: List[BoundFact] = []
    for axiom in AXIOMS:
        for s_prime, bound in axiom.instances(N, s):
            facts.append(axiom_fact(axiom, N, s_prime, bound))
    return facts
