"""
Closed-form counts for FS(j,k) and the harness that checks them against
exhaustive enumeration.

Quantities compared per (j,k):
    mu, mu1, mu2_0, mu2_1      perfect matchings (all, type 1, type 2.0, 2.1)
    mu2prime, mu2prime_0/_1    type-2 matchings with a hamiltonian complement (even k >= 4)
    mu2prime_words             the same count taken from the block-word criterion
    jaeger                     Jaeger matchings
    recurrence                 mu1(j,k) against 2 mu1(j1,k-2) + mu1(j2,k-2) + mu1(j3,k-2) (k >= 4)
and, on request, chromatic index, 2-factor hamiltonicity and the Jaeger-graph
predicate.
"""
import logging
from typing import Dict, List, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict

from services.coloring import chromatic_index
from services.errors import FSError
from services.fs_family import FSGraph, build, reduction_triple, validate_parameters
from services.jaeger import jaeger_decompose
from services.matchings import MatchingType, enumerate_perfect_matchings, type_of
from services.two_factor import complement_two_factor, is_hamiltonian, is_two_factor_hamiltonian
from services.words import hamiltonian_type2_count
from utils.classification import (
    chromatic_index_closed,
    is_jaeger_closed,
    is_two_factor_hamiltonian_closed,
    jaeger_count_closed,
)
from utils.parallel import ordered_map
from utils.recall import compare_counts

logger = logging.getLogger(__name__)

# Families of the three graphs left by removing two consecutive claws
REDUCTION_TRIPLES: Dict[int, Tuple[int, int, int]] = {
    1: (1, 1, 3),
    2: (2, 2, 2),
    3: (3, 1, 1),
}

CSV_COLUMNS = ['j', 'k', 'quantity', 'enumerated', 'closed_form', 'pass']


# ── Closed forms ────────────────────────────────────────────────────────────

def mu_closed(j: int, k: int) -> int:
    return mu1_closed(j, k) + mu2_closed(j, k)


def mu1_closed(j: int, k: int) -> int:
    validate_parameters(j, k)
    sign = -1 if k % 2 else 1
    if j == 1:
        return 2 ** k - sign
    if j == 2:
        return 2 ** k
    return 2 ** k + 2 * sign


def mu2_closed(j: int, k: int) -> int:
    validate_parameters(j, k)
    return 2 * 3 ** (k // 2) if k % 2 == 0 else 0


def _check_p(p: int) -> None:
    if p < 2:
        raise FSError(f"p must be at least 2 (got {p})")


def mu2prime_closed(j: int, p: int) -> int:
    """Type-2 matchings of FS(j,2p) whose complement is a hamiltonian cycle."""
    _check_p(p)
    validate_parameters(j, 2 * p)
    if j == 1:
        return 2 ** (p + 1) + (-1) ** (p + 1) * 2
    if j == 2:
        return 2 ** (p + 1)
    return 2 ** (p + 1) + (-1) ** p * 4


def mu2prime_sub_closed(j: int, p: int) -> int:
    """Per-subtype share; both subtypes carry the same count."""
    return mu2prime_closed(j, p) // 2


def jaeger_closed(j: int, k: int) -> int:
    validate_parameters(j, k)
    return jaeger_count_closed(j, k)


def u_closed(p: int) -> int:
    _check_p(p)
    return 2 * (2 ** (p - 1) + (-1) ** p) // 3


def v_closed(p: int) -> int:
    _check_p(p)
    return (2 ** p + (-1) ** (p + 1)) // 3


def _alternating(start: int, p: int) -> int:
    _check_p(p)
    value = start
    for q in range(3, p + 1):
        value = 2 ** (q - 1) - value
    return value


def u_recurrence(p: int) -> int:
    return _alternating(2, p)


def v_recurrence(p: int) -> int:
    return _alternating(1, p)


def recurrence_check(p_max: int = 20) -> bool:
    return all(
        u_recurrence(p) == u_closed(p) and v_recurrence(p) == v_closed(p)
        for p in range(2, p_max + 1)
    )


# ── Reports ─────────────────────────────────────────────────────────────────

class CountRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    k: int
    quantity: str
    enumerated: int
    closed_form: int
    passed: bool


class CountReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: List[CountRow]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self) -> List[CountRow]:
        return [r for r in self.rows if not r.passed]

    def cells(self) -> List[Tuple[int, int]]:
        return sorted({(r.j, r.k) for r in self.rows})

    def value(self, j: int, k: int, quantity: str) -> Optional[CountRow]:
        for r in self.rows:
            if (r.j, r.k, r.quantity) == (j, k, quantity):
                return r
        return None

    def to_rows(self) -> List[Dict]:
        return [
            {
                'j': r.j,
                'k': r.k,
                'quantity': r.quantity,
                'enumerated': r.enumerated,
                'closed_form': r.closed_form,
                'pass': r.passed,
            }
            for r in self.rows
        ]

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(self.to_rows(), columns=CSV_COLUMNS)

    def to_table(self) -> str:
        if not self.rows:
            return ''
        return self.to_dataframe().to_string(index=False)


# ── Enumeration side ────────────────────────────────────────────────────────

def enumerated_counts(fs: FSGraph, threads: Optional[int] = 1) -> Dict[str, int]:
    """Every enumerated quantity of one (j,k) cell from a single enumeration pass."""
    counts = {'mu': 0, 'mu1': 0, 'mu2_0': 0, 'mu2_1': 0, 'mu2prime_0': 0, 'mu2prime_1': 0, 'jaeger': 0}
    for m in enumerate_perfect_matchings(fs, threads):
        counts['mu'] += 1
        kind = type_of(m)
        if kind == MatchingType.TYPE1:
            counts['mu1'] += 1
        else:
            suffix = '0' if kind == MatchingType.TYPE2_0 else '1'
            counts[f'mu2_{suffix}'] += 1
            if is_hamiltonian(complement_two_factor(m)):
                counts[f'mu2prime_{suffix}'] += 1
        if jaeger_decompose(m) is not None:
            counts['jaeger'] += 1
    counts['mu2prime'] = counts['mu2prime_0'] + counts['mu2prime_1']
    return counts


def _cell_rows(j: int, k: int, counts: Dict[str, int], structural: bool) -> List[Dict]:
    rows = []

    def add(quantity: str, enumerated: int, closed: int) -> None:
        rows.append({'j': j, 'k': k, 'quantity': quantity, 'enumerated': enumerated, 'closed_form': closed})

    add('mu', counts['mu'], mu_closed(j, k))
    add('mu1', counts['mu1'], mu1_closed(j, k))
    add('mu2_0', counts['mu2_0'], mu2_closed(j, k) // 2)
    add('mu2_1', counts['mu2_1'], mu2_closed(j, k) // 2)

    if k % 2 == 0 and k >= 4:
        p = k // 2
        add('mu2prime', counts['mu2prime'], mu2prime_closed(j, p))
        add('mu2prime_0', counts['mu2prime_0'], mu2prime_sub_closed(j, p))
        add('mu2prime_1', counts['mu2prime_1'], mu2prime_sub_closed(j, p))
        add('mu2prime_words', hamiltonian_type2_count(build(j, k)), mu2prime_closed(j, p))

    add('jaeger', counts['jaeger'], jaeger_closed(j, k))

    if structural:
        fs = build(j, k)
        add('chromatic_index', chromatic_index(fs), chromatic_index_closed(j, k))
        add('two_factor_hamiltonian', int(is_two_factor_hamiltonian(fs, 1)), int(is_two_factor_hamiltonian_closed(j, k)))
        add('jaeger_graph', int(counts['jaeger'] > 0), int(is_jaeger_closed(j, k)))
    return rows


def _recurrence_rows(j: int, k: int, mu1: Dict[Tuple[int, int], int]) -> List[Dict]:
    """
    mu1(j,k) against the stated reduction families counted at k-2, and the
    stated families against those of the actually reduced graphs.
    """
    def predict(triple: Tuple[int, int, int]) -> int:
        j1, j2, j3 = triple
        return 2 * mu1[(j1, k - 2)] + mu1[(j2, k - 2)] + mu1[(j3, k - 2)]

    stated = predict(REDUCTION_TRIPLES[j])
    reduced = predict(reduction_triple(build(j, k)))
    return [
        {'j': j, 'k': k, 'quantity': 'recurrence', 'enumerated': mu1[(j, k)], 'closed_form': stated},
        {'j': j, 'k': k, 'quantity': 'reduced_families', 'enumerated': reduced, 'closed_form': stated},
    ]


def verify_all(k_max: int, structural: bool = False, threads: Optional[int] = None) -> CountReport:
    """Compare every closed form against enumeration for j in 1..3, 2 <= k <= k_max."""
    if k_max < 2:
        raise FSError(f"k_max must be at least 2 (got {k_max})")

    cells = [(j, k) for j in (1, 2, 3) for k in range(2, k_max + 1)]
    logger.info(f"Verifying {len(cells)} (j,k) cells up to k={k_max}")
    counted = ordered_map(lambda cell: enumerated_counts(build(*cell), threads=1), cells, threads)
    by_cell = dict(zip(cells, counted))
    mu1 = {cell: counts['mu1'] for cell, counts in by_cell.items()}

    raw: List[Dict] = []
    for j, k in sorted(cells, key=lambda c: (c[1], c[0])):
        raw.extend(_cell_rows(j, k, by_cell[(j, k)], structural))
        if k >= 4:
            raw.extend(_recurrence_rows(j, k, mu1))
    raw.sort(key=lambda r: (r['j'], r['k']))

    summary = compare_counts(raw)
    if summary['failed']:
        logger.error(f"{summary['failed']} of {summary['total']} checks failed: {summary['failures']}")
    else:
        logger.info(f"All {summary['total']} checks passed")

    return CountReport(rows=[
        CountRow(
            j=r['j'],
            k=r['k'],
            quantity=r['quantity'],
            enumerated=r['enumerated'],
            closed_form=r['closed_form'],
            passed=r['pass'],
        )
        for r in raw
    ])
