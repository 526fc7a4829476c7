"""
Filtering utilities for enumerated matchings
"""
from typing import Iterable, List, Optional

from services.matchings import Matching, MatchingType, type_of
from services.two_factor import complement_two_factor, is_hamiltonian


def filter_by_type(matchings: List[Matching], types: Optional[Iterable[MatchingType]]) -> List[Matching]:
    """
    Keep only matchings of the given types.
    No types means no filtering.
    """
    wanted = set(types or ())
    if not wanted:
        return matchings
    return [m for m in matchings if type_of(m) in wanted]


def filter_hamiltonian(matchings: List[Matching], hamiltonian: bool = True) -> List[Matching]:
    """
    Keep matchings whose complement is (or, with hamiltonian=False, is not) a single cycle.
    """
    return [m for m in matchings if is_hamiltonian(complement_two_factor(m)) == hamiltonian]


def limit_results(matchings: List[Matching], limit: Optional[int]) -> List[Matching]:
    """
    First `limit` matchings; None or a negative limit keeps all.
    """
    if limit is None or limit < 0:
        return matchings
    return matchings[:limit]
