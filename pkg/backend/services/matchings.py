"""
Perfect matching enumeration and type classification for FS(j,k).

Every perfect matching of FS(j,k) takes exactly one star edge per claw, and the
number of matching edges crossing each inter-claw gap is either 1 everywhere
(type 1) or alternates 2,0,2,0,... (type 2.0 anchored at even gaps, type 2.1 at
odd gaps). Type 2 only exists for even k.
"""
import logging
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from config import FS_ENUM_K_LIMIT
from services.errors import ClassificationError, ConstructionError, InvalidMatchingError
from services.fs_family import FSGraph
from services.graph_core import EdgeKind, MultiGraph
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)

GapProfile = Tuple[int, ...]


class MatchingType(str, Enum):
    TYPE1 = '1'
    TYPE2_0 = '2.0'
    TYPE2_1 = '2.1'

    @classmethod
    def parse(cls, value: str) -> 'MatchingType':
        for t in cls:
            if t.value == str(value):
                return t
        raise ValueError(f"Unknown matching type {value!r} (expected 1, 2.0 or 2.1)")


class Matching(NamedTuple):
    """Perfect matching as sorted edge serials of its host."""
    serials: Tuple[int, ...]
    host: FSGraph

    @property
    def edges(self) -> FrozenSet[int]:
        return frozenset(self.serials)


class MatchingCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    k: int
    total: int
    type1: int
    type2_0: int
    type2_1: int

    @property
    def type2(self) -> int:
        return self.type2_0 + self.type2_1


# ── Enumeration ─────────────────────────────────────────────────────────────

def iter_perfect_matchings(graph: MultiGraph, prefix: Sequence[int] = ()) -> Iterator[Tuple[int, ...]]:
    """
    Backtrack over perfect matchings of any multigraph.

    Branches on the lowest-index uncovered vertex, trying its edges by
    ascending serial. Edges in prefix are taken as already chosen. Yields
    sorted serial tuples.
    """
    n = len(graph.vertices)
    index = graph.index
    incident = [graph.incidence[v] for v in graph.vertices]
    ends = [(index[e.u], index[e.v]) for e in graph.edges]

    covered = [False] * n
    chosen: List[int] = []
    for s in prefix:
        a, b = ends[s]
        if covered[a] or covered[b]:
            return
        covered[a] = covered[b] = True
        chosen.append(s)

    def extend(v: int) -> Iterator[Tuple[int, ...]]:
        while v < n and covered[v]:
            v += 1
        if v == n:
            yield tuple(sorted(chosen))
            return
        covered[v] = True
        for s in incident[v]:
            a, b = ends[s]
            w = b if a == v else a
            if covered[w]:
                continue
            covered[w] = True
            chosen.append(s)
            yield from extend(v + 1)
            chosen.pop()
            covered[w] = False
        covered[v] = False

    yield from extend(0)


def count_perfect_matchings(graph: MultiGraph) -> int:
    return sum(1 for _ in iter_perfect_matchings(graph))


def enumerate_perfect_matchings(fs: FSGraph, threads: Optional[int] = None) -> List[Matching]:
    """
    All perfect matchings of fs in canonical backtracking order.

    The search is split by the edge covering vertex 0; branches run on the
    thread pool and are concatenated in serial order.
    """
    if fs.k > FS_ENUM_K_LIMIT:
        raise ConstructionError(f"Exhaustive enumeration refused for k={fs.k} (limit {FS_ENUM_K_LIMIT})")

    graph = fs.graph
    first = graph.vertices[0]
    branches = ordered_map(
        lambda s: list(iter_perfect_matchings(graph, (s,))),
        graph.incidence[first],
        threads
    )
    result = [Matching(serials, fs) for branch in branches for serials in branch]
    logger.info(f"FS({fs.j},{fs.k}): {len(result)} perfect matchings")
    return result


# ── Validation and classification ───────────────────────────────────────────

def matching_from_serials(fs: FSGraph, serials: Iterable[int]) -> Matching:
    """Validate a user-supplied edge set as a perfect matching of fs."""
    picked = list(serials)
    m = len(fs.graph.edges)
    for s in picked:
        if not isinstance(s, int) or not 0 <= s < m:
            raise InvalidMatchingError(f"Edge serial {s!r} out of range [0, {m})")
    if len(set(picked)) != len(picked):
        raise InvalidMatchingError("Duplicate edge serials")

    covered = set()
    for s in picked:
        e = fs.graph.edges[s]
        for w in e.endpoints:
            if w in covered:
                raise InvalidMatchingError(f"Vertex {w.name} covered twice (edge #{s})")
            covered.add(w)
    if len(covered) != len(fs.graph.vertices):
        missing = [v.name for v in fs.graph.vertices if v not in covered]
        raise InvalidMatchingError(f"Not perfect: {len(missing)} uncovered vertices, e.g. {missing[:3]}")
    return Matching(tuple(sorted(picked)), fs)


def gap_profile(m: Matching) -> GapProfile:
    fs = m.host
    profile = [0] * fs.k
    for s in m.serials:
        e = fs.graph.edges[s]
        if e.kind in (EdgeKind.PATH, EdgeKind.SEAM):
            profile[e.gap] += 1
    return tuple(profile)


def classify(m: Matching) -> Tuple[MatchingType, GapProfile]:
    """Type of a perfect matching together with its gap profile."""
    matching_from_serials(m.host, m.serials)
    profile = gap_profile(m)
    k = m.host.k

    if all(c == 1 for c in profile):
        return MatchingType.TYPE1, profile
    if k % 2 == 0:
        if all(c == (2 if g % 2 == 0 else 0) for g, c in enumerate(profile)):
            return MatchingType.TYPE2_0, profile
        if all(c == (2 if g % 2 == 1 else 0) for g, c in enumerate(profile)):
            return MatchingType.TYPE2_1, profile

    logger.error(f"FS({m.host.j},{k}): unclassifiable gap profile {profile}")
    raise ClassificationError(f"Gap profile {profile} matches no matching type")


def type_of(m: Matching) -> MatchingType:
    return classify(m)[0]


def star_role(m: Matching, claw: int) -> str:
    """Role r such that the star edge t_claw r_claw is in m."""
    fs = m.host
    for r in ('X', 'Y', 'Z'):
        if fs.star_serial(claw, r) in m.edges:
            return r
    raise InvalidMatchingError(f"No star edge at claw {claw}")


def count_by_type(fs: FSGraph, threads: Optional[int] = None) -> MatchingCounts:
    matchings = enumerate_perfect_matchings(fs, threads)
    tally = {t: 0 for t in MatchingType}
    for m in matchings:
        tally[type_of(m)] += 1
    return MatchingCounts(
        j=fs.j,
        k=fs.k,
        total=len(matchings),
        type1=tally[MatchingType.TYPE1],
        type2_0=tally[MatchingType.TYPE2_0],
        type2_1=tally[MatchingType.TYPE2_1],
    )
