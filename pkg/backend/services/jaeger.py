"""
Strong matchings and Jaeger decompositions.

A perfect matching is a Jaeger matching when it splits into two strong
(induced) matchings, blue and red. Equivalently the conflict graph on its
edges, where two matching edges are adjacent whenever a host edge joins them,
is bipartite. A host edge joining the two ends of a single matching edge (a
parallel pair) is a conflict of that edge with itself and rules it out.
"""
import logging
from collections import deque
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict

from services.errors import FSError, InvalidMatchingError
from services.fs_family import FSGraph
from services.graph_core import MultiGraph, induced_edges
from services.matchings import Matching, enumerate_perfect_matchings
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)


class JaegerDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    blue: List[int]
    red: List[int]
    components: int


def _host(g: Union[FSGraph, MultiGraph]) -> MultiGraph:
    return g.graph if isinstance(g, FSGraph) else g


def is_strong_matching(g: Union[FSGraph, MultiGraph], serials: Iterable[int]) -> bool:
    """The edges span no host edge other than themselves."""
    graph = _host(g)
    picked = set(serials)
    covered: Set[Hashable] = set()
    for s in picked:
        for w in graph.edges[s].endpoints:
            if w in covered:
                raise InvalidMatchingError(f"Edge #{s} shares a vertex with another edge of the set")
            covered.add(w)
    return set(induced_edges(graph, covered)) == picked


def _conflicts(m: Matching) -> Optional[Dict[int, Set[int]]]:
    """Adjacency of the conflict graph, or None when some edge conflicts with itself."""
    graph = m.host.graph
    owner: Dict[Hashable, int] = {}
    for s in m.serials:
        e = graph.edges[s]
        owner[e.u] = s
        owner[e.v] = s

    taken = m.edges
    adjacency: Dict[int, Set[int]] = {s: set() for s in m.serials}
    for e in graph.edges:
        if e.serial in taken:
            continue
        a, b = owner[e.u], owner[e.v]
        if a == b:
            return None
        adjacency[a].add(b)
        adjacency[b].add(a)
    return adjacency


def jaeger_decompose(m: Matching) -> Optional[JaegerDecomposition]:
    """
    Canonical (blue, red) split of m, or None if m is not a Jaeger matching.

    Conflict-graph components are coloured breadth-first in order of their
    lowest serial, which is blue.
    """
    adjacency = _conflicts(m)
    if adjacency is None:
        return None

    color: Dict[int, int] = {}
    components = 0
    for start in m.serials:
        if start in color:
            continue
        components += 1
        color[start] = 0
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for t in sorted(adjacency[s]):
                if t not in color:
                    color[t] = 1 - color[s]
                    queue.append(t)
                elif color[t] == color[s]:
                    return None

    blue = [s for s in m.serials if color[s] == 0]
    red = [s for s in m.serials if color[s] == 1]
    return JaegerDecomposition(blue=blue, red=red, components=components)


def enumerate_jaeger_matchings(
    fs: FSGraph,
    threads: Optional[int] = None
) -> List[Tuple[Matching, JaegerDecomposition]]:
    matchings = enumerate_perfect_matchings(fs, threads)
    splits = ordered_map(jaeger_decompose, matchings, threads)
    found = [(m, d) for m, d in zip(matchings, splits) if d is not None]
    logger.info(f"FS({fs.j},{fs.k}): {len(found)} Jaeger matchings")
    return found


def is_jaeger_graph(fs: FSGraph, threads: Optional[int] = None) -> bool:
    return bool(enumerate_jaeger_matchings(fs, threads))


def berge_fulkerson_check(ms: Sequence[Matching]) -> bool:
    """Six perfect matchings covering every host edge exactly twice."""
    if len(ms) != 6:
        raise FSError(f"Berge-Fulkerson check takes 6 matchings (got {len(ms)})")
    host = ms[0].host
    if any(m.host is not host for m in ms):
        raise FSError("Matchings belong to different hosts")

    cover = [0] * len(host.graph.edges)
    for m in ms:
        for s in m.serials:
            cover[s] += 1
    return all(c == 2 for c in cover)


def double_cover_candidates(found: Sequence[Matching]) -> Optional[List[Matching]]:
    """
    Six matchings to test for a double cover: the Jaeger matchings themselves
    when there are six, each of them twice when there are three (a 1-factorization).
    """
    if len(found) == 6:
        return list(found)
    if len(found) == 3:
        return [m for m in found for _ in range(2)]
    return None
