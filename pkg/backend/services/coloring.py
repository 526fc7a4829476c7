"""
Exact 3-edge-colouring search for cubic multigraphs.
"""
import logging
from typing import List, NamedTuple, Optional, Tuple, Union

from services.fs_family import FSGraph
from services.graph_core import MultiGraph
from services.matchings import enumerate_perfect_matchings
from services.two_factor import complement_two_factor

logger = logging.getLogger(__name__)


class EdgeColoring(NamedTuple):
    """Colour in {0,1,2} per edge serial."""
    colors: Tuple[int, ...]

    def classes(self) -> List[List[int]]:
        buckets: List[List[int]] = [[], [], []]
        for serial, color in enumerate(self.colors):
            buckets[color].append(serial)
        return buckets


def _host(g: Union[FSGraph, MultiGraph]) -> MultiGraph:
    return g.graph if isinstance(g, FSGraph) else g


def search_order(graph: MultiGraph) -> List[int]:
    """
    Edges of the first vertex, then repeatedly the lowest-serial uncoloured
    edge touching an already ordered one.
    """
    first = graph.vertices[0]
    order = list(graph.incidence[first])
    placed = set(order)
    reached = {first} | {graph.edges[s].other(first) for s in order}
    while len(order) < len(graph.edges):
        frontier = [
            s for v in reached for s in graph.incidence[v] if s not in placed
        ]
        nxt = min(frontier) if frontier else min(s for s in range(len(graph.edges)) if s not in placed)
        order.append(nxt)
        placed.add(nxt)
        reached.update(graph.edges[nxt].endpoints)
    return order


def find_3_edge_coloring(g: Union[FSGraph, MultiGraph]) -> Optional[EdgeColoring]:
    """
    Proper 3-edge-colouring by depth-first search, or None.

    The edges at the first vertex are fixed to colours 0, 1, 2; remaining
    edges are tried in ascending colour.
    """
    graph = _host(g)
    index = graph.index
    ends = [(index[e.u], index[e.v]) for e in graph.edges]
    order = search_order(graph)

    used = [0] * len(graph.vertices)
    colors = [-1] * len(graph.edges)

    fixed = list(graph.incidence[graph.vertices[0]])
    if len(fixed) > 3:
        return None
    for color, s in enumerate(fixed):
        a, b = ends[s]
        if used[b] & (1 << color):
            return None
        used[a] |= 1 << color
        used[b] |= 1 << color
        colors[s] = color

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        s = order[pos]
        a, b = ends[s]
        for color in range(3):
            bit = 1 << color
            if (used[a] | used[b]) & bit:
                continue
            used[a] |= bit
            used[b] |= bit
            colors[s] = color
            if place(pos + 1):
                return True
            used[a] &= ~bit
            used[b] &= ~bit
            colors[s] = -1
        return False

    if not place(len(fixed)):
        logger.info(f"{g!r}: no 3-edge-colouring")
        return None
    return EdgeColoring(tuple(colors))


def chromatic_index(g: Union[FSGraph, MultiGraph]) -> int:
    """3 or 4 for a cubic graph."""
    return 3 if find_3_edge_coloring(g) is not None else 4


def even_2_factor_exists(fs: FSGraph) -> bool:
    """Some perfect matching leaves only even cycles."""
    for m in enumerate_perfect_matchings(fs):
        if all(length % 2 == 0 for length in complement_two_factor(m).lengths):
            return True
    return False
