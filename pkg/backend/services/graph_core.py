"""
Undirected multigraph substrate shared by every FS(j,k) service.

Vertices are arbitrary hashable labels (VertexId for claw-built graphs), edges
are identified by a dense serial so that parallel edges never collapse into a
single endpoint pair. Graphs are immutable after construction.
"""
import json
import logging
import re
from collections import defaultdict
from enum import Enum
from typing import Any, Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx

from services.errors import FSError, NotCubicError, NotTwoRegularError

logger = logging.getLogger(__name__)

ROLES = ('T', 'X', 'Y', 'Z')
EXTERNAL_ROLES = ('X', 'Y', 'Z')

_NAME_PATTERN = re.compile(r'^([txyz])(\d+)$')


class VertexId(NamedTuple):
    """Vertex t_i / x_i / y_i / z_i of claw C_i."""
    claw: int
    role: str

    @property
    def name(self) -> str:
        return f"{self.role.lower()}{self.claw}"


class TriangleVertex(NamedTuple):
    """Corner of the triangle a vertex was inflated into."""
    origin: Hashable
    corner: int

    @property
    def name(self) -> str:
        return f"{vertex_name(self.origin)}^{self.corner}"


class EdgeKind(str, Enum):
    STAR = 'star'
    PATH = 'path'
    SEAM = 'seam'
    PLAIN = 'plain'


class EdgeId(NamedTuple):
    serial: int
    u: Hashable
    v: Hashable
    kind: EdgeKind = EdgeKind.PLAIN
    gap: Optional[int] = None

    @property
    def endpoints(self) -> Tuple[Hashable, Hashable]:
        return (self.u, self.v)

    def other(self, w: Hashable) -> Hashable:
        return self.v if self.u == w else self.u

    @property
    def tag(self) -> str:
        if self.kind == EdgeKind.PATH:
            return f"path({self.gap})"
        return self.kind.value


def vertex_name(v: Hashable) -> str:
    """Printable name of a vertex (t0, x0, ... for claw vertices)."""
    name = getattr(v, 'name', None)
    if isinstance(name, str):
        return name
    return str(v)


def parse_vertex_name(name: str) -> Hashable:
    """Inverse of vertex_name for claw vertices; other names stay strings."""
    match = _NAME_PATTERN.match(name)
    if match:
        return VertexId(int(match.group(2)), match.group(1).upper())
    return name


class MultiGraph:
    """
    Immutable undirected multigraph.

    Edges are given as (u, v, kind, gap) tuples and receive serials 0..m-1 in
    the order given. Incidence lists hold serials in ascending order.
    """

    def __init__(
        self,
        vertices: Iterable[Hashable],
        edges: Iterable[Sequence[Any]],
        cubic: bool = False
    ):
        self.vertices: Tuple[Hashable, ...] = tuple(vertices)
        self.index: Dict[Hashable, int] = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise FSError("Duplicate vertex labels")

        built = []
        incidence: Dict[Hashable, List[int]] = {v: [] for v in self.vertices}
        for serial, row in enumerate(edges):
            u, v = row[0], row[1]
            kind = row[2] if len(row) > 2 else EdgeKind.PLAIN
            gap = row[3] if len(row) > 3 else None
            if u not in incidence or v not in incidence:
                raise FSError(f"Edge {vertex_name(u)}-{vertex_name(v)} has an unknown endpoint")
            if u == v:
                raise FSError(f"Loop at {vertex_name(u)} is not supported")
            built.append(EdgeId(serial, u, v, EdgeKind(kind), gap))
            incidence[u].append(serial)
            incidence[v].append(serial)

        self.edges: Tuple[EdgeId, ...] = tuple(built)
        self.incidence: Dict[Hashable, Tuple[int, ...]] = {v: tuple(s) for v, s in incidence.items()}
        self.cubic = cubic

        if cubic and not self.is_cubic():
            bad = [vertex_name(v) for v in self.vertices if self.degree(v) != 3]
            raise NotCubicError(f"Graph flagged cubic but vertices {bad[:5]} have degree != 3")

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def degree(self, v: Hashable) -> int:
        return len(self.incidence[v])

    def edge(self, serial: int) -> EdgeId:
        return self.edges[serial]

    def is_cubic(self) -> bool:
        return all(len(s) == 3 for s in self.incidence.values())

    def parallel_classes(self) -> List[Tuple[int, ...]]:
        """Groups of two or more edges sharing the same endpoint pair."""
        groups: Dict[frozenset, List[int]] = defaultdict(list)
        for e in self.edges:
            groups[frozenset(e.endpoints)].append(e.serial)
        return [tuple(g) for g in groups.values() if len(g) > 1]

    def has_parallel_edges(self) -> bool:
        return bool(self.parallel_classes())

    def check_incidence(self) -> bool:
        """Full rescan: incidence map agrees with the edge list."""
        rebuilt: Dict[Hashable, List[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            rebuilt[e.u].append(e.serial)
            rebuilt[e.v].append(e.serial)
        return all(tuple(rebuilt[v]) == self.incidence[v] for v in self.vertices)

    # ── Export ──────────────────────────────────────────────────────────────

    def to_edgelist(self) -> str:
        """One line per edge: `<name(u)> <name(v)> #<serial>`."""
        lines = [f"{vertex_name(e.u)} {vertex_name(e.v)} #{e.serial}" for e in self.edges]
        return '\n'.join(lines) + '\n'

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'vertices': [vertex_name(v) for v in self.vertices],
            'edges': [
                {
                    'serial': e.serial,
                    'endpoints': [vertex_name(e.u), vertex_name(e.v)],
                    'tag': e.tag,
                }
                for e in self.edges
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_networkx(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(self.vertices)
        for e in self.edges:
            G.add_edge(e.u, e.v, key=e.serial, kind=e.kind.value, gap=e.gap)
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> 'MultiGraph':
        if G.is_multigraph():
            pairs = [(u, v) for u, v, _ in G.edges(keys=True)]
        else:
            pairs = list(G.edges())
        graph = cls(G.nodes(), pairs)
        return cls(graph.vertices, [(u, v) for u, v in pairs], cubic=graph.is_cubic())

    @classmethod
    def from_edgelist(cls, text: str) -> 'MultiGraph':
        """Parse the edge-list format; serials must be dense and are honoured."""
        rows = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3 or not parts[2].startswith('#'):
                raise FSError(f"Line {line_no}: expected '<u> <v> #<serial>', got {raw!r}")
            rows.append((int(parts[2][1:]), parse_vertex_name(parts[0]), parse_vertex_name(parts[1])))

        rows.sort()
        if [r[0] for r in rows] != list(range(len(rows))):
            raise FSError("Edge serials must be dense 0..m-1")

        vertices: List[Hashable] = []
        seen: Set[Hashable] = set()
        for _, u, v in rows:
            for w in (u, v):
                if w not in seen:
                    seen.add(w)
                    vertices.append(w)
        if all(isinstance(w, VertexId) for w in vertices):
            vertices.sort(key=lambda w: (w.claw, ROLES.index(w.role)))

        graph = cls(vertices, [(u, v) for _, u, v in rows])
        return cls(graph.vertices, [(u, v) for _, u, v in rows], cubic=graph.is_cubic())


# ── Cycle utilities ─────────────────────────────────────────────────────────

def _incidence_within(g: MultiGraph, edges: Iterable[int]) -> Dict[Hashable, List[int]]:
    incident: Dict[Hashable, List[int]] = defaultdict(list)
    for s in sorted(set(edges)):
        e = g.edges[s]
        incident[e.u].append(s)
        incident[e.v].append(s)
    return incident


def cycle_decomposition(g: MultiGraph, edges: Iterable[int]) -> List[Tuple[int, ...]]:
    """
    Split a 2-regular edge set into its cycles.

    Cycles come out in ascending order of their minimum serial; each starts at
    its minimum-serial edge and continues toward the lower-serial of that
    edge's two neighbours. A parallel pair is a 2-cycle.
    """
    edge_set = set(edges)
    incident = _incidence_within(g, edge_set)
    for v, serials in incident.items():
        if len(serials) != 2:
            raise NotTwoRegularError(
                f"Vertex {vertex_name(v)} has {len(serials)} incident edges in the set (need 0 or 2)"
            )

    def _other(v: Hashable, s: int) -> int:
        a, b = incident[v]
        return b if a == s else a

    cycles: List[Tuple[int, ...]] = []
    seen: Set[int] = set()
    for start in sorted(edge_set):
        if start in seen:
            continue
        e = g.edges[start]
        at_u, at_v = _other(e.u, start), _other(e.v, start)
        current = e.v if at_v <= at_u else e.u

        cycle = [start]
        prev = start
        while True:
            nxt = _other(current, prev)
            if nxt == start:
                break
            cycle.append(nxt)
            current = g.edges[nxt].other(current)
            prev = nxt

        seen.update(cycle)
        cycles.append(tuple(cycle))
    return cycles


def cycle_vertices(g: MultiGraph, cycle: Sequence[int]) -> Set[Hashable]:
    verts: Set[Hashable] = set()
    for s in cycle:
        verts.update(g.edges[s].endpoints)
    return verts


def induced_edges(g: MultiGraph, verts: Iterable[Hashable]) -> List[int]:
    vs = set(verts)
    return [e.serial for e in g.edges if e.u in vs and e.v in vs]


def induced_cycle_count(g: MultiGraph, verts: Iterable[Hashable]) -> int:
    """Number of cycles of the (2-regular) subgraph induced on verts."""
    vs = set(verts)
    serials = induced_edges(g, vs)
    incident = _incidence_within(g, serials)
    for v in vs:
        if len(incident.get(v, ())) != 2:
            raise NotTwoRegularError(
                f"Induced subgraph is not 2-regular: {vertex_name(v)} has degree {len(incident.get(v, ()))}"
            )
    return len(cycle_decomposition(g, serials))


# ── Triangular extension ────────────────────────────────────────────────────

def inflate_vertex(g: MultiGraph, v: Hashable) -> MultiGraph:
    """
    Replace v by a triangle, each former neighbour joined to its own corner.

    Corner i takes over the i-th edge of v (ascending serial); the three
    triangle edges get the last three serials.
    """
    if not g.is_cubic():
        raise NotCubicError("inflate_vertex needs a cubic host")
    if v not in g.index:
        raise FSError(f"Unknown vertex {vertex_name(v)}")
    incident = g.incidence[v]
    if len({g.edges[s].other(v) for s in incident}) < 3:
        raise FSError(f"Vertex {vertex_name(v)} has an incident parallel pair")

    corners = [TriangleVertex(v, i) for i in range(3)]
    corner_of = {s: corners[i] for i, s in enumerate(incident)}

    vertices: List[Hashable] = []
    for w in g.vertices:
        if w == v:
            vertices.extend(corners)
        else:
            vertices.append(w)

    edges = []
    for e in g.edges:
        u, w = e.u, e.v
        if u == v:
            u = corner_of[e.serial]
        if w == v:
            w = corner_of[e.serial]
        edges.append((u, w, e.kind, e.gap))
    edges.extend([(corners[0], corners[1]), (corners[1], corners[2]), (corners[0], corners[2])])

    logger.debug(f"Inflated {vertex_name(v)}: {len(g.vertices)} -> {len(vertices)} vertices")
    return MultiGraph(vertices, edges, cubic=True)


def inflate_vertices(g: MultiGraph, vs: Iterable[Hashable]) -> MultiGraph:
    """Inflate several vertices one after the other."""
    result = g
    for v in vs:
        result = inflate_vertex(result, v)
    return result


# ── Named fixtures ──────────────────────────────────────────────────────────

def petersen() -> MultiGraph:
    return MultiGraph.from_networkx(nx.petersen_graph())


def k33() -> MultiGraph:
    return MultiGraph.from_networkx(nx.complete_bipartite_graph(3, 3))


def cube() -> MultiGraph:
    return MultiGraph.from_networkx(nx.convert_node_labels_to_integers(nx.hypercube_graph(3)))
