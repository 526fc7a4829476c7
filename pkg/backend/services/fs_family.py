"""
Construction of the FS(j,k) family with a fixed canonical labeling.

FS(j,k) is built from k claws C_i = {t_i, x_i, y_i, z_i}. Externals of C_i are
joined role-by-role to C_{i+1} for i < k-1, and C_{k-1} is joined back to C_0
through the seam permutation sigma_j. The externals then induce exactly j cycles.

Edge serials:
    star  t_i r_i               3i + (r-1)
    path  r_g r_{g+1}           3k + 3g + (r-1)         0 <= g <= k-2
    seam  r_{k-1} sigma(r)_0    3k + 3(k-1) + (r-1)
with r = 1, 2, 3 for X, Y, Z.
"""
import logging
from typing import Dict, Hashable, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from services.errors import ConstructionError, FSError
from services.graph_core import (
    EXTERNAL_ROLES,
    ROLES,
    EdgeKind,
    MultiGraph,
    VertexId,
    induced_cycle_count,
    induced_edges,
    cycle_decomposition,
)

logger = logging.getLogger(__name__)

# Role of the C_0 neighbour of each external vertex of C_{k-1}
SEAMS: Dict[int, Dict[str, str]] = {
    1: {'X': 'Z', 'Y': 'X', 'Z': 'Y'},
    2: {'X': 'X', 'Y': 'Z', 'Z': 'Y'},
    3: {'X': 'X', 'Y': 'Y', 'Z': 'Z'},
}

# Rejoining C_{i-2} to C_{i+1} after deleting the two claws in between
REDUCTION_CASES: Dict[int, Dict[str, str]] = {
    1: {'X': 'X', 'Y': 'Y', 'Z': 'Z'},
    2: {'X': 'Y', 'Y': 'Z', 'Z': 'X'},
    3: {'X': 'Z', 'Y': 'X', 'Z': 'Y'},
}


def role_offset(role: str) -> int:
    return EXTERNAL_ROLES.index(role)


def seam_orbit_sizes(j: int) -> List[int]:
    """Cycle lengths of the seam permutation, ascending."""
    seam = SEAMS[j]
    seen = set()
    sizes = []
    for r in EXTERNAL_ROLES:
        size = 0
        while r not in seen:
            seen.add(r)
            r = seam[r]
            size += 1
        if size:
            sizes.append(size)
    return sorted(sizes)


def validate_parameters(j: int, k: int) -> None:
    if j not in SEAMS:
        raise ConstructionError(f"j must be 1, 2 or 3 (got {j})")
    if k < 2:
        raise ConstructionError(f"k must be at least 2 (got {k})")


class FSGraph:
    """FS(j,k) with its canonical labeling; immutable."""

    def __init__(self, j: int, k: int, graph: MultiGraph):
        self.j = j
        self.k = k
        self.graph = graph
        self.seam = SEAMS.get(j, {})

    def __repr__(self) -> str:
        return f"FSGraph(j={self.j}, k={self.k})"

    @property
    def edges(self):
        return self.graph.edges

    @property
    def vertices(self):
        return self.graph.vertices

    def externals(self) -> List[VertexId]:
        return [v for v in self.graph.vertices if v.role != 'T']

    def claw(self, i: int) -> List[VertexId]:
        i %= self.k
        return [VertexId(i, r) for r in ROLES]

    def star_serial(self, claw: int, role: str) -> int:
        return 3 * (claw % self.k) + role_offset(role)

    def path_serial(self, gap: int, role: str) -> int:
        """Serial of the edge of `role` (role at the lower claw) crossing gap."""
        if gap == self.k - 1:
            return self.seam_serial(role)
        return 3 * self.k + 3 * gap + role_offset(role)

    def seam_serial(self, role: str) -> int:
        """Serial of the seam edge leaving role_{k-1}."""
        return 3 * self.k + 3 * (self.k - 1) + role_offset(role)

    def with_edge(self, serial: int, u: VertexId, v: VertexId) -> 'FSGraph':
        """Copy with one edge rewired; the result may violate the invariants."""
        edges = [(e.u, e.v, e.kind, e.gap) for e in self.graph.edges]
        old = edges[serial]
        edges[serial] = (u, v, old[2], old[3])
        return FSGraph(self.j, self.k, MultiGraph(self.graph.vertices, edges))


def build(j: int, k: int) -> FSGraph:
    """Construct FS(j,k)."""
    validate_parameters(j, k)
    seam = SEAMS[j]

    vertices = [VertexId(i, r) for i in range(k) for r in ROLES]
    edges: List[Tuple[Hashable, Hashable, EdgeKind, int]] = []
    for i in range(k):
        for r in EXTERNAL_ROLES:
            edges.append((VertexId(i, 'T'), VertexId(i, r), EdgeKind.STAR, None))
    for g in range(k - 1):
        for r in EXTERNAL_ROLES:
            edges.append((VertexId(g, r), VertexId(g + 1, r), EdgeKind.PATH, g))
    for r in EXTERNAL_ROLES:
        edges.append((VertexId(k - 1, r), VertexId(0, seam[r]), EdgeKind.SEAM, k - 1))

    logger.debug(f"Built FS({j},{k}): {len(vertices)} vertices, {len(edges)} edges")
    return FSGraph(j, k, MultiGraph(vertices, edges, cubic=True))


# ── Diagnostics ─────────────────────────────────────────────────────────────

class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str = ''


class ConstructionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    k: int
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def _role_paths_ok(fs: FSGraph) -> Tuple[bool, str]:
    g = fs.graph
    for r in EXTERNAL_ROLES:
        verts = {VertexId(i, r) for i in range(fs.k)}
        path_edges = [s for s in induced_edges(g, verts) if g.edges[s].kind == EdgeKind.PATH]
        if len(path_edges) != fs.k - 1:
            return False, f"role {r}: {len(path_edges)} path edges, expected {fs.k - 1}"
        for s in path_edges:
            e = g.edges[s]
            if abs(e.u.claw - e.v.claw) != 1:
                return False, f"role {r}: path edge #{s} skips a claw"
    return True, ''


def verify_construction(fs: FSGraph) -> ConstructionReport:
    """Re-check the FS(j,k) invariants on fs, reporting each as pass/fail."""
    g = fs.graph
    k = fs.k
    checks: List[CheckResult] = []

    def add(name: str, passed: bool, detail: str = '') -> None:
        checks.append(CheckResult(name=name, passed=passed, detail=detail))

    add('vertex_count', len(g.vertices) == 4 * k, f"{len(g.vertices)} vertices, expected {4 * k}")
    add('edge_count', len(g.edges) == 6 * k, f"{len(g.edges)} edges, expected {6 * k}")
    add('cubic', g.is_cubic())
    add('incidence', g.check_incidence())
    add('dense_serials', [e.serial for e in g.edges] == list(range(len(g.edges))))

    sizes = claws_of(g.vertices)
    add('claw_sizes', sorted(sizes) == list(range(k)) and set(sizes.values()) == {4}, f"vertices per claw {sizes}")

    ok, detail = _role_paths_ok(fs)
    add('role_paths', ok, detail)

    try:
        count = induced_cycle_count(g, fs.externals())
        add('induced_cycles', count == fs.j, f"externals induce {count} cycles, expected {fs.j}")
        lengths = sorted(len(c) for c in external_cycles(fs))
        expected = [k * n for n in seam_orbit_sizes(fs.j)]
        add('external_cycle_lengths', lengths == expected, f"external cycles {lengths}, expected {expected}")
    except FSError as e:
        add('induced_cycles', False, str(e))

    expect_parallel = k == 2 and fs.j in (2, 3)
    has_parallel = g.has_parallel_edges()
    add(
        'parallel_edges',
        has_parallel == expect_parallel,
        f"parallel edges {'present' if has_parallel else 'absent'}, expected "
        f"{'present' if expect_parallel else 'absent'}"
    )

    report = ConstructionReport(j=fs.j, k=k, checks=checks)
    if not report.passed:
        logger.warning(f"FS({fs.j},{k}) failed checks: {[c.name for c in report.failures()]}")
    return report


# ── Claw-pair reduction ─────────────────────────────────────────────────────

def reduce_pair(fs: FSGraph, i: int, case: int) -> MultiGraph:
    """
    Delete C_{i-1} and C_i and join the externals of C_{i-2} to C_{i+1}.

    The rejoining follows REDUCTION_CASES[case]; the remaining graph has k-2
    claws and is again an FS graph (up to relabeling).
    """
    k = fs.k
    if k < 4:
        raise ConstructionError(f"reduce_pair needs k >= 4 (got {k})")
    if not 2 <= i <= k - 2:
        raise ConstructionError(f"claw index must lie in [2, {k - 2}] (got {i})")
    if case not in REDUCTION_CASES:
        raise ConstructionError(f"case must be 1, 2 or 3 (got {case})")

    removed = {i - 1, i}
    vertices = [v for v in fs.graph.vertices if v.claw not in removed]
    edges = [
        (e.u, e.v, e.kind, e.gap)
        for e in fs.graph.edges
        if e.u.claw not in removed and e.v.claw not in removed
    ]
    for r in EXTERNAL_ROLES:
        edges.append((VertexId(i - 2, r), VertexId(i + 1, REDUCTION_CASES[case][r]), EdgeKind.PLAIN, None))
    return MultiGraph(vertices, edges, cubic=True)


def identify_j(graph: MultiGraph) -> int:
    """Number of cycles induced by the external (non-centre) vertices."""
    externals = [v for v in graph.vertices if getattr(v, 'role', 'T') != 'T']
    return induced_cycle_count(graph, externals)


def reduction_triple(fs: FSGraph, i: int = 2) -> Tuple[int, int, int]:
    """(j1, j2, j3) of the three reduced graphs; j1 comes from the identity rejoin."""
    found = [identify_j(reduce_pair(fs, i, case)) for case in (1, 2, 3)]
    return found[0], found[1], found[2]


def external_cycles(fs: FSGraph) -> List[Tuple[int, ...]]:
    return cycle_decomposition(fs.graph, induced_edges(fs.graph, fs.externals()))


def claws_of(vertices: Sequence[VertexId]) -> Dict[int, int]:
    """Vertex count per claw index."""
    counts: Dict[int, int] = {}
    for v in vertices:
        counts[v.claw] = counts.get(v.claw, 0) + 1
    return counts
