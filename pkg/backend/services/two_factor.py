"""
Complementary 2-factor analysis.

For a perfect matching M of FS(j,k) the complement G - M is a 2-factor. When M
is of type 1 it has one or two cycles, each meeting every claw; with two cycles
every claw gives three of its four vertices (its centre among them) to one of
them, which is then that claw's major cycle. When M is of type 2 the complement
is one long even cycle plus 6-cycles, each 6-cycle held by two consecutive claws.
"""
import logging
from typing import Dict, FrozenSet, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from services.errors import FSError, InvalidMatchingError, StructureViolation, TransformPreconditionError
from services.fs_family import FSGraph
from services.graph_core import EXTERNAL_ROLES, VertexId, cycle_decomposition, cycle_vertices
from services.matchings import (
    Matching,
    MatchingType,
    enumerate_perfect_matchings,
    matching_from_serials,
    star_role,
    type_of,
)

logger = logging.getLogger(__name__)

# Length change of (anchored cycle, other cycle) per variant
EXPECTED_DELTAS: Dict[int, Tuple[int, int]] = {1: (-4, 4), 2: (-2, 2), 3: (0, 0)}

# Required majors at C_j, C_{j+1}, ... before the transformation (1 = anchored cycle)
PATTERNS: Dict[int, Tuple[int, ...]] = {1: (1, 1), 2: (1, 2, 1), 3: (1, 2, 2)}

# Majors at the same claws afterwards, relative to the new anchored cycle
OUTCOMES: Dict[int, Tuple[int, ...]] = {1: (2, 2), 2: (2, 1, 2), 3: (2, 2, 1)}


class TwoFactor(NamedTuple):
    cycles: Tuple[Tuple[int, ...], ...]
    host: FSGraph

    @property
    def lengths(self) -> List[int]:
        return [len(c) for c in self.cycles]

    def owner(self) -> Dict[Hashable, int]:
        """Vertex -> index of the cycle through it."""
        owned: Dict[Hashable, int] = {}
        for idx, cycle in enumerate(self.cycles):
            for v in cycle_vertices(self.host.graph, cycle):
                owned[v] = idx
        return owned


class MajorProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    assignment: List[int]
    k1: int
    k2: int
    lengths: Tuple[int, int]


class Type2Structure(BaseModel):
    model_config = ConfigDict(frozen=True)

    long_cycle_length: int
    six_cycle_count: int


class TransformReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    variant: int
    anchor: int
    matching: List[int]
    before_lengths: Tuple[int, int]
    after_lengths: Tuple[int, int]
    before_majors: List[int]
    after_majors: List[int]

    @property
    def deltas(self) -> Tuple[int, int]:
        return (
            self.after_lengths[0] - self.before_lengths[0],
            self.after_lengths[1] - self.before_lengths[1],
        )

    @property
    def window(self) -> List[int]:
        return [self.anchor + i for i in range(len(PATTERNS[self.variant]))]

    @property
    def clauses_hold(self) -> bool:
        if self.deltas != EXPECTED_DELTAS[self.variant]:
            return False
        window = self.window
        for offset, claw in enumerate(window):
            if self.after_majors[claw] != OUTCOMES[self.variant][offset]:
                return False
        return all(
            self.after_majors[i] == self.before_majors[i]
            for i in range(len(self.before_majors)) if i not in window
        )


# ── Decomposition ───────────────────────────────────────────────────────────

def complement_two_factor(m: Matching) -> TwoFactor:
    fs = m.host
    taken = m.edges
    rest = [e.serial for e in fs.graph.edges if e.serial not in taken]
    return TwoFactor(tuple(cycle_decomposition(fs.graph, rest)), fs)


def is_hamiltonian(tf: TwoFactor) -> bool:
    return len(tf.cycles) == 1


def claw_majors(tf: TwoFactor) -> List[int]:
    """Index of the cycle through each claw centre."""
    owned = tf.owner()
    return [owned[VertexId(i, 'T')] for i in range(tf.host.k)]


def major_profile(m: Matching, tf: TwoFactor, primary: Optional[int] = None) -> MajorProfile:
    """
    Per-claw major assignment of a two-cycle type-1 complement.

    Gamma_1 is tf.cycles[primary]; by default the cycle holding the lowest
    complement serial, which is cycles[0].
    """
    if type_of(m) != MatchingType.TYPE1:
        raise InvalidMatchingError("major_profile needs a type-1 matching")
    if len(tf.cycles) != 2:
        raise FSError(f"major_profile needs exactly two cycles (got {len(tf.cycles)})")
    first = 0 if primary is None else primary
    if first not in (0, 1):
        raise FSError(f"primary must be 0 or 1 (got {primary})")

    assignment = [1 if c == first else 2 for c in claw_majors(tf)]
    k1 = assignment.count(1)
    lengths = (len(tf.cycles[first]), len(tf.cycles[1 - first]))
    return MajorProfile(assignment=assignment, k1=k1, k2=len(assignment) - k1, lengths=lengths)


# ── Local transformations ───────────────────────────────────────────────────

def _precondition(m: Matching, tf: TwoFactor, variant: int, anchor: int) -> Optional[Tuple[str, str]]:
    """Failing (clause, reason) for a transformation at anchor, or None."""
    k = m.host.k
    if variant not in PATTERNS:
        return 'variant', f"variant must be 1, 2 or 3 (got {variant})"
    if not 0 <= anchor < k:
        return 'anchor', f"anchor {anchor} outside [0, {k})"
    if type_of(m) != MatchingType.TYPE1:
        return 'type', "matching is not of type 1"
    if len(tf.cycles) != 2:
        return 'two_cycles', f"complement has {len(tf.cycles)} cycle(s), need 2"

    width = len(PATTERNS[variant])
    if anchor + width - 1 > k - 1:
        return 'window', f"variant {variant} needs claws {anchor}..{anchor + width - 1} before the seam (k={k})"

    majors = claw_majors(tf)
    anchored = majors[anchor]
    found = tuple(1 if majors[anchor + i] == anchored else 2 for i in range(width))
    if found != PATTERNS[variant]:
        return 'pattern', f"majors at claws {anchor}..{anchor + width - 1} are {found}, need {PATTERNS[variant]}"
    return None


def eligible_anchors(m: Matching, tf: TwoFactor, variant: int) -> List[int]:
    return [a for a in range(m.host.k) if _precondition(m, tf, variant, a) is None]


def _local_roles(m: Matching, anchor: int) -> Tuple[str, str, str]:
    """(a, b, c): star role at C_anchor, role of the matched path edge leaving it, the rest."""
    fs = m.host
    a = star_role(m, anchor)
    taken = m.edges
    crossing = [r for r in EXTERNAL_ROLES if r != a and fs.path_serial(anchor, r) in taken]
    if len(crossing) != 1:
        raise TransformPreconditionError('pattern', f"no unique matched path edge leaves claw {anchor}")
    b = crossing[0]
    c = next(r for r in EXTERNAL_ROLES if r not in (a, b))
    return a, b, c


def _rewiring(fs: FSGraph, variant: int, j: int, a: str, b: str, c: str) -> Tuple[List[int], List[int]]:
    star, path = fs.star_serial, fs.path_serial
    if variant == 1:
        delete = [path(j, b), star(j, a), star(j + 1, a)]
        add = [path(j, a), star(j, b), star(j + 1, b)]
    elif variant == 2:
        delete = [star(j, a), path(j, b), path(j + 1, a), star(j + 2, b)]
        add = [star(j, b), path(j, a), path(j + 1, b), star(j + 2, a)]
    else:
        delete = [star(j, a), path(j, b), star(j + 1, c), path(j + 1, a), star(j + 2, c)]
        add = [star(j, b), path(j, a), star(j + 1, b), path(j + 1, c), star(j + 2, a)]
    return delete, add


def local_transform(m: Matching, variant: int, anchor: int) -> Matching:
    """
    Swap a handful of edges around C_anchor to get a new type-1 matching.

    Variant 1 shortens the anchored cycle by 4, variant 2 by 2, variant 3
    keeps both lengths and moves the major roles.
    """
    tf = complement_two_factor(m)
    failure = _precondition(m, tf, variant, anchor)
    if failure is not None:
        raise TransformPreconditionError(*failure)

    fs = m.host
    a, b, c = _local_roles(m, anchor)
    delete, add = _rewiring(fs, variant, anchor, a, b, c)

    taken = m.edges
    missing = [s for s in delete if s not in taken]
    if missing:
        raise TransformPreconditionError('pattern', f"edges {missing} expected in the matching are absent")
    clash = [s for s in add if s in taken]
    if clash:
        raise TransformPreconditionError('pattern', f"edges {clash} to be added are already matched")

    result = matching_from_serials(fs, (taken - set(delete)) | set(add))
    if type_of(result) != MatchingType.TYPE1:
        raise StructureViolation(f"variant {variant} at claw {anchor} left type 1")
    logger.debug(f"FS({fs.j},{fs.k}) variant {variant} at claw {anchor}: a={a} b={b} c={c}")
    return result


def _anchored_view(tf: TwoFactor, anchor_cycle: int) -> Tuple[Tuple[int, int], List[int]]:
    lengths = tf.lengths
    majors = [1 if c == anchor_cycle else 2 for c in claw_majors(tf)]
    return (lengths[anchor_cycle], lengths[1 - anchor_cycle]), majors


def transform_report(m: Matching, variant: int, anchor: int) -> TransformReport:
    """Apply a local transformation and record lengths and majors on both sides."""
    before = complement_two_factor(m)
    result = local_transform(m, variant, anchor)
    after = complement_two_factor(result)

    _, b, _ = _local_roles(m, anchor)
    anchored_before = claw_majors(before)[anchor]
    b_vertex = VertexId(anchor, b)
    anchored_after = after.owner()[b_vertex]

    before_lengths, before_majors = _anchored_view(before, anchored_before)
    after_lengths, after_majors = _anchored_view(after, anchored_after)
    return TransformReport(
        variant=variant,
        anchor=anchor,
        matching=list(result.serials),
        before_lengths=before_lengths,
        after_lengths=after_lengths,
        before_majors=before_majors,
        after_majors=after_majors,
    )


# ── Type-2 structure ────────────────────────────────────────────────────────

def _claws_met(tf: TwoFactor, cycle: Sequence[int]) -> FrozenSet[int]:
    return frozenset(v.claw for v in cycle_vertices(tf.host.graph, cycle))


def type2_structure(m: Matching, tf: TwoFactor) -> Type2Structure:
    """Long cycle length and 6-cycle count of a type-2 complement."""
    if type_of(m) == MatchingType.TYPE1:
        raise InvalidMatchingError("type2_structure needs a type-2 matching")

    k = m.host.k
    others = [i for i, c in enumerate(tf.cycles) if len(c) != 6]
    if len(others) > 1:
        raise StructureViolation(f"{len(others)} cycles of length other than 6: {tf.lengths}")
    if others:
        long_index = others[0]
    else:
        spanning = [i for i, c in enumerate(tf.cycles) if len(_claws_met(tf, c)) == k]
        if len(spanning) != 1:
            raise StructureViolation(f"cannot single out the long cycle among {tf.lengths}")
        long_index = spanning[0]

    length = len(tf.cycles[long_index])
    six = len(tf.cycles) - 1
    if length % 2 or length < k or length + 6 * six != 4 * k:
        raise StructureViolation(f"long cycle {length} with {six} six-cycles does not fill {4 * k} vertices")

    for i, cycle in enumerate(tf.cycles):
        if i == long_index:
            continue
        claws = sorted(_claws_met(tf, cycle))
        consecutive = len(claws) == 2 and (claws[1] - claws[0] == 1 or (claws[0], claws[1]) == (0, k - 1))
        if not consecutive:
            raise StructureViolation(f"6-cycle #{i} spreads over claws {claws}")

    return Type2Structure(long_cycle_length=length, six_cycle_count=six)


# ── Exhaustive scans ────────────────────────────────────────────────────────

def is_two_factor_hamiltonian(fs: FSGraph, threads: Optional[int] = None) -> bool:
    """Every 2-factor of fs is a hamiltonian cycle."""
    return all(is_hamiltonian(complement_two_factor(m)) for m in enumerate_perfect_matchings(fs, threads))


def max_long_cycle_profiles(fs: FSGraph, threads: Optional[int] = None) -> List[MajorProfile]:
    """
    Profiles of the two-cycle type-1 complements whose longer cycle is longest.

    Gamma_1 is the shorter cycle in each returned profile.
    """
    candidates = []
    for m in enumerate_perfect_matchings(fs, threads):
        if type_of(m) != MatchingType.TYPE1:
            continue
        tf = complement_two_factor(m)
        if len(tf.cycles) == 2:
            candidates.append((m, tf))
    if not candidates:
        return []

    best = max(max(tf.lengths) for _, tf in candidates)
    profiles = []
    for m, tf in candidates:
        if max(tf.lengths) != best:
            continue
        shorter = 0 if tf.lengths[0] <= tf.lengths[1] else 1
        profiles.append(major_profile(m, tf, primary=shorter))
    return profiles
