"""
Block words for type-2 matchings of FS(j,2p).

A type-2 matching pairs the claws into p blocks, each block carrying two
parallel path edges and the two star edges of the remaining role. The block
is named after that role, so the matching is a word of length p over X, Y, Z.
Subtype 2.0 blocks are (C_0,C_1), (C_2,C_3), ...; subtype 2.1 blocks are
(C_1,C_2), ..., (C_{k-1},C_0), the last one crossing the seam.
"""
import itertools
import logging
from typing import Dict, List, Set

from pydantic import BaseModel, ConfigDict

from services.errors import WordError
from services.fs_family import SEAMS, FSGraph
from services.graph_core import EXTERNAL_ROLES
from services.matchings import Matching, MatchingType, matching_from_serials, star_role, type_of

logger = logging.getLogger(__name__)

ALPHABET = ''.join(EXTERNAL_ROLES)
SUBTYPES = (MatchingType.TYPE2_0, MatchingType.TYPE2_1)


class BlockWord(BaseModel):
    model_config = ConfigDict(frozen=True)

    letters: str
    subtype: MatchingType = MatchingType.TYPE2_0

    @property
    def shift(self) -> int:
        return 0 if self.subtype == MatchingType.TYPE2_0 else 1

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return f"{self.letters}@{self.subtype.value}"


def block_word(letters: str, subtype: MatchingType = MatchingType.TYPE2_0) -> BlockWord:
    """Validated BlockWord."""
    if not letters or any(ch not in ALPHABET for ch in letters):
        raise WordError(f"Block word must be a non-empty string over {ALPHABET} (got {letters!r})")
    if subtype not in SUBTYPES:
        raise WordError(f"Block words exist only for subtypes 2.0 and 2.1 (got {subtype.value})")
    return BlockWord(letters=letters, subtype=subtype)


def parse_word(text: str) -> BlockWord:
    """Read `XYZ@2.0` / `XYZ@2.1`; a bare word is subtype 2.0."""
    letters, _, suffix = text.strip().upper().partition('@')
    try:
        subtype = MatchingType.parse(suffix) if suffix else MatchingType.TYPE2_0
    except ValueError as e:
        raise WordError(str(e))
    return block_word(letters, subtype)


def all_words(p: int) -> List[str]:
    return [''.join(w) for w in itertools.product(ALPHABET, repeat=p)]


def _check_host(fs: FSGraph) -> int:
    if fs.k % 2 or fs.k < 4:
        raise WordError(f"Block words need an even k >= 4 (got k={fs.k})")
    return fs.k // 2


def encode_word(m: Matching) -> BlockWord:
    fs = m.host
    p = _check_host(fs)
    subtype = type_of(m)
    if subtype not in SUBTYPES:
        raise WordError("Only type-2 matchings have a block word")
    shift = 0 if subtype == MatchingType.TYPE2_0 else 1
    letters = ''.join(star_role(m, 2 * i + shift) for i in range(p))
    return BlockWord(letters=letters, subtype=subtype)


def decode_word(fs: FSGraph, w: BlockWord) -> Matching:
    """The type-2 matching whose blocks spell w."""
    block_word(w.letters, w.subtype)
    p = _check_host(fs)
    if len(w) != p:
        raise WordError(f"Word {w} has length {len(w)}, FS({fs.j},{fs.k}) needs {p}")

    serials: List[int] = []
    for i, role in enumerate(w.letters):
        first = 2 * i + w.shift
        others = [r for r in EXTERNAL_ROLES if r != role]
        serials.append(fs.star_serial(first, role))
        if first == fs.k - 1:
            serials.append(fs.star_serial(0, fs.seam[role]))
            serials.extend(fs.seam_serial(r) for r in others)
        else:
            serials.append(fs.star_serial(first + 1, role))
            serials.extend(fs.path_serial(first, r) for r in others)
    return matching_from_serials(fs, serials)


def forbidden_pairs(j: int) -> Set[str]:
    """(initial, terminal) letter pairs that close a 6-cycle across the seam."""
    if j not in SEAMS:
        raise WordError(f"j must be 1, 2 or 3 (got {j})")
    return {SEAMS[j][last] + last for last in ALPHABET}


def word_predicts_hamiltonian(w: BlockWord, j: int) -> bool:
    """No two consecutive blocks alike and the extremal pair not forbidden."""
    letters = w.letters
    if any(a == b for a, b in zip(letters, letters[1:])):
        return False
    return letters[0] + letters[-1] not in forbidden_pairs(j)


def hamiltonian_words(fs: FSGraph) -> Dict[MatchingType, List[str]]:
    p = _check_host(fs)
    result: Dict[MatchingType, List[str]] = {}
    for subtype in SUBTYPES:
        result[subtype] = [
            w for w in all_words(p)
            if word_predicts_hamiltonian(BlockWord(letters=w, subtype=subtype), fs.j)
        ]
    return result


def hamiltonian_type2_count(fs: FSGraph) -> int:
    """Type-2 matchings with a hamiltonian complement, counted over words."""
    count = sum(len(ws) for ws in hamiltonian_words(fs).values())
    logger.info(f"FS({fs.j},{fs.k}): {count} hamiltonian type-2 matchings")
    return count
