"""
FS(j,k) command-line tool (Standalone)

Builds the FS(j,k) graphs, enumerates and classifies their perfect matchings,
analyses complementary 2-factors, edge colourings, Jaeger matchings and block
words, and checks every closed-form count against enumeration.

Usage:
    python fs.py build --j 2 --k 5 [--format edgelist|json] [--out graph.txt]
    python fs.py count --j 2 --k 5 [--by-type]
    python fs.py enumerate --j 1 --k 4 [--type 1|2.0|2.1] [--[no-]hamiltonian] [--limit N]
    python fs.py two-factor --j 2 --k 3 --matching 0
    python fs.py transform --j 2 --k 7 --variant 1 --anchor 0 --matching m.json
    python fs.py chromatic --j 2 --k 5
    python fs.py jaeger --j 1 --k 4 [--enumerate] [--bf-check]
    python fs.py words --j 3 --k 4 [--list-hamiltonian]
    python fs.py verify --kmax 6 [--csv counts.csv] [--excel counts.xlsx]

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
Set FS_THREADS to cap internal parallelism and FS_LOG_LEVEL for log verbosity.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from config import FS_DEFAULT_KMAX, FS_LOG_LEVEL, LOG_FORMAT
from services.coloring import find_3_edge_coloring
from services.errors import FSError
from services.export_service import export_to_csv, export_to_excel, write_export
from services.formulas import CSV_COLUMNS, verify_all
from services.fs_family import FSGraph, build, validate_parameters
from services.jaeger import berge_fulkerson_check, double_cover_candidates, enumerate_jaeger_matchings
from services.matchings import (
    Matching,
    MatchingType,
    count_by_type,
    enumerate_perfect_matchings,
    matching_from_serials,
    type_of,
)
from services.two_factor import (
    complement_two_factor,
    is_hamiltonian,
    major_profile,
    transform_report,
    type2_structure,
)
from services.words import hamiltonian_type2_count, hamiltonian_words
from utils.filters import filter_by_type, filter_hamiltonian, limit_results

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class FSArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing usage and exiting."""

    def error(self, message):
        raise UsageError(message)


def _add_family_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--j", type=int, required=True, choices=[1, 2, 3], help="number of external cycles")
    parser.add_argument("--k", type=int, required=True, help="number of claws (>= 2)")
    parser.add_argument("--threads", type=int, default=None, help="override FS_THREADS")


def build_parser() -> FSArgumentParser:
    parser = FSArgumentParser(prog="fs", description="FS(j,k) perfect matching toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=FSArgumentParser)

    p = sub.add_parser("build", help="construct FS(j,k) and export it")
    _add_family_args(p)
    p.add_argument("--format", choices=["edgelist", "json"], default="edgelist")
    p.add_argument("--out", default=None, help="write to this path instead of stdout")

    p = sub.add_parser("count", help="number of perfect matchings")
    _add_family_args(p)
    p.add_argument("--by-type", action="store_true")

    p = sub.add_parser("enumerate", help="list perfect matchings as sorted edge serials")
    _add_family_args(p)
    p.add_argument("--type", choices=[t.value for t in MatchingType], default=None)
    p.add_argument(
        "--hamiltonian", action=argparse.BooleanOptionalAction, default=None,
        help="keep matchings whose complement is (--no-hamiltonian: is not) one cycle",
    )
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("two-factor", help="complementary 2-factor of one matching")
    _add_family_args(p)
    p.add_argument("--matching", required=True, help="JSON file of edge serials, or enumeration index")

    p = sub.add_parser("transform", help="apply a local transformation to a type-1 matching")
    _add_family_args(p)
    p.add_argument("--variant", type=int, required=True, choices=[1, 2, 3])
    p.add_argument("--anchor", type=int, required=True)
    p.add_argument("--matching", required=True, help="JSON file of edge serials, or enumeration index")

    p = sub.add_parser("chromatic", help="chromatic index (3 or 4)")
    _add_family_args(p)

    p = sub.add_parser("jaeger", help="Jaeger matchings")
    _add_family_args(p)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--bf-check", action="store_true")

    p = sub.add_parser("words", help="hamiltonian type-2 matchings via block words")
    _add_family_args(p)
    p.add_argument("--list-hamiltonian", action="store_true")

    p = sub.add_parser("verify", help="compare closed forms against enumeration")
    p.add_argument("--kmax", type=int, default=FS_DEFAULT_KMAX)
    p.add_argument("--structural", action="store_true", help="also check chromatic index, hamiltonicity, Jaeger")
    p.add_argument("--csv", default=None, help="write the report as CSV")
    p.add_argument("--excel", default=None, help="write the report as an Excel workbook")
    p.add_argument("--json", action="store_true", help="print rows as JSON instead of a table")
    p.add_argument("--threads", type=int, default=None, help="override FS_THREADS")

    return parser


def load_matching(fs: FSGraph, source: str, threads: Optional[int] = None) -> Matching:
    """Matching from an enumeration index or a JSON file of edge serials."""
    if source.isdigit():
        matchings = enumerate_perfect_matchings(fs, threads)
        index = int(source)
        if index >= len(matchings):
            raise FSError(f"Matching index {index} out of range (FS({fs.j},{fs.k}) has {len(matchings)})")
        return matchings[index]
    if not os.path.exists(source):
        raise FSError(f"Matching file not found: {source}")
    with open(source) as f:
        try:
            serials = json.load(f)
        except json.JSONDecodeError as e:
            raise FSError(f"Matching file {source} is not JSON: {e}")
    if not isinstance(serials, list):
        raise FSError(f"Matching file {source} must hold a JSON array of edge serials")
    return matching_from_serials(fs, serials)


def _serials(values) -> str:
    return json.dumps(list(values))


# ── Subcommands ─────────────────────────────────────────────────────────────

def cmd_build(args, fs: FSGraph) -> int:
    text = fs.graph.to_json() + '\n' if args.format == "json" else fs.graph.to_edgelist()
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text)
        logger.info(f"Wrote FS({fs.j},{fs.k}) to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_count(args, fs: FSGraph) -> int:
    counts = count_by_type(fs, args.threads)
    print(counts.total)
    if args.by_type:
        print(f"type 1: {counts.type1}")
        print(f"type 2.0: {counts.type2_0}")
        print(f"type 2.1: {counts.type2_1}")
    return EXIT_OK


def cmd_enumerate(args, fs: FSGraph) -> int:
    matchings = enumerate_perfect_matchings(fs, args.threads)
    if args.type:
        matchings = filter_by_type(matchings, [MatchingType.parse(args.type)])
    if args.hamiltonian is not None:
        matchings = filter_hamiltonian(matchings, args.hamiltonian)
    for m in limit_results(matchings, args.limit):
        print(_serials(m.serials))
    return EXIT_OK


def cmd_two_factor(args, fs: FSGraph) -> int:
    m = load_matching(fs, args.matching, args.threads)
    tf = complement_two_factor(m)
    kind = type_of(m)
    print(f"type: {kind.value}")
    print(f"lengths: {' '.join(str(n) for n in tf.lengths)}")
    print(f"hamiltonian: {'yes' if is_hamiltonian(tf) else 'no'}")
    if kind == MatchingType.TYPE1 and len(tf.cycles) == 2:
        profile = major_profile(m, tf)
        print(f"majors: {' '.join(str(a) for a in profile.assignment)}")
        print(f"k1: {profile.k1} k2: {profile.k2}")
    elif kind != MatchingType.TYPE1:
        structure = type2_structure(m, tf)
        print(f"long cycle: {structure.long_cycle_length} six-cycles: {structure.six_cycle_count}")
    return EXIT_OK


def cmd_transform(args, fs: FSGraph) -> int:
    m = load_matching(fs, args.matching, args.threads)
    report = transform_report(m, args.variant, args.anchor)
    print(_serials(report.matching))
    print(f"lengths: {report.before_lengths[0]} {report.before_lengths[1]} -> "
          f"{report.after_lengths[0]} {report.after_lengths[1]}")
    print(f"majors before: {' '.join(str(a) for a in report.before_majors)}")
    print(f"majors after: {' '.join(str(a) for a in report.after_majors)}")
    return EXIT_OK


def cmd_chromatic(args, fs: FSGraph) -> int:
    coloring = find_3_edge_coloring(fs)
    if coloring is None:
        print(4)
        return EXIT_OK
    print(3)
    for color, serials in enumerate(coloring.classes()):
        print(f"{color}: {_serials(serials)}")
    return EXIT_OK


def cmd_jaeger(args, fs: FSGraph) -> int:
    found = enumerate_jaeger_matchings(fs, args.threads)
    print(len(found))
    if args.enumerate:
        for m, split in found:
            print(json.dumps({'matching': list(m.serials), 'blue': split.blue, 'red': split.red}))
    if args.bf_check:
        cover = double_cover_candidates([m for m, _ in found])
        if cover is None:
            print(f"berge-fulkerson: skipped ({len(found)} Jaeger matchings, need 3 or 6)")
        else:
            ok = berge_fulkerson_check(cover)
            print(f"berge-fulkerson: {'pass' if ok else 'fail'}")
            if not ok:
                return EXIT_FAILED
    return EXIT_OK


def cmd_words(args, fs: FSGraph) -> int:
    print(hamiltonian_type2_count(fs))
    if args.list_hamiltonian:
        for subtype, words in hamiltonian_words(fs).items():
            for w in words:
                print(f"{w}@{subtype.value}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.kmax < 2:
        raise UsageError(f"--kmax must be at least 2 (got {args.kmax})")
    report = verify_all(args.kmax, structural=args.structural, threads=args.threads)
    rows = report.to_rows()

    if args.json:
        for row in rows:
            print(json.dumps(row))
    else:
        print(report.to_table())
        failed = len(report.failures())
        print(f"{len(rows) - failed}/{len(rows)} checks passed")

    if args.csv:
        write_export(args.csv, export_to_csv(rows, columns=CSV_COLUMNS))
    if args.excel:
        write_export(args.excel, export_to_excel(rows, columns=CSV_COLUMNS))
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    "build": cmd_build,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "two-factor": cmd_two_factor,
    "transform": cmd_transform,
    "chromatic": cmd_chromatic,
    "jaeger": cmd_jaeger,
    "words": cmd_words,
}


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            return cmd_verify(args)
        validate_parameters(args.j, args.k)
        fs = build(args.j, args.k)
        return COMMANDS[args.command](args, fs)
    except (UsageError, FSError) as e:
        print(f"fs: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=FS_LOG_LEVEL, format=LOG_FORMAT, stream=sys.stderr)
    return run(argv)


if __name__ == '__main__':
    sys.exit(main())
