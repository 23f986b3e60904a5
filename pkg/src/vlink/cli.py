"""Command-line entry point.

Code arguments are either inline Gauss codes or paths to code files (one link
per line, ``#`` comments).  Exit status: 0 success, 1 domain error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Callable, Sequence

from . import algebra, codes, invariants, moves, presentations, surface
from .records import RECORDS

DEFAULT_SEED = 0


def seed() -> int:
    return int(os.environ.get("VLINK_SEED", DEFAULT_SEED))


class UsageError(Exception):
    pass


def load_codes(arg: str | None, inline: str | None = None) -> list[codes.GaussCode]:
    if inline is not None:
        return [codes.parse_code(inline)]
    if arg is None:
        raise UsageError("give a code file or --code")
    if os.path.isfile(arg):
        return codes.read_codes(arg)
    return [codes.parse_code(arg)]


def load_code(arg: str | None, inline: str | None = None) -> codes.GaussCode:
    found = load_codes(arg, inline)
    if len(found) != 1:
        raise UsageError(f"expected one code, got {len(found)}")
    return found[0]


def load_target(spec: str) -> invariants.ColoringTarget:
    if os.path.isfile(spec):
        return invariants.ColoringTarget(os.path.basename(spec), algebra.read_table_file(spec))
    return invariants.builtin_target(spec)


def load_text(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


# ----------------------------------------------------------------- commands

def cmd_validate(args, out):
    for c in load_codes(args.source, args.code):
        print(f"ok {codes.serialize_code(c)}", file=out)


def cmd_genus(args, out):
    for c in load_codes(args.source, args.code):
        print(codes.carrier_genus(c), file=out)


def cmd_mirror(args, out):
    for c in load_codes(args.source, args.code):
        print(codes.serialize_code(codes.mirror(c, horizontal=args.horizontal)), file=out)


def cmd_reverse(args, out):
    for c in load_codes(args.source, args.code):
        print(codes.serialize_code(codes.reverse(c)), file=out)


def cmd_present(args, out):
    for c in load_codes(args.source, args.code):
        p = presentations.presentation(c, args.theory)
        if args.theory == "group" and args.longitude:
            p = presentations.with_longitude(c)
        print(presentations.format_presentation(p), end="", file=out)


def cmd_color(args, out):
    target = load_target(args.target)
    theory = args.theory or target.theory
    for c in load_codes(args.source, args.code):
        p = presentations.presentation(c, theory)
        print(invariants.count_colorings(p, target, surjective=args.surjective), file=out)


def cmd_report(args, out):
    for c in load_codes(args.source, args.code):
        r = invariants.report(c)
        if args.format == "json":
            print(json.dumps(r.to_json(), indent=2), file=out)
        else:
            print(r.to_text(), end="", file=out)


def cmd_moves_sites(args, out):
    c = load_code(args.source, args.code)
    sites = moves.enumerate_sites(c, moves.MoveKind(args.kind))
    if args.sample is not None and args.sample < len(sites):
        s = seed()
        print(f"seed {s}", file=sys.stderr)
        sites = random.Random(s).sample(sites, args.sample)
    for site in sites:
        print(moves.format_site(site), file=out)


def cmd_moves_apply(args, out):
    c = load_code(args.source, args.code)
    print(codes.serialize_code(moves.apply_move(c, moves.parse_site(args.site))), file=out)


def cmd_moves_search(args, out):
    a, b = load_code(args.a), load_code(args.b)
    kinds = moves.WELDED_MOVES if args.welded else moves.R_MOVES
    res = moves.search_equivalence(a, b, kinds, max_crossings=args.max_crossings,
                                   max_steps=args.max_steps, max_depth=args.max_depth)
    print(f"{res.verdict} expanded={res.expanded} visited={res.visited}", file=out)
    for site in res.path:
        print(moves.format_site(site), file=out)
    if not res.found:
        return 1


def cmd_surface_spin(args, out):
    sp = surface.spin(load_code(args.source, args.code))
    if args.theory:
        print(presentations.format_presentation(surface.presentation_from_surface(sp, args.theory)),
              end="", file=out)
    else:
        print(json.dumps(sp.to_json(), indent=2), file=out)


def cmd_surface_sgc(args, out):
    sgc = surface.spin_surface_gauss(load_code(args.source, args.code))
    print(json.dumps(sgc.to_json(), indent=2), file=out)


def cmd_surface_validate(args, out):
    data = json.loads(load_text(args.file))
    if "sheets" in data:
        surface.SurfacePresentation.from_json(data)
        print("valid", file=out)
        return 0
    problems = surface.validate_surface_gauss(surface.SurfaceGaussCode.from_json(data))
    if not problems:
        print("valid", file=out)
        return 0
    for clause, msg in problems:
        print(f"clause {clause}: {msg}", file=out)
    return 1


def _verdict_text(v) -> str:
    if isinstance(v, surface.CertifiedTrivial):
        return "certified-trivial " + " ".join(moves.format_site(s) for s in v.path)
    if isinstance(v, surface.Separated):
        return f"separated {v.target} {v.count} != {v.unlink_count}"
    return "indistinguishable"


def cmd_yoshikawa_smooth(args, out):
    yd = surface.parse_yoshikawa(load_text(args.diagram))
    print(codes.serialize_code(surface.smooth(yd, args.choice)), file=out)


def cmd_yoshikawa_validate(args, out):
    yd = surface.parse_yoshikawa(load_text(args.diagram))
    v = surface.validate_yoshikawa(yd, args.depth)
    print(f"A: {_verdict_text(v.a).rstrip()}", file=out)
    print(f"B: {_verdict_text(v.b).rstrip()}", file=out)
    print("accepted" if v.accepted else "rejected", file=out)
    return 0 if v.accepted else 1


def cmd_algebra_validate(args, out):
    obj = algebra.read_table_file(args.file)  # constructors raise on failed axioms
    print(f"valid {type(obj).__name__} of order {obj.order}", file=out)


def cmd_algebra_make(args, out):
    kind, params = args.kind, args.params
    try:
        if kind == "dihedral":
            obj = algebra.dihedral_quandle(int(params[0]))
        elif kind == "alexander":
            n, s, t = map(int, params)
            obj = algebra.alexander_biquandle(n, s, t)
        elif kind == "conj":
            groups = algebra.builtin_groups()
            if params[0] not in groups:
                raise UsageError(f"unknown group {params[0]!r}; choose from {', '.join(groups)}")
            obj = algebra.conjugation_quandle(groups[params[0]])
        elif kind == "coset":
            obj = invariants.s3_coset_quandle()
        else:
            obj = algebra.quandle_to_biquandle(algebra.dihedral_quandle(int(params[0])))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, algebra.AlgebraError):
            raise
        raise UsageError(f"bad parameters for {kind}: {' '.join(params)}") from exc
    print(algebra.format_table_text(obj), end="", file=out)


def selftest(fixtures: dict[str, tuple[str, dict]] | None = None) -> list[str]:
    """Recompute each fixture's validation record; return the mismatches."""
    if fixtures is None:
        text = dict(codes._CORPUS_TEXT)
        fixtures = {name: (text[name], rec) for name, rec in RECORDS.items()}
    problems = []
    for name, (code_text, rec) in fixtures.items():
        c = codes.parse_code(code_text)
        r = invariants.report(c)
        if r.genus != rec["genus"]:
            problems.append(f"{name}: genus {r.genus} != {rec['genus']}")
        if r.rank != rec["rank"]:
            problems.append(f"{name}: rank {r.rank} != {rec['rank']}")
        got = dict(r.counts)
        for t, want in rec["counts"].items():
            if got.get(t) != want:
                problems.append(f"{name}: {t} count {got.get(t)} != {want}")
    return problems


def cmd_selftest(args, out):
    problems = selftest()
    for p in problems:
        print(p, file=out)
    print(f"{len(RECORDS)} fixtures, {len(problems)} mismatches", file=out)
    return 1 if problems else 0


# Subcommand -> the library operation it exposes.
REGISTRY: dict[str, Callable] = {
    "validate": codes.parse_code,
    "genus": codes.carrier_genus,
    "mirror": codes.mirror,
    "reverse": codes.reverse,
    "present": presentations.presentation,
    "color": invariants.count_colorings,
    "report": invariants.report,
    "moves sites": moves.enumerate_sites,
    "moves apply": moves.apply_move,
    "moves search": moves.search_equivalence,
    "surface spin": surface.spin,
    "surface sgc": surface.spin_surface_gauss,
    "surface validate": surface.validate_surface_gauss,
    "yoshikawa smooth": surface.smooth,
    "yoshikawa validate": surface.validate_yoshikawa,
    "algebra validate": algebra.read_table_file,
    "algebra make": algebra.format_table_text,
    "selftest": selftest,
}


def _code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("source", nargs="?", help="code file or inline code")
    p.add_argument("--code", help="inline Gauss code")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vlink", description="Virtual link toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, extra in (("validate", cmd_validate, None), ("genus", cmd_genus, None),
                            ("mirror", cmd_mirror, "horizontal"), ("reverse", cmd_reverse, None)):
        p = sub.add_parser(name)
        _code_args(p)
        if extra:
            p.add_argument("--horizontal", action="store_true",
                           help="flip signs only instead of swapping over and under")
        p.set_defaults(func=fn)

    p = sub.add_parser("present")
    p.add_argument("theory", choices=("group", "quandle", "biquandle"))
    _code_args(p)
    p.add_argument("--longitude", action="store_true", help="add meridian and longitude lines")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("color")
    _code_args(p)
    p.add_argument("--target", required=True, help="table file or builtin name")
    p.add_argument("--theory", choices=("group", "quandle", "biquandle"))
    p.add_argument("--surjective", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("report")
    _code_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_report)

    mv = sub.add_parser("moves").add_subparsers(dest="action", required=True)
    p = mv.add_parser("sites")
    _code_args(p)
    p.add_argument("--kind", required=True, choices=[k.value for k in moves.MoveKind])
    p.add_argument("--sample", type=int, help="seeded sample of this many sites")
    p.set_defaults(func=cmd_moves_sites)
    p = mv.add_parser("apply")
    _code_args(p)
    p.add_argument("--site", required=True)
    p.set_defaults(func=cmd_moves_apply)
    p = mv.add_parser("search")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--welded", action="store_true", help="allow the forbidden move")
    p.add_argument("--max-crossings", type=int, default=6)
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("--max-depth", type=int)
    p.set_defaults(func=cmd_moves_search)

    sf = sub.add_parser("surface").add_subparsers(dest="action", required=True)
    p = sf.add_parser("spin")
    _code_args(p)
    p.add_argument("--theory", choices=("group", "quandle", "biquandle"),
                   help="print the presentation instead of the JSON diagram")
    p.set_defaults(func=cmd_surface_spin)
    p = sf.add_parser("sgc")
    _code_args(p)
    p.set_defaults(func=cmd_surface_sgc)
    p = sf.add_parser("validate")
    p.add_argument("file", help="JSON file or inline JSON")
    p.set_defaults(func=cmd_surface_validate)

    yo = sub.add_parser("yoshikawa").add_subparsers(dest="action", required=True)
    p = yo.add_parser("smooth")
    p.add_argument("diagram")
    p.add_argument("--choice", choices=("A", "B"), default="A")
    p.set_defaults(func=cmd_yoshikawa_smooth)
    p = yo.add_parser("validate")
    p.add_argument("diagram")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_yoshikawa_validate)

    al = sub.add_parser("algebra").add_subparsers(dest="action", required=True)
    p = al.add_parser("validate")
    p.add_argument("file")
    p.set_defaults(func=cmd_algebra_validate)
    p = al.add_parser("make")
    p.add_argument("kind", choices=("dihedral", "alexander", "conj", "coset", "promoted"))
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_algebra_make)

    p = sub.add_parser("selftest")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out) or 0
    except UsageError as exc:
        print(f"vlink: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"vlink: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
