"""Command-line front end.

Every command prints exactly one JSON document on stdout (``closure`` can
emit DOT instead) and logs to stderr.  Exit codes: 0 for success or an
isomorphic verdict, 1 for a non-isomorphic verdict, 2 for any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Sequence

from .errors import GBSError, MalformedInput
from .fullreduce import full_reduce
from .graph import EdgeIndexedGraph, parse_graph
from .moduli import has_nontrivial_integral_modulus, integral_coset, modular_group
from .moves import classify_elementary, deformation_from_json, deformation_to_json, reduce
from .rewrite import MoveSequenceRun, normalize_CSE
from .slidespace import Verdict, decide_isomorphic, default_max_states, slide_closure

log = logging.getLogger("gbs")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> EdgeIndexedGraph:
    return parse_graph(_read(path))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _frac(q: Fraction) -> str:
    return str(q)


def cmd_validate(args) -> int:
    g = _load_graph(args.file)
    _emit({"valid": True, "vertices": g.num_vertices, "edges": g.num_pairs, "betti": g.betti})
    return 0


def cmd_reduce(args) -> int:
    g = _load_graph(args.file)
    h, moves = reduce(g)
    _emit({
        "graph": h.to_dict(),
        "deformation": deformation_to_json(g, moves),
        "elementary": classify_elementary(h).value,
    })
    return 0


def invariants(g: EdgeIndexedGraph) -> dict:
    lat = modular_group(g)
    return {
        "betti": g.betti,
        "primes": lat.primes,
        "unsigned_generators": [_frac(q) for q in lat.unsigned],
        "signed_generators": [_frac(q) for q in lat.signed],
        "orientation": lat.orientation,
        "integral_moduli": has_nontrivial_integral_modulus(lat),
    }


def cmd_invariants(args) -> int:
    _emit(invariants(_load_graph(args.file)))
    return 0


def cmd_coset(args) -> int:
    g = _load_graph(args.file)
    try:
        r = Fraction(args.r)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"not a rational number: {args.r!r}") from None
    if r == 0:
        raise MalformedInput("r must be non-zero")
    found = integral_coset(r, modular_group(g), args.bound)
    _emit({"r": _frac(abs(r)), "bound": args.bound, "integers": sorted(found)})
    return 0


def cmd_fullreduce(args) -> int:
    g = _load_graph(args.file)
    t0 = time.perf_counter()
    h, moves, exhaustive = full_reduce(g, args.depth)
    log.info("full reduction: %d moves in %.4fs", len(moves), time.perf_counter() - t0)
    if not exhaustive:
        log.warning("admissible-path search hit depth %d; result may not be fully reduced", args.depth)
    _emit({
        "graph": h.to_dict(),
        "deformation": deformation_to_json(g, moves),
        "exhaustive": exhaustive,
        "depth": args.depth,
    })
    return 0


def cmd_closure(args) -> int:
    g = _load_graph(args.file)
    h, _ = reduce(g)
    budget = args.max_states if args.max_states is not None else default_max_states()
    closure = slide_closure(h, budget)
    log.info("closure: %d states, %d transitions", len(closure), len(closure.transitions))
    if args.format == "dot":
        sys.stdout.write(closure.to_dot())
    else:
        _emit(closure.to_json())
    return 0


def cmd_iso(args) -> int:
    ga, gb = _load_graph(args.a), _load_graph(args.b)
    verdict = decide_isomorphic(ga, gb, args.max_states)
    _emit({"verdict": verdict.value})
    return 0 if verdict is Verdict.Isomorphic else 1


def cmd_normalize(args) -> int:
    g = _load_graph(args.graph)
    try:
        records = json.loads(_read(args.deformation))
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    moves, _ = deformation_from_json(g, records)
    out = normalize_CSE(MoveSequenceRun(g, tuple(moves)))
    _emit({
        "deformation": deformation_to_json(g, out.moves),
        "pattern": out.pattern(),
        "graph": out.end.to_dict(),
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gbs", description="Generalized Baumslag-Solitar graphs of groups")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and check a graph")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("reduce", help="collapse until reduced")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("invariants", help="modular and orientation invariants")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("coset", help="integers in r times the modular group")
    s.add_argument("file")
    s.add_argument("r", help="non-zero rational, e.g. 4 or 1/2")
    s.add_argument("--bound", type=int, default=10)
    s.set_defaults(func=cmd_coset)

    s = sub.add_parser("fullreduce", help="deform to a fully reduced graph")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=16, help="admissible-path search depth")
    s.set_defaults(func=cmd_fullreduce)

    s = sub.add_parser("closure", help="slide closure of the reduced graph")
    s.add_argument("file")
    s.add_argument("--max-states", type=int, default=None)
    s.add_argument("--format", choices=("json", "dot"), default="json")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("iso", help="decide isomorphism of the two groups")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--max-states", type=int, default=None)
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("normalize", help="rewrite a deformation into C* S* E* form")
    s.add_argument("graph")
    s.add_argument("deformation")
    s.set_defaults(func=cmd_normalize)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except GBSError as exc:
        _emit(exc.to_record())
        return 2


if __name__ == "__main__":
    sys.exit(main())
