"""Command-line front end.

Exit codes: 0 for success or equivalence, 1 for inequivalence or a verify
run with violations, 2 for usage and input errors (reported as a JSON
error object on stdout).
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from pathlib import Path
from typing import Sequence

from . import io
from .counterexample import build_counterexample
from .decomposition import Decomposed, tree_depth
from .enumeration import enum_conn_tdk, enum_decomposed, enum_graphs
from .exceptions import InputError, TdhomError
from .games import ck_equivalent, fo_equivalent
from .homcount import emb_count, epi_count, hom_count, hom_vector
from .restricted import pi_hom_count, pp_hom_count, s_epi_count
from .suites import SUITES
from .witness import distinguishing_pattern

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _parse_pins(items: Sequence[str] | None) -> dict[int, int]:
    pins = {}
    for item in items or ():
        try:
            u, v = item.split("=")
            pins[int(u)] = int(v)
        except ValueError as exc:
            raise UsageError(f"pin must look like u=v, got {item!r}") from exc
    return pins


def _palette_arg(text: str | None):
    if text is None:
        return None
    colors = tuple(c for c in text.split(",") if c)
    if not colors:
        raise UsageError("palette must name at least one colour")
    return colors


# --- subcommands ------------------------------------------------------------

def cmd_hom(args) -> int:
    pattern = io.load_pattern(args.pattern)
    target = io.load_graph(args.target)
    pins = _parse_pins(args.pin)
    kind = args.kind
    if kind in ("hom", "emb", "epi"):
        f = pattern.graph if isinstance(pattern, Decomposed) else pattern
        count = {"hom": hom_count, "emb": emb_count, "epi": epi_count}[kind](f, target, pins)
    else:
        if not isinstance(pattern, Decomposed):
            raise UsageError(f"--kind {kind} needs a decomposed pattern (JSON with 'parent')")
        if kind == "pihom":
            count = pi_hom_count(pattern, target, pins)
        elif kind == "pphom":
            count = pp_hom_count(pattern, target, pins)
        else:
            if pins:
                raise UsageError("--pin is not supported for sepi")
            emb = None
            if args.embedding:
                try:
                    emb = [int(x) for x in args.embedding.split(",")]
                except ValueError as exc:
                    raise UsageError("embedding must be comma-separated vertex ids") from exc
                if len(emb) != target.n:
                    raise UsageError(f"embedding has {len(emb)} entries for {target.n} target vertices")
            count = s_epi_count(pattern, target, emb)
    print(count)
    return EXIT_OK


def cmd_treedepth(args) -> int:
    g = io.load_graph(args.graph)
    depth, forest = tree_depth(g)
    _emit({"depth": depth, "witness": {"roots": forest.roots, "parent": forest.to_dict()}})
    return EXIT_OK


def cmd_equiv(args) -> int:
    g, g2 = io.load_graph(args.g1), io.load_graph(args.g2)
    if args.logic == "C":
        if args.k < 1:
            raise UsageError("--k must be at least 1 for counting logic")
        eq = ck_equivalent(g, g2, args.k)
    else:
        if args.k < 0:
            raise UsageError("--k must be nonnegative")
        eq = fo_equivalent(g, g2, args.k)
    out = {"equivalent": eq, "logic": args.logic, "k": args.k, "orders": [g.n, g2.n]}
    if args.witness and not eq and args.logic == "C":
        dist = distinguishing_pattern(g, g2, args.k, args.budget)
        out["witness"] = dist.to_dict() if dist else None
        out["budget"] = args.budget
    _emit(out)
    return EXIT_OK if eq else EXIT_NEGATIVE


def cmd_homvec(args) -> int:
    g = io.load_graph(args.graph)
    vec = hom_vector(g, args.k, args.n, _palette_arg(args.palette))
    _emit({
        "k": vec.k,
        "size_bound": vec.size_bound,
        "palette": list(vec.palette),
        "entries": [
            {"pattern": io.graph_to_dict(f), "count": str(c)}
            for f, c in zip(vec.patterns, vec.entries.values())
        ],
    })
    return EXIT_OK


def cmd_enum(args) -> int:
    palette = _palette_arg(args.palette) or ("white",)
    if args.kind == "graphs":
        items = enum_graphs(args.n, palette)
    elif args.kind == "conn-tdk":
        items = enum_conn_tdk(args.k, args.n, palette)
    else:
        items = enum_decomposed(args.k, args.n, palette)
    io.write_jsonl(items, sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    fn = SUITES[args.suite]
    accepted = inspect.signature(fn).parameters
    options = {
        "n": args.n, "k": args.k, "budget": args.budget, "jobs": args.jobs, "seed": args.seed,
        "colors": args.colors, "samples": args.samples, "m": args.m, "trials": args.trials,
    }
    kwargs = {key: v for key, v in options.items() if v is not None and key in accepted}
    ignored = sorted(key for key, v in options.items() if v is not None and key not in accepted and key != "jobs")
    if ignored:
        print(f"suite {args.suite} ignores: {', '.join(ignored)}", file=sys.stderr)
    report = fn(**kwargs)
    report["command"] = ["verify", "--suite", args.suite]
    _emit(report)
    return EXIT_OK if not report["violations"] else EXIT_NEGATIVE


def cmd_counterexample(args) -> int:
    bundle = build_counterexample(args.m, args.max_i)
    report = {"schema": "tdhom.counterexample/1", **bundle.to_dict()}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "G.json").write_text(io.dumps(bundle.g) + "\n")
        (out / "Gprime.json").write_text(io.dumps(bundle.g2) + "\n")
        with open(out / "family.jsonl", "w") as fh:
            io.write_jsonl([f for _, f in bundle.family()], fh)
        (out / "report.json").write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
        report["out"] = str(out)
    _emit(report)
    return EXIT_OK if bundle.checks["ok"] else EXIT_NEGATIVE


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tdhom", description="Homomorphism counts, tree depth and counting-logic games.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    hom = sub.add_parser("hom", help="count maps between graphs")
    hom_sub = hom.add_subparsers(dest="action", required=True, parser_class=_Parser)
    count = hom_sub.add_parser("count", help="print a count as a decimal integer")
    count.add_argument("--kind", choices=["hom", "emb", "epi", "pihom", "pphom", "sepi"], default="hom")
    count.add_argument("--pattern", required=True)
    count.add_argument("--target", required=True)
    count.add_argument("--pin", action="append", metavar="U=V")
    count.add_argument("--embedding", help="for sepi: pattern vertex of each target vertex, comma-separated")
    count.set_defaults(func=cmd_hom)

    td = sub.add_parser("treedepth", help="exact tree depth with an optimal elimination forest")
    td.add_argument("--graph", required=True)
    td.set_defaults(func=cmd_treedepth)

    eq = sub.add_parser("equiv", help="decide C_k or FO_k equivalence by the game")
    eq.add_argument("--k", type=int, required=True)
    eq.add_argument("--logic", choices=["C", "FO"], default="C")
    eq.add_argument("--witness", action="store_true", help="search a distinguishing pattern when inequivalent")
    eq.add_argument("--budget", type=int, default=7)
    eq.add_argument("g1")
    eq.add_argument("g2")
    eq.set_defaults(func=cmd_equiv)

    hv = sub.add_parser("homvec", help="hom counts from connected patterns of bounded tree depth")
    hv.add_argument("--graph", required=True)
    hv.add_argument("--k", type=int, required=True)
    hv.add_argument("--n", type=int, required=True, help="pattern size bound")
    hv.add_argument("--palette")
    hv.set_defaults(func=cmd_homvec)

    en = sub.add_parser("enum", help="enumerate graphs as JSON lines")
    en.add_argument("--kind", choices=["graphs", "conn-tdk", "decomposed"], default="graphs")
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--k", type=int, default=1)
    en.add_argument("--palette")
    en.set_defaults(func=cmd_enum)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("--suite", choices=sorted(SUITES), required=True)
    ve.add_argument("--n", type=int)
    ve.add_argument("--k", type=int)
    ve.add_argument("--budget", type=int)
    ve.add_argument("--jobs", type=int)
    ve.add_argument("--seed", type=int)
    ve.add_argument("--colors", type=int)
    ve.add_argument("--samples", type=int)
    ve.add_argument("--trials", type=int)
    ve.add_argument("--m", type=int)
    ve.set_defaults(func=cmd_verify)

    ce = sub.add_parser("counterexample", help="build the star counterexample")
    ce.add_argument("--m", type=int, required=True)
    ce.add_argument("--max-i", type=int, default=3)
    ce.add_argument("--out")
    ce.set_defaults(func=cmd_counterexample)
    return p


def dispatch(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except TdhomError as exc:
        kind = "usage" if isinstance(exc, UsageError) else type(exc).__name__
        _emit({"error": {"type": kind, "message": str(exc)}})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
