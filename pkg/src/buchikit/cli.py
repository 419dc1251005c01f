"""Command-line frontend.

Subcommands: complement, inclusion, emptiness, analyze, gen.  Automata
and JSON results go to stdout, diagnostics and optional --stats lines to
stderr.  Exit codes are the machine contract: inclusion exits 0 when the
inclusion holds and 1 when violated; emptiness exits 0 for an empty
language and 1 otherwise; every error exits 2 with a prefixed message.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .automata import normalize_colors
from .complement import DEFAULT_MAX_STATES, ComplementConstruction, _materialize
from .emptiness import is_empty
from .errors import CapacityError, FormatError, UnsupportedAcceptanceError
from .hoa import DEFAULT_MAX_APS, parse_ba, parse_hoa, print_hoa
from .inclusion import check_inclusion
from .oracle import random_ba
from .postprocess import trim
from .scc import SccKind, classify, is_elevator


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load(args, path: str):
    text = _read_text(path)
    if args.from_ba:
        return parse_ba(text)
    return parse_hoa(text, max_aps=args.max_aps)


def _add_input_opts(p: argparse.ArgumentParser):
    p.add_argument("--from-ba", action="store_true", help="read .ba instead of HOA")
    p.add_argument(
        "--max-aps",
        type=int,
        default=DEFAULT_MAX_APS,
        metavar="N",
        help="cap on atomic propositions when parsing HOA",
    )


def _cmd_complement(args) -> int:
    started = time.perf_counter()
    ba = _load(args, args.input)
    con = ComplementConstruction(ba, mono_nac=(args.nac_alg == "mono"))
    result, macrostates = _materialize(con, args.max_states)
    if not args.no_postprocess:
        result = trim(result)
    text = print_hoa(result)
    elapsed = (time.perf_counter() - started) * 1000.0
    if args.output is None or args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.stats:
        stats = {
            "in_states": ba.num_states,
            "out_states": result.num_states,
            "macrostates": macrostates,
            "blocks": con.block_counts(),
            "time_ms": round(elapsed, 3),
        }
        print(json.dumps(stats), file=sys.stderr)
    return 0


def _cmd_inclusion(args) -> int:
    started = time.perf_counter()
    a1 = _load(args, args.left)
    a2 = _load(args, args.right)
    res = check_inclusion(a1, a2, max_states=args.max_states)
    elapsed = (time.perf_counter() - started) * 1000.0
    print("inclusion holds" if res.included else "inclusion violated")
    if args.stats:
        stats = {
            "result": res.included,
            "product_states": res.product_states,
            "explored_transitions": res.explored_transitions,
            "time_ms": round(elapsed, 3),
        }
        print(json.dumps(stats), file=sys.stderr)
    return 0 if res.included else 1


def _cmd_emptiness(args) -> int:
    a = _load(args, args.input)
    empty = is_empty(a)
    print("empty" if empty else "non-empty")
    return 0 if empty else 1


def _cmd_analyze(args) -> int:
    a = normalize_colors(_load(args, args.input))
    info = classify(a)
    counts = {kind.value: 0 for kind in SccKind}
    for kind in info.kinds:
        counts[kind.value] += 1
    report = {
        "sccs": info.count,
        "classes": counts,
        "elevator": is_elevator(info),
    }
    print(json.dumps(report))
    return 0


def _cmd_gen(args) -> int:
    if args.states < 1:
        raise ValueError("--states must be at least 1")
    if args.letters < 1:
        raise ValueError("--letters must be at least 1")
    if args.density <= 0:
        raise ValueError("--density must be positive")
    if not 0.0 <= args.acc_prob <= 1.0:
        raise ValueError("--acc-prob must lie in [0, 1]")
    a = random_ba(
        args.seed,
        args.states,
        n_letters=args.letters,
        density=args.density,
        acc_prob=args.acc_prob,
    )
    sys.stdout.write(print_hoa(a))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="buchikit",
        description="Buchi automata complementation and language inclusion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complement", help="complement a Buchi automaton")
    p.add_argument("input", help="input file, or - for stdin")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.add_argument(
        "--nac-alg",
        choices=("rank", "mono"),
        default="rank",
        help="rank: decomposed per-class algorithms; mono: one rank block per accepting SCC",
    )
    p.add_argument("--no-postprocess", action="store_true", help="skip trimming")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES, metavar="N")
    p.add_argument("--stats", action="store_true", help="print a JSON stats line to stderr")
    _add_input_opts(p)
    p.set_defaults(func=_cmd_complement)

    p = sub.add_parser("inclusion", help="decide language inclusion L(A1) <= L(A2)")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES, metavar="N")
    p.add_argument("--stats", action="store_true", help="print a JSON stats line to stderr")
    _add_input_opts(p)
    p.set_defaults(func=_cmd_inclusion)

    p = sub.add_parser("emptiness", help="decide language emptiness")
    p.add_argument("input")
    _add_input_opts(p)
    p.set_defaults(func=_cmd_emptiness)

    p = sub.add_parser("analyze", help="classify strongly connected components")
    p.add_argument("input")
    _add_input_opts(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("gen", help="generate a seeded random Buchi automaton")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--letters", type=int, default=2)
    p.add_argument("--density", type=float, default=1.2)
    p.add_argument("--acc-prob", type=float, default=0.3)
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedAcceptanceError as e:
        print(f"unsupported-acceptance: {e}", file=sys.stderr)
        return 2
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return 2
    except (FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
