"""Command-line front end: ``petrigame <command> --net NET ...``.

Exit codes:
  synthesize  0 realizable, 1 unrealizable, 2 error
  check       0 holds, 1 fails or vacuous, 2 error
  oracle      0 every cross-check agrees, 1 a disagreement or an undecided trace, 2 error
  explain     0 ok, 2 error
  encode      0 ok, 2 error
"""

from __future__ import annotations

import argparse
import json
import sys

from . import game as game_mod
from . import kripke
from . import marking_graph as mg_mod
from .errors import PetriGameError
from .ltl import parse_formula
from .marking_graph import DEFAULT_STATE_CAP
from .net import load_net
from .oracle import cross_check
from .regions import DEFAULT_CLOSURE_CAP, region_table
from .strategy import Strategy, load_strategy, net_strategy
from .synthesis import candidate_strategies, check_strategy, lasso_dict, prepare, search

GOAL_HELP = (
    "goal formula over place names. Operators: ! & | -> U R F G, parentheses, "
    "true, false. Unary operators bind tightest, then U/R (right associative), "
    "then &, then |, then -> (right associative). X is not allowed."
)


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petrigame",
        description="Strategy synthesis for 1-safe Petri net games with partial observation.",
        epilog=__doc__.split("\n", 2)[2],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, goal=False, strategy=False):
        p.add_argument("--net", required=True, help="net JSON file")
        if goal:
            p.add_argument("--goal", required=True, help=GOAL_HELP)
        if strategy:
            p.add_argument("--strategy", required=strategy == "required",
                           help="strategy JSON file")
        p.add_argument("--state-cap", type=_positive, default=DEFAULT_STATE_CAP)
        p.add_argument("--closure-cap", type=_positive, default=DEFAULT_CLOSURE_CAP)
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("synthesize", help="search for a winning strategy")
    common(p, goal=True)
    p.add_argument("--jobs", type=_positive, default=1, help="parallel strategy checks")

    p = sub.add_parser("check", help="check a given strategy")
    common(p, goal=True, strategy="required")

    p = sub.add_parser("explain", help="dump intermediate artifacts")
    common(p, strategy="optional")
    for flag, text in [
        ("--mg", "marking graph (JSON)"),
        ("--dot-mg", "marking graph (DOT)"),
        ("--regions", "observable region closure (JSON)"),
        ("--stable", "stable part and observation per state (JSON)"),
        ("--game", "derived game structure (JSON)"),
        ("--dot-game", "derived game structure (DOT)"),
        ("--kripke", "Kripke encoding under --strategy (JSON)"),
    ]:
        p.add_argument(flag, action="store_true", help=text)

    p = sub.add_parser("oracle", help="cross-check the model checker against bounded plays")
    common(p, goal=True, strategy="optional")
    p.add_argument("--bound", type=_positive, default=None,
                   help="step bound (default: number of game states)")

    p = sub.add_parser("encode", help="Kripke encoding of a strategy")
    common(p, strategy="required")
    p.add_argument("--dot", action="store_true", help="DOT instead of JSON")
    return parser


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _synthesize(args) -> int:
    goal = parse_formula(args.goal)
    pipe = prepare(load_net(args.net), args.state_cap, args.closure_cap)
    result = search(pipe.game, goal, args.jobs)
    _emit(result.to_dict(pipe.game))
    return 0 if result.realizable else 1


def _check(args) -> int:
    goal = parse_formula(args.goal)
    pipe = prepare(load_net(args.net), args.state_cap, args.closure_cap)
    f = load_strategy(pipe.game, args.strategy)
    verdict = check_strategy(pipe.game, f, goal)
    if args.json:
        _emit({"verdict": verdict.kind, **lasso_dict(pipe.game, f, verdict)})
    else:
        print(verdict.kind)
        if verdict.fails:
            lasso = lasso_dict(pipe.game, f, verdict)
            for part in ("stem", "cycle"):
                print(f"{part}:")
                for step in lasso[part]:
                    via = f" --{step['transition']}-->" if "transition" in step else ""
                    print(f"  [{step['kind']}] {{{', '.join(step['marking'])}}}{via}")
    return 0 if verdict.holds else 1


def _stable_table(g) -> list[dict]:
    net = g.net
    return [
        {
            "state": s,
            "marking": net.names(g.extnet.project(m)),
            "stable": net.names(g.stable[s]),
            "observation": net.names(g.observation(g.class_of(s))),
            "class": g.class_of(s),
        }
        for s, m in enumerate(g.markings)
    ]


def _explain(args) -> int:
    flags = ["mg", "dot_mg", "regions", "stable", "game", "dot_game", "kripke"]
    if not any(getattr(args, f) for f in flags):
        raise PetriGameError("explain needs at least one of --mg --dot-mg --regions --stable "
                             "--game --dot-game --kripke")
    pipe = prepare(load_net(args.net), args.state_cap, args.closure_cap)
    g = pipe.game
    report = {}
    if args.mg:
        report["marking_graph"] = mg_mod.to_dict(pipe.mg)
    if args.regions:
        report["regions"] = region_table(pipe.extnet, pipe.closure)
    if args.stable:
        report["stable"] = _stable_table(g)
    if args.game:
        report["game"] = game_mod.game_to_dict(g)
    if args.kripke:
        f = load_strategy(g, args.strategy) if args.strategy else Strategy()
        report["kripke"] = kripke.to_dict(kripke.encode(g, f))
    if report:
        _emit(report)
    if args.dot_mg:
        print(mg_mod.to_dot(pipe.mg), end="")
    if args.dot_game:
        print(game_mod.to_dot(g), end="")
    return 0


def _oracle(args) -> int:
    goal = parse_formula(args.goal)
    pipe = prepare(load_net(args.net), args.state_cap, args.closure_cap)
    g = pipe.game
    bound = args.bound or len(g)
    strategies = [load_strategy(g, args.strategy)] if args.strategy else list(candidate_strategies(g))
    rows = []
    for f in strategies:
        c = cross_check(g, f, goal, bound)
        rows.append({"strategy": net_strategy(g, f).to_dict(), **c.to_dict()})
    ok = all(r["agree"] is True for r in rows)
    if args.json:
        _emit({"bound": bound, "agree": ok, "checks": rows})
    else:
        for i, r in enumerate(rows):
            state = {True: "agree", False: "DISAGREE", None: "undecided"}[r["agree"]]
            print(f"strategy {i}: checker={r['checker']} traces={r['traces']} sat={r['sat']} "
                  f"viol={r['viol']} unknown={r['unknown']} -> {state}")
        print("all agree" if ok else "not all agree")
    return 0 if ok else 1


def _encode(args) -> int:
    pipe = prepare(load_net(args.net), args.state_cap, args.closure_cap)
    model = kripke.encode(pipe.game, load_strategy(pipe.game, args.strategy))
    if args.dot:
        print(kripke.to_dot(model), end="")
    else:
        _emit(kripke.to_dict(model))
    return 0


COMMANDS = {"synthesize": _synthesize, "check": _check, "explain": _explain,
            "oracle": _oracle, "encode": _encode}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (PetriGameError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
