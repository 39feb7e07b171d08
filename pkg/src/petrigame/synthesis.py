"""Strategy search: enumerate observation-based strategies and model-check each."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Iterator

from .errors import UnknownAtom
from .game import EPSILON, GameStructure, derive_game
from .kripke import encode
from .ltl import Formula, Not, Prop, Verdict, atoms, check_fair, conjunction
from .ltl.formula import Eventually
from .marking_graph import DEFAULT_STATE_CAP, build_marking_graph
from .net import NetSystem
from .regions import DEFAULT_CLOSURE_CAP, ExtendedNet, extend_net, observable_closure
from .strategy import NetStrategy, Strategy, net_strategy, validate_strategy


@dataclass(frozen=True)
class Pipeline:
    """Intermediate artifacts shared by synthesis, checking and explanation."""

    net: NetSystem
    closure: tuple
    extnet: ExtendedNet
    game: GameStructure

    @property
    def mg(self):
        return self.extnet.base_mg


def prepare(net: NetSystem, state_cap: int = DEFAULT_STATE_CAP,
            closure_cap: int = DEFAULT_CLOSURE_CAP) -> Pipeline:
    mg = build_marking_graph(net, state_cap)
    closure = observable_closure(mg, net.observable, closure_cap)
    ext = extend_net(net, mg, closure)
    return Pipeline(net, tuple(closure), ext, derive_game(ext, state_cap))


def _reached_classes(game: GameStructure, choices: dict[int, int | None]) -> list[int]:
    """Classes of states reachable under a partial assignment.

    Controllable edges are followed only out of assigned classes; the result
    keeps first-reach order.
    """
    seen = {game.initial}
    order = [game.initial]
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        c = game.class_of(s)
        sel = choices.get(c, EPSILON)
        for t, d in game.succ[s].items():
            if (t in game.env_moves[s] or t == sel) and d not in seen:
                seen.add(d)
                order.append(d)
    return sorted({game.class_of(s) for s in order})


def _options(game: GameStructure, c: int) -> tuple:
    return tuple(game.class_options[c]) + (EPSILON,)


def enumerate_candidates(game: GameStructure) -> Iterator[tuple[Strategy, int]]:
    """Depth-first stream of (strategy, weight).

    Only classes reachable under the choices made so far are branched on;
    weight counts the full assignments a candidate stands for.
    """
    stack: list[dict[int, int | None]] = [{}]
    while stack:
        choices = stack.pop()
        open_classes = [c for c in _reached_classes(game, choices) if c not in choices]
        if not open_classes:
            free = [c for c in range(len(game.partition)) if c not in choices]
            yield Strategy.of(choices), prod(len(_options(game, c)) for c in free)
            continue
        c = open_classes[0]
        for t in reversed(_options(game, c)):
            stack.append({**choices, c: t})


def candidate_strategies(game: GameStructure) -> Iterator[Strategy]:
    for f, _ in enumerate_candidates(game):
        yield f


def naive_strategy_count(game: GameStructure) -> int:
    return prod(len(_options(game, c)) for c in range(len(game.partition)))


def _check_goal_atoms(game: GameStructure, goal: Formula):
    base = {p.name for p in game.extnet.base.places}
    unknown = sorted(atoms(goal) - base)
    if unknown:
        raise UnknownAtom(f"goal mentions unknown place(s): {', '.join(unknown)}")


def check_strategy(game: GameStructure, f: Strategy, goal: Formula) -> Verdict:
    _check_goal_atoms(game, goal)
    validate_strategy(game, f)
    model = encode(game, f)
    return check_fair(model, goal, model.fairness)


@dataclass
class SynthesisResult:
    realizable: bool
    strategy: Strategy | None = None
    net_strategy: NetStrategy | None = None
    counterexamples: list[tuple[Strategy, Verdict]] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_dict(self, game: GameStructure | None = None) -> dict:
        out = {"result": "realizable" if self.realizable else "unrealizable", "stats": self.stats}
        if self.net_strategy is not None:
            out["strategy"] = self.net_strategy.to_dict()
        if not self.realizable and game is not None:
            out["counterexamples"] = [
                {"strategy": net_strategy(game, f).to_dict(), "verdict": v.kind,
                 **lasso_dict(game, f, v)}
                for f, v in self.counterexamples
            ]
        return out


def lasso_dict(game: GameStructure, f: Strategy, v: Verdict) -> dict:
    """Stem and cycle of a failing verdict as marking name lists."""
    if not v.fails:
        return {}
    model = encode(game, f)
    net = game.net

    def show(k):
        org = model.origin[k]
        return {"kind": org[0], "marking": net.names(game.markings[org[1]]),
                **({"transition": net.transitions[org[2]].name} if org[0] == "edge" else {})}

    return {"stem": [show(k) for k in v.stem], "cycle": [show(k) for k in v.cycle]}


_WORKER_GAME: GameStructure | None = None
_WORKER_GOAL: Formula | None = None


def _init_worker(game, goal):
    global _WORKER_GAME, _WORKER_GOAL
    _WORKER_GAME, _WORKER_GOAL = game, goal


def _check_in_worker(f: Strategy) -> Verdict:
    return check_strategy(_WORKER_GAME, f, _WORKER_GOAL)


def search(game: GameStructure, goal: Formula, jobs: int = 1) -> SynthesisResult:
    """Check candidates in enumeration order; the first winner is reported."""
    _check_goal_atoms(game, goal)
    start = time.perf_counter()
    examined = 0
    skipped = 0
    counterexamples = []
    winner = None

    def account(f, weight, verdict):
        nonlocal examined, skipped, winner
        examined += 1
        skipped += weight - 1
        if verdict.holds:
            winner = f
            return True
        counterexamples.append((f, verdict))
        return False

    stream = enumerate_candidates(game)
    if jobs <= 1:
        for f, w in stream:
            if account(f, w, check_strategy(game, f, goal)):
                break
    else:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(game, goal)) as pool:
            done = False
            while not done:
                batch = [x for _, x in zip(range(4 * jobs), stream)]
                if not batch:
                    break
                verdicts = pool.map(_check_in_worker, [f for f, _ in batch])
                for (f, w), v in zip(batch, verdicts):
                    if account(f, w, v):
                        done = True
                        break

    stats = {
        "examined": examined,
        "pruned_equivalent": skipped,
        "naive": naive_strategy_count(game),
        "classes": len(game.partition),
        "game_states": len(game),
        "seconds": round(time.perf_counter() - start, 6),
    }
    if winner is not None:
        return SynthesisResult(True, winner, net_strategy(game, winner), counterexamples, stats)
    return SynthesisResult(False, None, None, counterexamples, stats)


def synthesize(net: NetSystem, goal: Formula, state_cap: int = DEFAULT_STATE_CAP,
               closure_cap: int = DEFAULT_CLOSURE_CAP, jobs: int = 1) -> SynthesisResult:
    start = time.perf_counter()
    pipe = prepare(net, state_cap, closure_cap)
    result = search(pipe.game, goal, jobs)
    result.stats["seconds"] = round(time.perf_counter() - start, 6)
    return result


def reachability_goal(net: NetSystem, target) -> Formula:
    """F of the conjunction fixing every place to its value in `target`."""
    target = frozenset(net.place_index[p] if isinstance(p, str) else p for p in target)
    order = sorted(target) + sorted(set(range(len(net.places))) - target)
    lits = [Prop(net.places[p].name) if p in target else Not(Prop(net.places[p].name))
            for p in order]
    return Eventually(conjunction(lits))
