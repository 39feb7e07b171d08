"""Bounded play enumeration, an independent check on the model-checking route.

Plays are linearised: one transition per step, environment transitions
whenever enabled, controllable ones only when the strategy selects them at
the current observation. A play ends when nothing may fire; such a finite
play stands for the infinite play that stutters on its last marking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import EPSILON, GameStructure
from .ltl import Formula, Truth, evaluate, evaluate_prefix
from .net import enabled_at
from .strategy import Strategy
from .synthesis import check_strategy

DEADLOCKED = "deadlocked"  # nothing enabled at all
STALLED = "stalled"  # only unselected controllable transitions remain
TRUNCATED = "truncated"  # the step bound was hit

SAT, VIOL, UNKNOWN = "sat", "viol", "unknown"


@dataclass(frozen=True)
class PlayTrace:
    markings: tuple[frozenset[str], ...]
    transitions: tuple[str, ...]
    controllable: tuple[bool, ...]
    status: str
    states: tuple[int, ...] = ()  # game states visited

    def __len__(self):
        return len(self.transitions)

    @property
    def terminated(self) -> bool:
        return self.status in (DEADLOCKED, STALLED)


def _moves(game: GameStructure, f: Strategy, s: int) -> list[int]:
    sel = f.select(game.class_of(s))
    out = sorted(game.env_moves[s])
    if sel is not EPSILON and sel in game.user_moves[s]:
        out.append(sel)
    return sorted(out)


def fair_maximal_traces(game: GameStructure, f: Strategy, bound: int) -> list[PlayTrace]:
    if bound <= 0:
        raise ValueError("bound must be positive")
    net = game.net
    names = [frozenset(net.places[p].name for p in m) for m in game.markings]
    out = []
    # iterative DFS over (state path, transition path)
    stack = [((game.initial,), ())]
    while stack:
        path, fired = stack.pop()
        s = path[-1]
        moves = _moves(game, f, s)
        if not moves or len(fired) == bound:
            if moves:
                status = TRUNCATED
            elif enabled_at(net, game.markings[s]):
                status = STALLED
            else:
                status = DEADLOCKED
            out.append(PlayTrace(
                markings=tuple(names[x] for x in path),
                transitions=tuple(net.transitions[t].name for t in fired),
                controllable=tuple(t in net.controllable for t in fired),
                status=status,
                states=path,
            ))
            continue
        for t in reversed(moves):
            stack.append((path + (game.succ[s][t],), fired + (t,)))
    return out


def verdict_on_trace(trace: PlayTrace, goal: Formula) -> str:
    if trace.terminated:
        return SAT if evaluate(goal, trace.markings[:-1], trace.markings[-1:]) else VIOL
    value = evaluate_prefix(goal, trace.markings)
    return {Truth.TRUE: SAT, Truth.FALSE: VIOL}.get(value, UNKNOWN)


@dataclass(frozen=True)
class CrossCheck:
    verdict: str  # from the model checker
    traces: int
    sat: int
    viol: int
    unknown: int

    @property
    def conclusive(self) -> bool:
        return self.unknown == 0

    @property
    def agree(self) -> bool | None:
        """None when some trace is undecided within the bound."""
        if not self.conclusive:
            return None
        return (self.verdict == "holds") == (self.viol == 0)

    def to_dict(self) -> dict:
        return {"checker": self.verdict, "traces": self.traces, "sat": self.sat,
                "viol": self.viol, "unknown": self.unknown, "agree": self.agree}


def cross_check(game: GameStructure, f: Strategy, goal: Formula, bound: int) -> CrossCheck:
    verdict = check_strategy(game, f, goal)
    traces = fair_maximal_traces(game, f, bound)
    counts = {SAT: 0, VIOL: 0, UNKNOWN: 0}
    for tr in traces:
        counts[verdict_on_trace(tr, goal)] += 1
    return CrossCheck(verdict.kind, len(traces), counts[SAT], counts[VIOL], counts[UNKNOWN])
