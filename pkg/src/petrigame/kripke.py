"""Kripke encoding of a game pruned by a strategy, with fairness propositions.

Every kept game edge m -t-> m' becomes m -> l -> m', where the intermediate
state l carries the fairness atoms that the move discharges. States where
nothing can happen get a partner state carrying every fairness atom, so
their idling is a fair infinite behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StrategySelectsDisabled
from .game import EPSILON, GameStructure, fair_atom, fairness_spec, sharp
from .marking_graph import dot_quote
from .strategy import Strategy

U_ATOM = fair_atom("u")
ENV_ATOM = fair_atom("env")


@dataclass(frozen=True)
class KripkeModel:
    labels: tuple[frozenset[str], ...]
    succ: tuple[tuple[int, ...], ...]
    initial: int
    atoms: frozenset[str]
    # ("state", s) | ("edge", s, t, d) | ("deadlock", s), s and d being game states
    origin: tuple[tuple, ...]
    fairness: frozenset[str] = frozenset()

    def __len__(self):
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.succ)


def encode(game: GameStructure, f: Strategy) -> KripkeModel:
    net = game.net
    env_names = {t: fair_atom(net.transitions[t].name) for t in net.environment}
    fairness = fairness_spec(game).atoms()
    atoms = frozenset(p.name for p in net.places) | fairness

    labels: list[frozenset[str]] = []
    succ: list[list[int]] = []
    origin: list[tuple] = []
    kid: dict[int, int] = {}

    def new_state(label, org):
        labels.append(label)
        succ.append([])
        origin.append(org)
        return len(labels) - 1

    def props(s):
        return frozenset(net.places[p].name for p in game.markings[s])

    def state_of(s):
        k = kid.get(s)
        if k is None:
            k = kid[s] = new_state(props(s), ("state", s))
            queue.append(s)
        return k

    queue: list[int] = []
    state_of(game.initial)
    i = 0
    while i < len(queue):
        s = queue[i]
        i += 1
        k = kid[s]
        env = game.env_moves[s]
        sel = f.select(game.class_of(s))
        if sel is not EPSILON and sel not in game.user_moves[s]:
            raise StrategySelectsDisabled(
                f"{net.transitions[sel].name} is not a user move in state {s}"
            )
        base = props(s) | {env_names[t] for t in net.environment - env}
        for t in sorted(game.succ[s]):
            if t not in env and t != sel:
                continue
            lab = set(base)
            if t in env:
                lab |= {env_names[x] for x in sharp(game, t, s)}
                lab.add(ENV_ATOM)
            if t not in env or sel is EPSILON:
                lab.add(U_ATOM)
            if not env:
                lab.add(ENV_ATOM)
            d = game.succ[s][t]
            mid = new_state(frozenset(lab), ("edge", s, t, d))
            succ[k].append(mid)
            succ[mid].append(state_of(d))
        if not env and sel is EPSILON:
            partner = new_state(props(s) | fairness, ("deadlock", s))
            succ[k].append(partner)
            succ[partner].append(k)

    return KripkeModel(
        labels=tuple(labels),
        succ=tuple(tuple(x) for x in succ),
        initial=0,
        atoms=atoms,
        origin=tuple(origin),
        fairness=fairness,
    )


def to_dot(model: KripkeModel, name: str = "kripke") -> str:
    lines = [f"digraph {name} {{"]
    for k, lab in enumerate(model.labels):
        kind = model.origin[k][0]
        shape = {"state": "box", "edge": "ellipse", "deadlock": "diamond"}[kind]
        extra = ", peripheries=2" if k == model.initial else ""
        text = "{" + ", ".join(sorted(lab)) + "}"
        lines.append(f"  k{k} [shape={shape}, label={dot_quote(text)}{extra}];")
    for k, out in enumerate(model.succ):
        for j in out:
            lines.append(f"  k{k} -> k{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dict(model: KripkeModel) -> dict:
    return {
        "initial": model.initial,
        "states": [
            {"id": k, "kind": model.origin[k][0], "labels": sorted(lab), "succ": list(model.succ[k])}
            for k, lab in enumerate(model.labels)
        ],
    }
