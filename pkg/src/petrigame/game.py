"""Turn-based asynchronous game structure derived from the extended net.

The scheduler is not materialised: its two fairness constraints become the
`u` / `env` propositions of the Kripke encoding.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import NotEnvironment
from .marking_graph import DEFAULT_STATE_CAP, MarkingGraph, build_marking_graph, dot_quote
from .regions import ExtendedNet
from .stability import ObservationPartition, partition_from, stable_parts

EPSILON = None  # the idle move


@dataclass(frozen=True)
class GameStructure:
    extnet: ExtendedNet
    mg: MarkingGraph  # marking graph of the extended net, before pruning
    mg_state: tuple[int, ...]  # game state -> state of `mg`
    markings: tuple[frozenset[int], ...]
    stable: tuple[frozenset[int], ...]
    user_moves: tuple[frozenset[int], ...]
    env_moves: tuple[frozenset[int], ...]
    succ: tuple[dict[int, int], ...]
    partition: ObservationPartition
    pruned: tuple[tuple[int, int, int], ...]  # removed edges, as `mg` indices
    initial: int = 0

    @property
    def net(self):
        return self.extnet.net

    def __len__(self):
        return len(self.markings)

    def d_u(self, s: int) -> frozenset:
        return self.user_moves[s] | {EPSILON}

    def d_env(self, s: int) -> frozenset:
        return self.env_moves[s] or frozenset({EPSILON})

    def tau(self, s: int, t: int) -> int:
        return self.succ[s][t]

    def class_of(self, s: int) -> int:
        return self.partition.state_class[s]

    def observation(self, c: int) -> frozenset[int]:
        return self.partition.observations[c]

    @cached_property
    def class_options(self) -> tuple[tuple[int, ...], ...]:
        """Controllable transitions enabled in each class's observation."""
        net = self.net
        ctrl = sorted(net.controllable)
        return tuple(
            tuple(t for t in ctrl if net.transitions[t].pre <= obs)
            for obs in self.partition.observations
        )

    @cached_property
    def edges(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((s, t, d) for s, out in enumerate(self.succ) for t, d in out.items())


@dataclass(frozen=True)
class FairnessSpec:
    """One weak-fairness constraint per environment transition plus the two
    scheduler constraints."""

    env_transitions: tuple[str, ...]
    scheduler: tuple[str, ...] = ("u", "env")

    def atoms(self) -> frozenset[str]:
        return frozenset(fair_atom(x) for x in self.scheduler + self.env_transitions)


def fair_atom(name: str) -> str:
    """Proposition name for a fairness atom; '@' keeps it apart from places."""
    return "@" + name


def fairness_spec(game: GameStructure) -> FairnessSpec:
    net = game.net
    return FairnessSpec(tuple(net.transitions[t].name for t in sorted(net.environment)))


def derive_game(extnet: ExtendedNet, state_cap: int = DEFAULT_STATE_CAP) -> GameStructure:
    net = extnet.net
    mg = build_marking_graph(net, state_cap)
    stable = stable_parts(net, mg)
    obs = [sp & net.observable for sp in stable]
    ctrl = net.controllable

    kept: list[list[tuple[int, int]]] = [[] for _ in mg.states]
    pruned = []
    for s, t, d in mg.edges:
        if t in ctrl and not net.transitions[t].pre <= obs[s]:
            pruned.append((s, t, d))
        else:
            kept[s].append((t, d))

    order = [mg.initial]
    new_index = {mg.initial: 0}
    queue = deque([mg.initial])
    while queue:
        s = queue.popleft()
        for _, d in kept[s]:
            if d not in new_index:
                new_index[d] = len(order)
                order.append(d)
                queue.append(d)

    succ = []
    user, env = [], []
    for s in order:
        out = {t: new_index[d] for t, d in kept[s]}
        succ.append(out)
        user.append(frozenset(t for t in out if t in ctrl))
        env.append(frozenset(t for t in out if t not in ctrl))

    return GameStructure(
        extnet=extnet,
        mg=mg,
        mg_state=tuple(order),
        markings=tuple(mg.states[s] for s in order),
        stable=tuple(stable[s] for s in order),
        user_moves=tuple(user),
        env_moves=tuple(env),
        succ=tuple(succ),
        partition=partition_from(obs[s] for s in order),
        pruned=tuple(pruned),
    )


def sharp(game: GameStructure, t: int, s: int) -> frozenset[int]:
    """Environment transitions whose occurrence discharges t's fairness at s."""
    net = game.net
    if t not in net.environment:
        raise NotEnvironment(f"{net.transitions[t].name} is controllable")
    m = game.markings[s]
    pre = net.transitions[t].pre
    if not pre <= m:
        return frozenset()
    return frozenset({t}) | frozenset(
        ti for ti in net.environment
        if net.transitions[ti].pre <= m and net.transitions[ti].pre & pre
    )


def game_to_dict(game: GameStructure) -> dict:
    net = game.net

    def names(ts):
        return [net.transitions[t].name for t in sorted(ts)]

    return {
        "initial": game.initial,
        "states": [
            {
                "id": s,
                "marking": net.names(m),
                "stable": net.names(game.stable[s]),
                "class": game.class_of(s),
                "d_u": names(game.user_moves[s]) + ["ε"],
                "d_env": names(game.env_moves[s]) or ["ε"],
                "tau": {net.transitions[t].name: d for t, d in sorted(game.succ[s].items())},
            }
            for s, m in enumerate(game.markings)
        ],
        "classes": [
            {"id": c, "observe": net.names(o), "options": names(game.class_options[c])}
            for c, o in enumerate(game.partition.observations)
        ],
        "pruned": [
            {"source": net.names(game.mg.states[s]), "transition": net.transitions[t].name,
             "target": net.names(game.mg.states[d])}
            for s, t, d in game.pruned
        ],
        "sharp": {
            net.transitions[t].name: {
                str(s): names(sharp(game, t, s)) for s in range(len(game))
                if sharp(game, t, s)
            }
            for t in sorted(net.environment)
        },
    }


def to_dot(game: GameStructure, name: str = "game") -> str:
    net = game.net
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for s, m in enumerate(game.markings):
        label = "{" + ", ".join(net.names(m)) + "}" + f" / class {game.class_of(s)}"
        extra = ", peripheries=2" if s == game.initial else ""
        lines.append(f"  g{s} [label={dot_quote(label)}{extra}];")
    for s, t, d in game.edges:
        style = "" if t in net.environment else ", style=bold"
        lines.append(f"  g{s} -> g{d} [label={dot_quote(net.transitions[t].name)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
