"""Stable parts of markings and the user's observation classes.

A place of m is unstable when some sequence of environment transitions
from m reaches a marking that enables an environment transition consuming
it. The single-marking functions explore markings directly; the bulk
`stable_parts` works on a marking graph through the SCCs of its
environment edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import tarjan
from .marking_graph import MarkingGraph
from .net import NetSystem, fire
from .regions import ExtendedNet


def _net(obj) -> NetSystem:
    return obj.net if isinstance(obj, ExtendedNet) else obj


def env_closure(extnet, m: frozenset[int]) -> set[frozenset[int]]:
    net = _net(extnet)
    env = sorted(net.environment)
    seen = {m}
    queue = deque([m])
    while queue:
        cur = queue.popleft()
        for t in env:
            if net.transitions[t].pre <= cur:
                nxt = fire(net, cur, t)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def stable_part(extnet, m: frozenset[int]) -> frozenset[int]:
    net = _net(extnet)
    consumed = set()
    for cur in env_closure(net, m):
        for t in net.environment:
            if net.transitions[t].pre <= cur:
                consumed |= net.transitions[t].pre
    return m - consumed


def observation(extnet, m: frozenset[int]) -> frozenset[int]:
    net = _net(extnet)
    return stable_part(net, m) & net.observable


def stable_parts(net: NetSystem, mg: MarkingGraph) -> tuple[frozenset[int], ...]:
    """Stable part of every state of `mg` (a marking graph of `net`)."""
    n = len(mg.states)
    env = net.environment
    env_succ: list[list[int]] = [[] for _ in range(n)]
    here: list[set[int]] = [set() for _ in range(n)]
    for s, t, d in mg.edges:
        if t in env:
            env_succ[s].append(d)
            here[s] |= net.transitions[t].pre
    consumed: list[frozenset[int] | None] = [None] * n
    # components come out sinks first, so successors are always done
    for comp in tarjan(n, env_succ.__getitem__):
        acc = set()
        members = set(comp)
        for v in comp:
            acc |= here[v]
            for w in env_succ[v]:
                if w not in members:
                    acc |= consumed[w]
        frozen = frozenset(acc)
        for v in comp:
            consumed[v] = frozen
    return tuple(m - consumed[i] for i, m in enumerate(mg.states))


@dataclass(frozen=True)
class ObservationPartition:
    state_class: tuple[int, ...]
    observations: tuple[frozenset[int], ...]

    def members(self, c: int) -> list[int]:
        return [s for s, k in enumerate(self.state_class) if k == c]

    def __len__(self):
        return len(self.observations)


def partition_from(observations_per_state) -> ObservationPartition:
    ids: dict[frozenset[int], int] = {}
    state_class = []
    for o in observations_per_state:
        if o not in ids:
            ids[o] = len(ids)
        state_class.append(ids[o])
    return ObservationPartition(tuple(state_class), tuple(ids))


def observation_partition(extnet, mg: MarkingGraph) -> ObservationPartition:
    net = _net(extnet)
    obs = net.observable
    return partition_from(sp & obs for sp in stable_parts(net, mg))
