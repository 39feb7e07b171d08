"""Sequential marking graph and the uniform-crossing (region) predicate."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import NotARegion, StateCapExceeded
from .net import NetSystem, fire

DEFAULT_STATE_CAP = 1 << 20


class StateSet:
    """Fixed-width membership vector over the states of one marking graph.

    Backed by a Python int used as a bitset, so equality and hashing are
    canonical and cheap.
    """

    __slots__ = ("mask", "size")

    def __init__(self, mask: int, size: int):
        if mask >> size:
            raise ValueError("mask has bits outside the state range")
        self.mask = mask
        self.size = size

    @classmethod
    def of(cls, indices: Iterable[int], size: int) -> "StateSet":
        mask = 0
        for i in indices:
            if not 0 <= i < size:
                raise ValueError(f"state {i} out of range")
            mask |= 1 << i
        return cls(mask, size)

    @classmethod
    def empty(cls, size: int) -> "StateSet":
        return cls(0, size)

    @classmethod
    def full(cls, size: int) -> "StateSet":
        return cls((1 << size) - 1, size)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        m, i = self.mask, 0
        while m:
            if m & 1:
                yield i
            m >>= 1
            i += 1

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __eq__(self, other):
        return isinstance(other, StateSet) and (self.mask, self.size) == (other.mask, other.size)

    def __hash__(self):
        return hash((self.mask, self.size))

    def __repr__(self):
        return f"StateSet({sorted(self)})"

    def _check(self, other: "StateSet"):
        if other.size != self.size:
            raise ValueError("state sets over different graphs")

    def __or__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.mask | other.mask, self.size)

    def __and__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.mask & other.mask, self.size)

    def __sub__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.mask & ~other.mask, self.size)

    def complement(self) -> "StateSet":
        return StateSet(((1 << self.size) - 1) & ~self.mask, self.size)

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.size) - 1

    def to_array(self) -> np.ndarray:
        nbytes = max(1, (self.size + 7) // 8)
        raw = np.frombuffer(self.mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.size].astype(bool)


@dataclass(frozen=True)
class MarkingGraph:
    net: NetSystem
    states: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int, int], ...]
    initial: int = 0

    @cached_property
    def index(self) -> dict[frozenset[int], int]:
        return {m: i for i, m in enumerate(self.states)}

    @cached_property
    def succ(self) -> tuple[dict[int, int], ...]:
        out: list[dict[int, int]] = [dict() for _ in self.states]
        for s, t, d in self.edges:
            out[s][t] = d
        return tuple(out)

    @cached_property
    def _edge_arrays(self):
        if self.edges:
            arr = np.array(self.edges, dtype=np.int64)
            return arr[:, 0], arr[:, 1], arr[:, 2]
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty

    def __len__(self):
        return len(self.states)

    def state_set(self, indices: Iterable[int]) -> StateSet:
        return StateSet.of(indices, len(self.states))

    def crossing_counts(self, S: StateSet):
        """Per transition: (#edges, #entering S, #leaving S)."""
        src, lab, dst = self._edge_arrays
        nt = len(self.net.transitions)
        inside = S.to_array()
        s_in, d_in = inside[src], inside[dst]
        total = np.bincount(lab, minlength=nt)
        entering = np.bincount(lab[~s_in & d_in], minlength=nt)
        leaving = np.bincount(lab[s_in & ~d_in], minlength=nt)
        return total, entering, leaving


def build_marking_graph(net: NetSystem, state_cap: int = DEFAULT_STATE_CAP) -> MarkingGraph:
    if state_cap <= 0:
        raise ValueError("state cap must be positive")
    states = [net.initial]
    index = {net.initial: 0}
    edges = []
    queue = deque([0])
    while queue:
        s = queue.popleft()
        m = states[s]
        for t, tr in enumerate(net.transitions):
            if not tr.pre <= m:
                continue
            m2 = fire(net, m, t)  # raises SafetyViolation
            d = index.get(m2)
            if d is None:
                if len(states) >= state_cap:
                    raise StateCapExceeded(
                        f"more than {state_cap} reachable markings"
                    )
                d = index[m2] = len(states)
                states.append(m2)
                queue.append(d)
            edges.append((s, t, d))
    return MarkingGraph(net, tuple(states), tuple(edges), 0)


def is_region(mg: MarkingGraph, S: StateSet) -> bool:
    total, entering, leaving = mg.crossing_counts(S)
    ok_in = (entering == 0) | (entering == total)
    ok_out = (leaving == 0) | (leaving == total)
    return bool(np.all(ok_in & ok_out))


def region_boundary(mg: MarkingGraph, S: StateSet) -> tuple[frozenset[int], frozenset[int]]:
    """(entering labels, exiting labels) of a region."""
    total, entering, leaving = mg.crossing_counts(S)
    ok = ((entering == 0) | (entering == total)) & ((leaving == 0) | (leaving == total))
    if not np.all(ok):
        raise NotARegion("state set is not crossed uniformly")
    return (
        frozenset(int(t) for t in np.nonzero(entering)[0]),
        frozenset(int(t) for t in np.nonzero(leaving)[0]),
    )


def extension(mg: MarkingGraph, p: int) -> StateSet:
    return mg.state_set(i for i, m in enumerate(mg.states) if p in m)


def dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def marking_label(net: NetSystem, m: Iterable[int]) -> str:
    return "{" + ", ".join(net.names(m)) + "}"


def to_dot(mg: MarkingGraph, name: str = "marking_graph") -> str:
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for i, m in enumerate(mg.states):
        shape = ", peripheries=2" if i == mg.initial else ""
        lines.append(f"  s{i} [label={dot_quote(marking_label(mg.net, m))}{shape}];")
    for s, t, d in mg.edges:
        lines.append(f"  s{s} -> s{d} [label={dot_quote(mg.net.transitions[t].name)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dict(mg: MarkingGraph) -> dict:
    net = mg.net
    return {
        "initial": mg.initial,
        "states": [net.names(m) for m in mg.states],
        "edges": [[s, net.transitions[t].name, d] for s, t, d in mg.edges],
    }
