"""Region algebra over a marking graph and construction of the extended net.

A Region is identified by its state set; names are display hints generated
from how the region was first (or most compactly) obtained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import ClosureCapExceeded, NotARegion, NotCompatible
from .marking_graph import MarkingGraph, StateSet, extension, is_region, region_boundary
from .net import NetSystem, Place, Transition

DEFAULT_CLOSURE_CAP = 1 << 14


@dataclass(frozen=True, eq=False)
class Region:
    states: StateSet
    origin: tuple = ()
    name: str = ""

    def __eq__(self, other):
        return isinstance(other, Region) and self.states == other.states

    def __hash__(self):
        return hash(self.states)

    def __repr__(self):
        return f"Region({self.name!r}, {sorted(self.states)})"

    def renamed(self, name: str, origin: tuple) -> "Region":
        return Region(self.states, origin, name)


def _operand(name: str) -> str:
    return f"({name})" if "|" in name else name


def place_extension(mg: MarkingGraph, p: int) -> Region:
    name = mg.net.places[p].name
    return Region(extension(mg, p), ("place", name), name)


def complement(mg: MarkingGraph, r: Region) -> Region:
    return Region(r.states.complement(), ("complement", r.name), _operand(r.name) + "^c")


def compatible(mg: MarkingGraph, r1: Region, r2: Region) -> bool:
    a, b = r1.states, r2.states
    return is_region(mg, a - b) and is_region(mg, a & b) and is_region(mg, b - a)


def union_compatible(mg: MarkingGraph, r1: Region, r2: Region) -> Region:
    if not compatible(mg, r1, r2):
        raise NotCompatible(f"{r1.name} and {r2.name} are not compatible")
    return Region(r1.states | r2.states, ("union", r1.name, r2.name), f"{r1.name}|{r2.name}")


def _better_name(new: str, old: str) -> bool:
    return len(new) < len(old)


def close_regions(mg: MarkingGraph, seeds: Iterable[Region], cap: int = DEFAULT_CLOSURE_CAP) -> list[Region]:
    """Least set containing `seeds` closed under complement and compatible union.

    Trivial regions (empty, all states) are dropped. Output order is discovery
    order; when a region is rediscovered under a shorter name the name is
    replaced.
    """
    if cap <= 0:
        raise ValueError("closure cap must be positive")
    found: list[Region] = []
    where: dict[StateSet, int] = {}

    def add(r: Region):
        if r.states.is_empty() or r.states.is_full():
            return
        i = where.get(r.states)
        if i is not None:
            if _better_name(r.name, found[i].name):
                found[i] = found[i].renamed(r.name, r.origin)
            return
        if len(found) >= cap:
            raise ClosureCapExceeded(f"more than {cap} distinct regions in the observable closure")
        where[r.states] = len(found)
        found.append(r)

    for r in seeds:
        if not is_region(mg, r.states):
            raise NotARegion(f"seed {r.name!r} is not a region")
        add(r)
    i = 0
    while i < len(found):
        r = found[i]
        add(complement(mg, r))
        for j in range(i):
            other = found[j]
            if compatible(mg, other, r):
                add(Region(other.states | r.states, ("union", other.name, r.name),
                           f"{other.name}|{r.name}"))
        i += 1
    return found


def observable_closure(mg: MarkingGraph, observable: Iterable[int], cap: int = DEFAULT_CLOSURE_CAP) -> list[Region]:
    return close_regions(mg, [place_extension(mg, p) for p in sorted(observable)], cap)


@dataclass(frozen=True)
class ExtendedNet:
    """The net extended with implicit places for the observable closure.

    `net` holds the base places first (same indices as `base`) followed by the
    implicit ones. `place_states` gives, for every place of `net`, its
    extension over the base marking graph.
    """

    base: NetSystem
    net: NetSystem
    base_mg: MarkingGraph
    implicit: tuple[tuple[int, Region], ...]
    place_states: tuple[StateSet, ...] = field(repr=False)

    @property
    def observable(self) -> frozenset[int]:
        return self.net.observable

    def project(self, m: frozenset[int]) -> frozenset[int]:
        n = len(self.base.places)
        return frozenset(p for p in m if p < n)


def extend_net(net: NetSystem, mg: MarkingGraph, closure: Iterable[Region]) -> ExtendedNet:
    n = len(net.places)
    base_ext = [extension(mg, p) for p in range(n)]
    by_ext: dict[StateSet, list[int]] = {}
    for p, e in enumerate(base_ext):
        by_ext.setdefault(e, []).append(p)

    observable = set(i for i, p in enumerate(net.places) if p.observable)
    implicit: list[Region] = []
    seen: set[StateSet] = set()
    for r in closure:
        if r.states in seen:
            continue
        seen.add(r.states)
        if not is_region(mg, r.states):
            raise NotARegion(f"{r.name!r} is not a region of the marking graph")
        if r.states in by_ext:
            observable.update(by_ext[r.states])
        else:
            implicit.append(r)

    names = {p.name for p in net.places}
    places = [Place(p.name, observable=i in observable, implicit=False)
              for i, p in enumerate(net.places)]
    pre = [set(t.pre) for t in net.transitions]
    post = [set(t.post) for t in net.transitions]
    initial = set(net.initial)
    pairs = []
    for r in implicit:
        name = r.name
        while name in names:
            name += "'"
        names.add(name)
        h = len(places)
        places.append(Place(name, observable=True, implicit=True))
        entering, exiting = region_boundary(mg, r.states)
        for t in entering:
            post[t].add(h)
        for t in exiting:
            pre[t].add(h)
        if mg.initial in r.states:
            initial.add(h)
        pairs.append((h, r))

    transitions = tuple(
        Transition(t.name, frozenset(pre[i]), frozenset(post[i]), t.controllable)
        for i, t in enumerate(net.transitions)
    )
    ext = NetSystem(tuple(places), transitions, frozenset(initial))
    place_states = tuple(base_ext) + tuple(r.states for r in implicit)
    return ExtendedNet(net, ext, mg, tuple(pairs), place_states)


def region_table(ext: ExtendedNet, closure: Iterable[Region]) -> list[dict]:
    """JSON-ready description of closure regions: name, markings, boundary."""
    mg = ext.base_mg
    net = mg.net
    by_states = {}
    for i, s in enumerate(ext.place_states):
        by_states.setdefault(s, ext.net.places[i].name)
    out = []
    for r in closure:
        entering, exiting = region_boundary(mg, r.states)
        out.append({
            "name": r.name,
            "place": by_states.get(r.states),
            "markings": [net.names(mg.states[s]) for s in r.states],
            "entering": [net.transitions[t].name for t in sorted(entering)],
            "exiting": [net.transitions[t].name for t in sorted(exiting)],
        })
    return out
