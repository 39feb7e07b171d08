"""1-safe net systems: representation, JSON loading and the firing rule.

Places and transitions are addressed by dense integer indices; names only
matter at the JSON boundary. A marking is a frozenset of place indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import NotEnabled, ParseError, SafetyViolation

Marking = frozenset


@dataclass(frozen=True)
class Place:
    name: str
    observable: bool = False
    implicit: bool = False


@dataclass(frozen=True)
class Transition:
    name: str
    pre: frozenset[int]
    post: frozenset[int]
    controllable: bool = False


@dataclass(frozen=True)
class NetSystem:
    places: tuple[Place, ...]
    transitions: tuple[Transition, ...]
    initial: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        _validate(self)

    @cached_property
    def place_index(self) -> dict[str, int]:
        return {p.name: i for i, p in enumerate(self.places)}

    @cached_property
    def transition_index(self) -> dict[str, int]:
        return {t.name: i for i, t in enumerate(self.transitions)}

    @cached_property
    def observable(self) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.places) if p.observable)

    @cached_property
    def controllable(self) -> frozenset[int]:
        return frozenset(i for i, t in enumerate(self.transitions) if t.controllable)

    @cached_property
    def environment(self) -> frozenset[int]:
        return frozenset(range(len(self.transitions))) - self.controllable

    def marking(self, names: Iterable[str]) -> frozenset[int]:
        """Marking from place names; unknown names raise KeyError."""
        return frozenset(self.place_index[n] for n in names)

    def names(self, m: Iterable[int]) -> list[str]:
        return [self.places[p].name for p in sorted(m)]

    def conflict(self, t1: int, t2: int) -> bool:
        return bool(self.transitions[t1].pre & self.transitions[t2].pre)

    def independent(self, t1: int, t2: int) -> bool:
        a, b = self.transitions[t1], self.transitions[t2]
        return not ((a.pre | a.post) & (b.pre | b.post))


def _validate(net: NetSystem) -> None:
    seen = set()
    for p in net.places:
        if p.name in seen:
            raise ParseError(f"duplicate place name {p.name!r}")
        seen.add(p.name)
    seen = set()
    n = len(net.places)
    for t in net.transitions:
        if t.name in seen:
            raise ParseError(f"duplicate transition name {t.name!r}")
        seen.add(t.name)
        if not t.pre:
            raise ParseError(f"transition {t.name!r}: empty pre-set")
        if not t.post:
            raise ParseError(f"transition {t.name!r}: empty post-set")
        if any(not 0 <= p < n for p in t.pre | t.post):
            raise ParseError(f"transition {t.name!r}: unknown place reference")
        if t.controllable:
            hidden = [net.places[p].name for p in sorted(t.pre) if not net.places[p].observable]
            if hidden:
                raise ParseError(
                    f"controllable transition {t.name!r} has unobservable preplace(s) {hidden}"
                )
    if any(not 0 <= p < n for p in net.initial):
        raise ParseError("initial marking refers to an unknown place")


def enabled_at(net: NetSystem, m: frozenset[int]) -> set[int]:
    return {i for i, t in enumerate(net.transitions) if t.pre <= m}


def fire(net: NetSystem, m: frozenset[int], t: int) -> frozenset[int]:
    tr = net.transitions[t]
    if not tr.pre <= m:
        raise NotEnabled(f"{tr.name} is not enabled at {net.names(m)}")
    produced = tr.post - tr.pre
    if produced & m:
        raise SafetyViolation(
            f"firing {tr.name} at {net.names(m)} puts a second token on "
            f"{net.names(produced & m)}"
        )
    return (m - tr.pre) | tr.post


_NET_KEYS = {"places", "transitions", "initial", "observable"}
_TRANSITION_KEYS = {"name", "pre", "post", "controllable"}


def _str_list(doc, key, where):
    value = doc.get(key, [])
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        raise ParseError(f"{where}: {key!r} must be a list of non-empty strings")
    return value


def net_from_dict(doc: dict) -> NetSystem:
    if not isinstance(doc, dict):
        raise ParseError("net document must be a JSON object")
    unknown = set(doc) - _NET_KEYS
    if unknown:
        raise ParseError(f"unknown key(s) {sorted(unknown)}")
    for key in ("places", "transitions", "initial"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")

    place_names = _str_list(doc, "places", "net")
    observable = set(_str_list(doc, "observable", "net"))
    index: dict[str, int] = {}
    for name in place_names:
        if name in index:
            raise ParseError(f"duplicate place name {name!r}")
        index[name] = len(index)

    def lookup(name, where):
        try:
            return index[name]
        except KeyError:
            raise ParseError(f"{where}: unknown place {name!r}") from None

    for name in observable:
        lookup(name, "observable")
    places = tuple(Place(n, observable=n in observable) for n in place_names)

    raw = doc["transitions"]
    if not isinstance(raw, list):
        raise ParseError("'transitions' must be a list")
    transitions = []
    for entry in raw:
        if not isinstance(entry, dict):
            raise ParseError("transition entries must be objects")
        unknown = set(entry) - _TRANSITION_KEYS
        if unknown:
            raise ParseError(f"transition: unknown key(s) {sorted(unknown)}")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise ParseError("transition without a name")
        ctrl = entry.get("controllable", False)
        if not isinstance(ctrl, bool):
            raise ParseError(f"transition {name!r}: 'controllable' must be a boolean")
        pre = frozenset(lookup(p, name) for p in _str_list(entry, "pre", name))
        post = frozenset(lookup(p, name) for p in _str_list(entry, "post", name))
        transitions.append(Transition(name, pre, post, ctrl))

    initial = frozenset(lookup(p, "initial") for p in _str_list(doc, "initial", "net"))
    return NetSystem(places, tuple(transitions), initial)


def parse_net(text: str) -> NetSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error: {exc}") from None
    return net_from_dict(doc)


def load_net(path) -> NetSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_net(fh.read())


def net_to_dict(net: NetSystem) -> dict:
    return {
        "places": [p.name for p in net.places],
        "transitions": [
            {
                "name": t.name,
                "pre": net.names(t.pre),
                "post": net.names(t.post),
                "controllable": t.controllable,
            }
            for t in net.transitions
        ],
        "initial": net.names(net.initial),
        "observable": [p.name for p in net.places if p.observable],
    }


def with_observable(net: NetSystem, names: Iterable[str]) -> NetSystem:
    """Copy of `net` observing exactly the given places."""
    names = set(names)
    places = tuple(
        Place(p.name, observable=p.name in names, implicit=p.implicit) for p in net.places
    )
    return NetSystem(places, net.transitions, net.initial)
