"""Observation-based strategies and their JSON form.

A game-level `Strategy` picks, per observation class id, one controllable
transition or the idle move. A `NetStrategy` is the same choice presented
over observations (place-name sets of the extended net).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import ParseError, StrategySelectsDisabled, UnresolvableObservation
from .game import EPSILON, GameStructure


@dataclass(frozen=True)
class Strategy:
    choices: tuple[tuple[int, int | None], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, int | None]) -> "Strategy":
        return cls(tuple(sorted(mapping.items())))

    @cached_property
    def _table(self) -> dict[int, int | None]:
        return dict(self.choices)

    def select(self, c: int) -> int | None:
        """Chosen transition for class `c`; unlisted classes idle."""
        return self._table.get(c, EPSILON)

    def as_dict(self) -> dict[int, int | None]:
        return dict(self._table)


def validate_strategy(game: GameStructure, f: Strategy) -> None:
    for c, t in f.choices:
        if not 0 <= c < len(game.partition):
            raise StrategySelectsDisabled(f"no observation class {c}")
        if t is not EPSILON and t not in game.class_options[c]:
            name = game.net.transitions[t].name if 0 <= t < len(game.net.transitions) else t
            raise StrategySelectsDisabled(
                f"{name} is not an enabled controllable transition in class {c}"
            )


@dataclass(frozen=True)
class NetStrategy:
    """Observation (sorted place names) -> fired transition names (0 or 1)."""

    entries: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]

    def fires(self, observe) -> tuple[str, ...]:
        key = tuple(sorted(observe))
        for obs, fire in self.entries:
            if obs == key:
                return fire
        raise KeyError(key)

    def to_dict(self) -> dict:
        return {
            "observations": [
                {"observe": list(obs), "fire": fire[0] if fire else None}
                for obs, fire in self.entries
            ]
        }


def reachable_classes(game: GameStructure, f: Strategy) -> list[int]:
    """Classes met on states reachable when the user follows `f`, in first-reach order."""
    seen = {game.initial}
    order = [game.initial]
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        sel = f.select(game.class_of(s))
        for t, d in game.succ[s].items():
            if (t in game.env_moves[s] or t == sel) and d not in seen:
                seen.add(d)
                order.append(d)
    classes = []
    for s in order:
        c = game.class_of(s)
        if c not in classes:
            classes.append(c)
    return classes


def net_strategy(game: GameStructure, f: Strategy) -> NetStrategy:
    net = game.net
    entries = []
    for c in reachable_classes(game, f):
        t = f.select(c)
        obs = tuple(sorted(net.places[p].name for p in game.observation(c)))
        entries.append((obs, () if t is EPSILON else (net.transitions[t].name,)))
    return NetStrategy(tuple(entries))


def strategy_from_dict(game: GameStructure, data: dict) -> Strategy:
    """Resolve a JSON strategy against the game's observation classes.

    Also accepts a `synthesize` result, which wraps the strategy under "strategy".
    """
    if isinstance(data, dict) and "observations" not in data and isinstance(data.get("strategy"), dict):
        data = data["strategy"]
    if not isinstance(data, dict) or not isinstance(data.get("observations"), list):
        raise ParseError('strategy JSON needs an "observations" list')
    net = game.net
    by_obs = {frozenset(net.places[p].name for p in o): c
              for c, o in enumerate(game.partition.observations)}
    choices: dict[int, int | None] = {}
    for entry in data["observations"]:
        if not isinstance(entry, dict) or set(entry) - {"observe", "fire"} or "observe" not in entry:
            raise ParseError(f"bad strategy entry: {entry!r}")
        observe = entry["observe"]
        if not isinstance(observe, list) or not all(isinstance(x, str) for x in observe):
            raise ParseError(f"observe must be a list of place names: {observe!r}")
        c = by_obs.get(frozenset(observe))
        if c is None:
            raise UnresolvableObservation(f"no observation class observes {sorted(observe)}")
        fire = entry.get("fire")
        if fire is None:
            t = EPSILON
        else:
            if fire not in net.transition_index:
                raise ParseError(f"unknown transition {fire!r}")
            t = net.transition_index[fire]
        if c in choices and choices[c] != t:
            raise ParseError(f"conflicting choices for observation {sorted(observe)}")
        choices[c] = t
    f = Strategy.of(choices)
    validate_strategy(game, f)
    return f


def load_strategy(game: GameStructure, path) -> Strategy:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: {e}") from e
    return strategy_from_dict(game, data)
