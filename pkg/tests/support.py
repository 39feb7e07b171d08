"""Fixture loading and random 1-safe net generation for the test-suite."""

from __future__ import annotations

import random
from pathlib import Path

from petrigame.errors import SafetyViolation, StateCapExceeded
from petrigame.marking_graph import build_marking_graph
from petrigame.net import NetSystem, Place, Transition, load_net

NETS = Path(__file__).resolve().parent.parent / "nets"
SAT_GOAL = "F(p4 & p5) | F((p3 | p7) & p6)"


def fixture(name: str) -> NetSystem:
    return load_net(NETS / f"{name}.json")


def _subset(rng: random.Random, n: int, lo: int, hi: int) -> frozenset[int]:
    return frozenset(rng.sample(range(n), rng.randint(lo, min(hi, n))))


def random_net(rng: random.Random, max_places: int = 6, max_transitions: int = 6,
               all_controllable: bool = False, all_observable: bool = False,
               max_states: int = 64) -> NetSystem:
    """A random 1-safe net with a small marking graph (rejection sampling)."""
    while True:
        n = rng.randint(2, max_places)
        k = rng.randint(1, max_transitions)
        observable = set(range(n)) if all_observable else set(_subset(rng, n, 0, n))
        places = tuple(Place(f"q{i}", observable=i in observable) for i in range(n))
        initial = _subset(rng, n, 1, 3)
        fed = set(initial)  # places that may carry a token, roughly
        transitions = []
        for j in range(k):
            if rng.random() < 0.8:
                pool = sorted(fed)
                pre = frozenset(rng.sample(pool, rng.randint(1, min(2, len(pool)))))
            else:
                pre = _subset(rng, n, 1, 2)
            post = _subset(rng, n, 1, 2)
            fed |= post
            ctrl = all_controllable or rng.random() < 0.5
            if not pre <= observable:
                if all_controllable:
                    break
                ctrl = False
            transitions.append(Transition(f"t{j}", pre, post, ctrl))
        else:
            net = NetSystem(places, tuple(transitions), initial)
            try:
                mg = build_marking_graph(net, max_states)
            except (SafetyViolation, StateCapExceeded):
                continue
            # mostly keep nets where something happens
            if len(mg.states) < 3 and rng.random() < 0.97:
                continue
            return net


def random_nets(seed: int, count: int, **kw) -> list[NetSystem]:
    rng = random.Random(seed)
    return [random_net(rng, **kw) for _ in range(count)]


def example_strategy(game):
    """Fire t3 once p4 is observed and t4 once p3|p7 is observed; idle otherwise."""
    from petrigame.strategy import Strategy

    net = game.net
    t = net.transition_index
    choices = {}
    for c, obs in enumerate(game.partition.observations):
        seen = set(net.names(obs))
        if "p2" in seen and "p4" in seen:
            choices[c] = t["t3"]
        elif "p2" in seen and "p3|p7" in seen:
            choices[c] = t["t4"]
    return Strategy.of(choices)
