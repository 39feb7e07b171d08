import random

import pytest
from hypothesis import given, strategies as st

from petrigame.errors import StrategySelectsDisabled
from petrigame.game import EPSILON, fair_atom, sharp
from petrigame.kripke import ENV_ATOM, U_ATOM, encode, to_dict, to_dot
from petrigame.strategy import Strategy
from petrigame.synthesis import candidate_strategies, prepare

from support import example_strategy, fixture, random_net


def test_triv_encoding():
    g = prepare(fixture("triv")).game
    k = encode(g, Strategy.of({0: 0}))
    assert len(k) == 4
    assert k.labels == (frozenset({"a"}), frozenset({"a", U_ATOM, ENV_ATOM}),
                        frozenset({"b"}), frozenset({"b", U_ATOM, ENV_ATOM}))
    assert k.succ == ((1,), (2,), (3,), (2,))
    assert [o[0] for o in k.origin] == ["state", "edge", "state", "deadlock"]


def test_sat_intermediate_carries_conflict_atoms():
    g = prepare(fixture("sat")).game
    k = encode(g, example_strategy(g))
    t1 = g.net.transition_index["t1"]
    (mid,) = [i for i, o in enumerate(k.origin) if o[:3] == ("edge", g.initial, t1)]
    lab = k.labels[mid]
    assert {"@t1", "@t2", "@t5", ENV_ATOM} <= lab
    # the example strategy idles in the initial class
    assert U_ATOM in lab


def test_selecting_a_non_move_is_rejected():
    g = prepare(fixture("triv")).game
    with pytest.raises(StrategySelectsDisabled):
        encode(g, Strategy.of({0: 0, 1: 0}))
    # an unreachable bad choice is never consulted
    assert len(encode(g, Strategy.of({1: 0}))) == 2
    sat = prepare(fixture("sat")).game
    with pytest.raises(StrategySelectsDisabled):
        encode(sat, Strategy.of({0: sat.net.transition_index["t1"]}))


def test_exports():
    g = prepare(fixture("triv")).game
    k = encode(g, Strategy())
    assert to_dot(k).count("->") == 2
    assert to_dict(k)["states"][1]["kind"] == "deadlock"


def _kept_edges(g, f, reach):
    kept = []
    for s in sorted(reach):
        sel = f.select(g.class_of(s))
        for t, d in sorted(g.succ[s].items()):
            if t in g.env_moves[s] or t == sel:
                kept.append((s, t, d))
    return kept


def _check_structure(g, f):
    net = g.net
    k = encode(g, f)
    originals = {o[1]: i for i, o in enumerate(k.origin) if o[0] == "state"}
    kept = _kept_edges(g, f, originals)
    deadlocks = [s for s in originals
                 if not g.env_moves[s] and f.select(g.class_of(s)) is EPSILON]
    assert k.edge_count == 2 * len(kept) + 2 * len(deadlocks)
    place_names = {p.name for p in net.places}
    for s, i in originals.items():
        assert k.labels[i] == set(net.names(g.markings[s]))
        assert k.labels[i] <= place_names
    # contracting intermediates recovers the pruned game graph
    contracted = set()
    for i, o in enumerate(k.origin):
        if o[0] == "edge":
            _, s, t, d = o
            (src,) = [j for j, out in enumerate(k.succ) if i in out]
            assert src == originals[s] and k.succ[i] == (originals[d],)
            contracted.add((s, t, d))
        elif o[0] == "deadlock":
            assert k.succ[i] == (originals[o[1]],)
            assert k.labels[i] >= k.fairness
    assert contracted == set(kept)
    # fairness atoms of environment transitions on intermediate states
    for i, o in enumerate(k.origin):
        if o[0] != "edge":
            continue
        _, s, t, _ = o
        m = g.markings[s]
        for tj in net.environment:
            expected = (not net.transitions[tj].pre <= m) or (
                t in net.environment and tj in sharp(g, t, s))
            assert (fair_atom(net.transitions[tj].name) in k.labels[i]) == expected
        assert (U_ATOM in k.labels[i]) == (t in net.controllable or f.select(g.class_of(s)) is EPSILON)
        assert (ENV_ATOM in k.labels[i]) == (t in net.environment or not g.env_moves[s])


def test_structure_on_fixtures():
    for name in ["sat", "sat_restricted", "triv", "env", "race", "branch"]:
        g = prepare(fixture(name)).game
        for f in candidate_strategies(g):
            _check_structure(g, f)


@given(st.integers(0, 10**6))
def test_structure_on_random_nets(seed):
    g = prepare(random_net(random.Random(seed))).game
    for i, f in enumerate(candidate_strategies(g)):
        _check_structure(g, f)
        if i == 10:
            break
