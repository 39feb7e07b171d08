import random
from collections import deque

import pytest
from hypothesis import given, strategies as st

from petrigame.errors import NotEnvironment
from petrigame.game import EPSILON, fairness_spec, game_to_dict, sharp, to_dot
from petrigame.net import enabled_at
from petrigame.synthesis import prepare

from support import fixture, random_net


def game_of(name_or_net):
    net = fixture(name_or_net) if isinstance(name_or_net, str) else name_or_net
    return prepare(net).game


def test_sat_has_nothing_pruned():
    g = game_of("sat")
    assert g.pruned == ()
    assert len(g) == 12


def test_racing_controllable_transition_is_pruned():
    g = game_of("race")
    net = g.net
    t = net.transition_index["t"]
    assert [(net.transitions[x].name) for _, x, _ in g.pruned] == ["t"]
    assert all(t not in moves for moves in g.user_moves)
    # the {b} marking was only reachable through t
    assert {frozenset(net.names(g.extnet.project(m))) for m in g.markings} == {
        frozenset({"a"}), frozenset({"c"})}


def test_moves_and_epsilon():
    g = game_of("triv")
    assert g.d_u(0) == {0, EPSILON}
    assert g.d_env(0) == {EPSILON}
    assert g.tau(0, 0) == 1
    assert g.d_u(1) == {EPSILON}


def test_sharp_on_sat():
    g = game_of("sat")
    t = g.net.transition_index
    assert sharp(g, t["t1"], g.initial) == {t["t1"], t["t2"]}
    assert sharp(g, t["t5"], g.initial) == frozenset()
    with pytest.raises(NotEnvironment):
        sharp(g, t["t3"], g.initial)


def test_fairness_spec_covers_environment():
    g = game_of("sat")
    spec = fairness_spec(g)
    assert spec.env_transitions == ("t1", "t2", "t5")
    assert spec.atoms() == {"@u", "@env", "@t1", "@t2", "@t5"}


def test_exports():
    g = game_of("sat")
    d = game_to_dict(g)
    assert len(d["states"]) == 12 and d["states"][0]["d_env"] == ["t1", "t2"]
    assert d["sharp"]["t1"]["0"] == ["t1", "t2"]
    assert to_dot(g).count("->") == len(g.edges)


@given(st.integers(0, 10**6))
def test_game_invariants(seed):
    g = game_of(random_net(random.Random(seed)))
    net = g.net
    seen = {g.initial}
    queue = deque([g.initial])
    while queue:
        s = queue.popleft()
        for d in g.succ[s].values():
            if d not in seen:
                seen.add(d)
                queue.append(d)
    assert seen == set(range(len(g)))
    for s, m in enumerate(g.markings):
        obs = g.observation(g.class_of(s))
        for t in g.user_moves[s]:
            assert net.transitions[t].pre <= obs
        env_on = enabled_at(net, m) & net.environment
        assert (g.d_env(s) == {EPSILON}) == (not env_on)
        assert set(g.succ[s]) == g.user_moves[s] | g.env_moves[s]
        assert g.env_moves[s] == env_on
    for s, t, d in g.pruned:
        assert t in net.controllable
