import random

import pytest
from hypothesis import given, settings, strategies as st

from petrigame.graph import is_nontrivial, tarjan
from petrigame.ltl import parse_formula
from petrigame.oracle import (
    DEADLOCKED, SAT, STALLED, TRUNCATED, UNKNOWN, VIOL, PlayTrace, cross_check,
    fair_maximal_traces, verdict_on_trace,
)
from petrigame.strategy import Strategy
from petrigame.synthesis import candidate_strategies, prepare

from support import SAT_GOAL, example_strategy, fixture, random_net


def _game(name):
    return prepare(fixture(name)).game


def test_bound_must_be_positive():
    with pytest.raises(ValueError):
        fair_maximal_traces(_game("triv"), Strategy(), 0)


def test_sat_example_strategy_traces():
    g = _game("sat")
    traces = fair_maximal_traces(g, example_strategy(g), 10)
    assert traces and all(tr.status == DEADLOCKED for tr in traces)
    goal = parse_formula(SAT_GOAL)
    assert all(verdict_on_trace(tr, goal) == SAT for tr in traces)
    base = {f"p{i}" for i in range(1, 8)}
    finals = {tr.markings[-1] & base for tr in traces}
    assert finals == {frozenset({"p4", "p5"}), frozenset({"p6", "p7"})}


def test_triv_idle_strategy_stalls():
    g = _game("triv")
    (tr,) = fair_maximal_traces(g, Strategy(), 5)
    assert len(tr) == 0
    assert tr.status == STALLED


def test_env_fixture_fires_once():
    g = _game("env")
    (tr,) = fair_maximal_traces(g, Strategy(), 5)
    assert tr.transitions == ("t",)
    assert tr.status == DEADLOCKED


def test_verdict_examples():
    goal = parse_formula(SAT_GOAL)
    tr = PlayTrace(
        markings=(frozenset({"p1", "p2"}), frozenset({"p2", "p4"}), frozenset({"p4", "p5"})),
        transitions=("t2", "t3"), controllable=(False, True), status=DEADLOCKED)
    assert verdict_on_trace(tr, goal) == SAT
    assert verdict_on_trace(tr, parse_formula("G true")) == SAT
    assert verdict_on_trace(tr, parse_formula("G p2")) == VIOL
    cut = PlayTrace(markings=(frozenset({"a"}), frozenset({"a"})), transitions=("x",),
                    controllable=(False,), status=TRUNCATED)
    assert verdict_on_trace(cut, parse_formula("F w")) == UNKNOWN
    assert verdict_on_trace(cut, parse_formula("G w")) == VIOL


def test_cyclic_net_is_truncated():
    from petrigame.net import net_from_dict
    net = net_from_dict({"places": ["a", "b"], "transitions": [
        {"name": "t", "pre": ["a"], "post": ["b"]}, {"name": "e", "pre": ["b"], "post": ["a"]}],
        "initial": ["a"], "observable": ["a", "b"]})
    g = prepare(net).game
    (tr,) = fair_maximal_traces(g, Strategy(), 4)
    assert tr.status == TRUNCATED and len(tr) == 4
    assert cross_check(g, Strategy(), parse_formula("G a"), 4).agree is True
    assert cross_check(g, Strategy(), parse_formula("G F b"), 4).agree is None


@pytest.mark.parametrize("name", ["sat", "sat_restricted", "triv", "env", "race", "branch"])
def test_agreement_on_fixtures(name):
    g = _game(name)
    goal = parse_formula(SAT_GOAL if name.startswith("sat") else "F b")
    for f in candidate_strategies(g):
        c = cross_check(g, f, goal, len(g))
        assert c.unknown == 0
        assert c.agree


def _acyclic(g):
    def succ(s):
        return g.succ[s].values()
    return not any(is_nontrivial(c, succ) for c in tarjan(len(g), succ))


def _independent(net, a, b):
    ta, tb = net.transitions[net.transition_index[a]], net.transitions[net.transition_index[b]]
    return not ((ta.pre | ta.post) & (tb.pre | tb.post))


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_trace_properties_on_random_nets(seed):
    rng = random.Random(seed)
    net = random_net(rng)
    g = prepare(net).game
    cands = list(candidate_strategies(g))
    f = cands[rng.randrange(len(cands))]
    traces = fair_maximal_traces(g, f, len(g))
    words = {tr.transitions for tr in traces}
    for tr in traces:
        # controllable firings only when selected at the source observation
        for i, t in enumerate(tr.transitions):
            if tr.controllable[i]:
                sel = f.select(g.class_of(tr.states[i]))
                assert sel is not None and g.net.transitions[sel].name == t
        # swapping adjacent independent environment firings stays in the set
        for i in range(len(tr) - 1):
            a, b = tr.transitions[i], tr.transitions[i + 1]
            if not tr.controllable[i] and not tr.controllable[i + 1] and _independent(g.net, a, b):
                swapped = tr.transitions[:i] + (b, a) + tr.transitions[i + 2:]
                assert swapped in words
    if _acyclic(g):
        names = sorted(p.name for p in net.places)
        goal = parse_formula(f"F {rng.choice(names)} | G {rng.choice(names)}")
        c = cross_check(g, f, goal, len(g))
        assert c.unknown == 0 and c.agree
