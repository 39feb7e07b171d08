"""Random formulas, random Kripke models and an automaton-run oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from hypothesis import strategies as st

from petrigame.graph import tarjan
from petrigame.ltl import (
    FALSE, TRUE, Always, And, Eventually, Implies, Not, Or, Prop, Release, Until,
)

_BINARY = [And, Or, Implies, Until, Release]
_UNARY = [Not, Eventually, Always]


def random_formula(rng: random.Random, atoms, depth: int):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.08:
            return TRUE
        if r < 0.12:
            return FALSE
        return Prop(rng.choice(atoms))
    if rng.random() < 0.4:
        return rng.choice(_UNARY)(random_formula(rng, atoms, depth - 1))
    op = rng.choice(_BINARY)
    return op(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))


def formulas(atoms=("a", "b"), depth=4):
    leaves = st.sampled_from([TRUE, FALSE] + [Prop(a) for a in atoms])

    def extend(children):
        return st.one_of(
            st.builds(Not, children), st.builds(Eventually, children), st.builds(Always, children),
            *(st.builds(op, children, children) for op in _BINARY),
        )

    return st.recursive(leaves, extend, max_leaves=2 ** depth)


def labels_over(atoms):
    out = []
    for mask in range(1 << len(atoms)):
        out.append(frozenset(a for i, a in enumerate(atoms) if mask >> i & 1))
    return out


def lassos(atoms, max_len):
    """Every (stem, cycle) word with stem + cycle length <= max_len."""
    labs = labels_over(atoms)

    def words(n):
        if n == 0:
            yield ()
            return
        for w in words(n - 1):
            for lab in labs:
                yield w + (lab,)

    for total in range(1, max_len + 1):
        for k in range(total):
            for w in words(total):
                yield w[:k], w[k:]


@dataclass
class Model:
    labels: list
    succ: list
    initial: int = 0
    atoms: frozenset = field(default_factory=frozenset)


def random_model(rng: random.Random, n: int, atoms, max_out: int = 2) -> Model:
    labels = [frozenset(a for a in atoms if rng.random() < 0.5) for _ in range(n)]
    succ = [sorted(set(rng.choice(range(n)) for _ in range(rng.randint(1, max_out))))
            for _ in range(n)]
    return Model(labels, succ, 0, frozenset(atoms))


def automaton_accepts(aut, stem, cycle) -> bool:
    """Run the automaton on stem.cycle^w through an explicit product."""
    word = list(stem) + list(cycle)
    n, loop = len(word), len(stem)

    def nxt(i):
        return i + 1 if i + 1 < n else loop

    index, order, succ = {}, [], []
    for q in sorted(aut.initial):
        if aut.matches(q, word[0]):
            index[(0, q)] = len(order)
            order.append((0, q))
    i = 0
    while i < len(order):
        p, q = order[i]
        out = []
        for q2 in sorted(aut.succ[q]):
            if aut.matches(q2, word[nxt(p)]):
                key = (nxt(p), q2)
                if key not in index:
                    index[key] = len(order)
                    order.append(key)
                out.append(index[key])
        succ.append(out)
        i += 1
    for comp in tarjan(len(order), lambda v: succ[v]):
        if len(comp) == 1 and comp[0] not in succ[comp[0]]:
            continue
        if all(any(order[v][1] in acc for v in comp) for acc in aut.acceptance):
            return True
    return False
