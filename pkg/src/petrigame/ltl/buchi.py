"""Tableau translation of NNF formulas to state-labelled generalized Büchi automata.

Each automaton state carries the literals it requires of the current letter.
A run q0 q1 ... reads w0 w1 ... when every wi satisfies the literals of qi,
q0 is initial and each q(i+1) is a successor of qi. One acceptance set is
produced per until-subformula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import AbstractSet

from .formula import And, FalseConst, Formula, Not, Or, Prop, Release, TrueConst, Until


@dataclass(frozen=True)
class GeneralizedBuchi:
    positive: tuple[frozenset[str], ...]  # atoms that must hold in each state
    negative: tuple[frozenset[str], ...]  # atoms that must not hold
    succ: tuple[frozenset[int], ...]
    initial: frozenset[int]
    acceptance: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.positive)

    def matches(self, q: int, letter: AbstractSet[str]) -> bool:
        return self.positive[q] <= letter and not (self.negative[q] & letter)


def _is_literal(f: Formula) -> bool:
    return isinstance(f, (Prop, TrueConst, FalseConst)) or (
        isinstance(f, Not) and isinstance(f.operand, Prop)
    )


def _negate_literal(f: Formula) -> Formula:
    return f.operand if isinstance(f, Not) else Not(f)


@lru_cache(maxsize=4096)
def to_buchi(f: Formula) -> GeneralizedBuchi:
    """Translate a formula in negation normal form (see `nnf`)."""
    INIT = -1
    # finished nodes: (incoming set, old, next)
    done: list[tuple[set[int], frozenset, frozenset]] = []
    key_of: dict[tuple[frozenset, frozenset], int] = {}

    # pending nodes: (incoming, new, old, next)
    stack = [({INIT}, frozenset({f}), frozenset(), frozenset())]
    while stack:
        incoming, new, old, nxt = stack.pop()
        if not new:
            key = (old, nxt)
            i = key_of.get(key)
            if i is not None:
                done[i][0].update(incoming)
                continue
            i = key_of[key] = len(done)
            done.append((set(incoming), old, nxt))
            stack.append(({i}, nxt, frozenset(), frozenset()))
            continue
        g = min(new, key=str)  # fixed order keeps state numbering reproducible
        new = new - {g}
        if g in old:
            stack.append((incoming, new, old, nxt))
            continue
        if _is_literal(g):
            if isinstance(g, FalseConst) or _negate_literal(g) in old:
                continue
            stack.append((incoming, new, old | {g}, nxt))
        elif isinstance(g, And):
            stack.append((incoming, new | ({g.left, g.right} - old), old | {g}, nxt))
        elif isinstance(g, Or):
            stack.append((incoming, new | ({g.left} - old), old | {g}, nxt))
            stack.append((incoming, new | ({g.right} - old), old | {g}, nxt))
        elif isinstance(g, Until):
            stack.append((incoming, new | ({g.left} - old), old | {g}, nxt | {g}))
            stack.append((incoming, new | ({g.right} - old), old | {g}, nxt))
        elif isinstance(g, Release):
            stack.append((incoming, new | ({g.right} - old), old | {g}, nxt | {g}))
            stack.append((incoming, new | ({g.left, g.right} - old), old | {g}, nxt))
        else:
            raise ValueError(f"formula is not in negation normal form: {g}")

    n = len(done)
    succ: list[set[int]] = [set() for _ in range(n)]
    initial = set()
    for j, (incoming, _, _) in enumerate(done):
        for i in incoming:
            if i == INIT:
                initial.add(j)
            else:
                succ[i].add(j)

    untils = set()
    for _, old, _ in done:
        untils.update(g for g in old if isinstance(g, Until))
    acceptance = tuple(
        frozenset(j for j, (_, old, _) in enumerate(done) if u not in old or u.right in old)
        for u in sorted(untils, key=str)
    )
    positive = tuple(frozenset(g.name for g in old if isinstance(g, Prop)) for _, old, _ in done)
    negative = tuple(
        frozenset(g.operand.name for g in old if isinstance(g, Not) and isinstance(g.operand, Prop))
        for _, old, _ in done
    )
    return GeneralizedBuchi(positive, negative, tuple(frozenset(s) for s in succ),
                            frozenset(initial), acceptance)
