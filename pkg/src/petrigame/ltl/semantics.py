"""Direct semantic evaluation, used as an oracle for the automaton route.

`evaluate` decides a formula exactly on an ultimately periodic word
(stem followed by a repeated cycle). `evaluate_prefix` gives a three-valued
answer on a finite prefix whose continuation is unknown.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .formula import (
    Always, And, Eventually, FalseConst, Formula, Implies, Not, Or, Prop, Release,
    TrueConst, Until,
)

Label = frozenset  # set of atom names true at one position


def evaluate(f: Formula, stem: Sequence[Label], cycle: Sequence[Label]) -> bool:
    """Truth of `f` at position 0 of stem·cycle^ω."""
    if not cycle:
        raise ValueError("the cycle of a lasso must be non-empty")
    word = list(stem) + list(cycle)
    n, loop = len(word), len(stem)
    full = (1 << n) - 1

    def shift(x: int) -> int:
        # bit i of the result is bit succ(i) of x
        out = x >> 1
        if x >> loop & 1:
            out |= 1 << (n - 1)
        return out & full

    cache: dict[Formula, int] = {}

    def sat(g: Formula) -> int:
        hit = cache.get(g)
        if hit is not None:
            return hit
        if isinstance(g, TrueConst):
            r = full
        elif isinstance(g, FalseConst):
            r = 0
        elif isinstance(g, Prop):
            r = sum(1 << i for i, lab in enumerate(word) if g.name in lab)
        elif isinstance(g, Not):
            r = full & ~sat(g.operand)
        elif isinstance(g, And):
            r = sat(g.left) & sat(g.right)
        elif isinstance(g, Or):
            r = sat(g.left) | sat(g.right)
        elif isinstance(g, Implies):
            r = (full & ~sat(g.left)) | sat(g.right)
        elif isinstance(g, (Until, Eventually)):
            a = full if isinstance(g, Eventually) else sat(g.left)
            b = sat(g.operand if isinstance(g, Eventually) else g.right)
            r = b
            while True:  # least fixpoint of b | (a & next)
                nxt = b | (a & shift(r))
                if nxt == r:
                    break
                r = nxt
        elif isinstance(g, (Release, Always)):
            a = 0 if isinstance(g, Always) else sat(g.left)
            b = sat(g.operand if isinstance(g, Always) else g.right)
            r = b
            while True:  # greatest fixpoint of b & (a | next)
                nxt = b & (a | shift(r))
                if nxt == r:
                    break
                r = nxt
        else:
            raise TypeError(f"not a formula: {g!r}")
        cache[g] = r
        return r

    return bool(sat(f) & 1)


class Truth(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


def _not(a):
    return {Truth.TRUE: Truth.FALSE, Truth.FALSE: Truth.TRUE}.get(a, Truth.UNKNOWN)


def _and(a, b):
    if Truth.FALSE in (a, b):
        return Truth.FALSE
    if a is Truth.TRUE and b is Truth.TRUE:
        return Truth.TRUE
    return Truth.UNKNOWN


def _or(a, b):
    return _not(_and(_not(a), _not(b)))


def _beyond(g: Formula) -> Truth:
    """Value on an entirely unknown suffix.

    TRUE (FALSE) means the formula holds (fails) at every position of every word.
    """
    if isinstance(g, TrueConst):
        return Truth.TRUE
    if isinstance(g, FalseConst):
        return Truth.FALSE
    if isinstance(g, Prop):
        return Truth.UNKNOWN
    if isinstance(g, Not):
        return _not(_beyond(g.operand))
    if isinstance(g, And):
        return _and(_beyond(g.left), _beyond(g.right))
    if isinstance(g, Or):
        return _or(_beyond(g.left), _beyond(g.right))
    if isinstance(g, Implies):
        return _or(_not(_beyond(g.left)), _beyond(g.right))
    if isinstance(g, (Eventually, Always)):
        return _beyond(g.operand)
    # both a U b and a R b are decided by b alone when b is constant everywhere
    return _beyond(g.right)


def evaluate_prefix(f: Formula, prefix: Sequence[Label]) -> Truth:
    """Kleene three-valued value of `f` on a finite prefix of some infinite word.

    TRUE/FALSE are returned only when every infinite extension agrees.
    """
    n = len(prefix)
    memo: dict[tuple[Formula, int], Truth] = {}

    def val(g: Formula, i: int) -> Truth:
        if i >= n:
            return _beyond(g)
        key = (g, i)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(g, TrueConst):
            r = Truth.TRUE
        elif isinstance(g, FalseConst):
            r = Truth.FALSE
        elif isinstance(g, Prop):
            r = Truth.TRUE if g.name in prefix[i] else Truth.FALSE
        elif isinstance(g, Not):
            r = _not(val(g.operand, i))
        elif isinstance(g, And):
            r = _and(val(g.left, i), val(g.right, i))
        elif isinstance(g, Or):
            r = _or(val(g.left, i), val(g.right, i))
        elif isinstance(g, Implies):
            r = _or(_not(val(g.left, i)), val(g.right, i))
        else:
            r = None
        if r is not None:
            memo[key] = r
        return r if r is not None else _temporal(g, i)

    def _temporal(g: Formula, i: int) -> Truth:
        # filled right to left so recursion depth stays bounded
        for j in range(n - 1, i - 1, -1):
            if (g, j) in memo:
                continue
            later = memo[(g, j + 1)] if j + 1 < n else _beyond(g)
            if isinstance(g, Eventually):
                r = _or(val(g.operand, j), later)
            elif isinstance(g, Always):
                r = _and(val(g.operand, j), later)
            elif isinstance(g, Until):
                r = _or(val(g.right, j), _and(val(g.left, j), later))
            elif isinstance(g, Release):
                r = _and(val(g.right, j), _or(val(g.left, j), later))
            else:
                raise TypeError(f"not a formula: {g!r}")
            memo[(g, j)] = r
        return memo[(g, i)]

    return val(f, 0)
