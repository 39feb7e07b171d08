"""Independent fair-path oracle for the model checker.

Works on the explicit Kripke graph only: transitive closure for the
existence of a fair cycle, and bounded walk enumeration for lasso words.
"""

from __future__ import annotations

from petrigame.ltl import evaluate


def reachable(m) -> set[int]:
    seen, todo = {m.initial}, [m.initial]
    while todo:
        for y in m.succ[todo.pop()]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def closure(m) -> list[set[int]]:
    """reach[x] = states reachable from x in one or more steps."""
    n = len(m.labels)
    reach = [set(m.succ[x]) for x in range(n)]
    for k in range(n):
        for x in range(n):
            if k in reach[x]:
                reach[x] |= reach[k]
    return reach


def fair_cycle_exists(m, fairness) -> bool:
    reach = closure(m)
    for v in reachable(m):
        if v not in reach[v]:
            continue
        scc = {w for w in reach[v] if v in reach[w]}
        if all(any(a in m.labels[w] for w in scc) for a in fairness):
            return True
    return False


def is_fair_lasso(m, stem, cycle, fairness) -> bool:
    path = list(stem) + list(cycle)
    if not cycle or path[0] != m.initial:
        return False
    if any(y not in m.succ[x] for x, y in zip(path, path[1:])):
        return False
    if cycle[0] not in m.succ[cycle[-1]]:
        return False
    return all(any(a in m.labels[k] for k in cycle) for a in fairness)


def fair_lasso_words(m, fairness, max_stem: int, max_cycle: int) -> set[tuple[tuple, tuple]]:
    """Label words of fair lassos whose stem and cycle are walks within the bounds."""
    words = set()
    stems = [(m.initial,)]
    frontier = [(m.initial,)]
    for _ in range(max_stem):
        frontier = [w + (y,) for w in frontier for y in m.succ[w[-1]]]
        stems.extend(frontier)
    for stem in stems:
        start = stem[-1]
        prefix = stem[:-1]
        walks = [(start,)]
        for _ in range(max_cycle):
            for w in walks:
                if start in m.succ[w[-1]] and all(
                        any(a in m.labels[k] for k in w) for a in fairness):
                    words.add((tuple(m.labels[k] for k in prefix),
                               tuple(m.labels[k] for k in w)))
            walks = [w + (y,) for w in walks for y in m.succ[w[-1]]]
    return words


def disagreements(m, fairness, goals, verdicts, words) -> list[str]:
    """Every way `verdicts` (one per goal) contradicts the oracle."""
    out = []
    fair = fair_cycle_exists(m, fairness)
    for goal, v in zip(goals, verdicts):
        if v.vacuous != (not fair):
            out.append(f"{goal}: vacuity {v.kind} vs fair path {fair}")
            continue
        if v.fails:
            ok = is_fair_lasso(m, v.stem, v.cycle, fairness) and not evaluate(
                goal, [m.labels[k] for k in v.stem], [m.labels[k] for k in v.cycle])
            if not ok:
                out.append(f"{goal}: counterexample does not certify")
        elif v.holds:
            bad = next((w for w in words if not evaluate(goal, *w)), None)
            if bad is not None:
                out.append(f"{goal}: holds but a fair lasso violates it")
    return out
