"""Fair LTL model checking of explicit Kripke models.

The fairness premise (GF a for each fairness atom) is not turned into a
formula: each atom contributes one extra acceptance set on the product of
the model with the automaton of the negated goal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import AbstractSet, Iterable, Protocol, Sequence

from ..errors import UnknownAtom
from ..graph import bfs_path, is_nontrivial, tarjan
from .buchi import to_buchi
from .formula import Formula, Not, atoms, nnf

HOLDS, FAILS, VACUOUS = "holds", "fails", "vacuous"


class Model(Protocol):
    labels: Sequence[AbstractSet[str]]
    succ: Sequence[Sequence[int]]
    initial: int
    atoms: AbstractSet[str]


@dataclass(frozen=True)
class Verdict:
    kind: str
    stem: tuple[int, ...] = field(default=())
    cycle: tuple[int, ...] = field(default=())

    @property
    def holds(self) -> bool:
        return self.kind == HOLDS

    @property
    def fails(self) -> bool:
        return self.kind == FAILS

    @property
    def vacuous(self) -> bool:
        return self.kind == VACUOUS

    def __str__(self):
        return self.kind


def _check_atoms(model: Model, names: Iterable[str]):
    unknown = sorted(set(names) - set(model.atoms))
    if unknown:
        raise UnknownAtom(f"unknown atom(s): {', '.join(unknown)}")


def _fair_scc(n, succ, roots, sets):
    """First reachable nontrivial SCC meeting every set in `sets`."""
    for comp in tarjan(n, succ, roots):
        if not is_nontrivial(comp, succ):
            continue
        members = set(comp)
        if all(members & s for s in sets):
            return comp
    return None


def _lasso(succ, roots, comp, sets):
    """Stem into `comp`, then a cycle inside it visiting every set."""
    members = set(comp)
    stem = bfs_path(roots, succ, members.__contains__)
    entry = stem[-1]
    cycle = [entry]
    for s in sets:
        if any(v in s for v in cycle):
            continue
        leg = bfs_path([cycle[-1]], succ, s.__contains__, members)
        cycle.extend(leg[1:])
    # close the loop through at least one edge
    back = bfs_path(list(succ(cycle[-1])), succ, lambda v: v == entry, members)
    cycle.extend(back[:-1])
    return stem[:-1], cycle


def exists_fair_path(model: Model, fairness_atoms: Iterable[str]) -> bool:
    fairness_atoms = list(fairness_atoms)
    _check_atoms(model, fairness_atoms)
    n = len(model.labels)
    sets = [{v for v in range(n) if a in model.labels[v]} for a in fairness_atoms]
    succ = model.succ.__getitem__
    return _fair_scc(n, succ, [model.initial], sets) is not None


def fair_lasso(model: Model, fairness_atoms: Iterable[str]):
    """Some fair lasso of the model (stem, cycle), or None."""
    fairness_atoms = list(fairness_atoms)
    _check_atoms(model, fairness_atoms)
    n = len(model.labels)
    sets = [{v for v in range(n) if a in model.labels[v]} for a in fairness_atoms]
    succ = model.succ.__getitem__
    comp = _fair_scc(n, succ, [model.initial], sets)
    if comp is None:
        return None
    return _lasso(succ, [model.initial], comp, sets)


def check_fair(model: Model, goal: Formula, fairness_atoms: Iterable[str]) -> Verdict:
    fairness_atoms = sorted(set(fairness_atoms))
    _check_atoms(model, list(atoms(goal)) + fairness_atoms)
    if not exists_fair_path(model, fairness_atoms):
        return Verdict(VACUOUS)

    aut = to_buchi(nnf(Not(goal)))
    labels = model.labels
    # product states discovered breadth-first from the initial pairs
    index: dict[tuple[int, int], int] = {}
    pairs: list[tuple[int, int]] = []
    psucc: list[list[int]] = []

    def intern(k, q):
        key = (k, q)
        i = index.get(key)
        if i is None:
            i = index[key] = len(pairs)
            pairs.append(key)
            psucc.append([])
            queue.append(i)
        return i

    queue: deque[int] = deque()
    k0 = model.initial
    roots = [intern(k0, q) for q in sorted(aut.initial) if aut.matches(q, labels[k0])]
    while queue:
        i = queue.popleft()
        k, q = pairs[i]
        out = psucc[i]
        for k2 in model.succ[k]:
            lab = labels[k2]
            for q2 in sorted(aut.succ[q]):
                if aut.matches(q2, lab):
                    out.append(intern(k2, q2))

    n = len(pairs)
    sets = [{i for i, (_, q) in enumerate(pairs) if q in acc} for acc in aut.acceptance]
    sets += [{i for i, (k, _) in enumerate(pairs) if a in labels[k]} for a in fairness_atoms]
    succ = psucc.__getitem__
    comp = _fair_scc(n, succ, roots, sets)
    if comp is None:
        return Verdict(HOLDS)
    stem, cycle = _lasso(succ, roots, comp, sets)
    return Verdict(FAILS, tuple(pairs[i][0] for i in stem), tuple(pairs[i][0] for i in cycle))
