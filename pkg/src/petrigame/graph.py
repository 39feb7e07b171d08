"""Small graph helpers over integer-indexed adjacency lists."""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence


def tarjan(n: int, succ: Callable[[int], Iterable[int]], roots: Iterable[int] | None = None):
    """Strongly connected components reachable from `roots` (default: all nodes).

    Iterative, so deep graphs do not hit the recursion limit. Components are
    returned in reverse topological order (sinks first).
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(n) if roots is None else roots:
        if index[root] != -1:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def is_nontrivial(comp: Sequence[int], succ: Callable[[int], Iterable[int]]) -> bool:
    """True when the component carries at least one cycle."""
    if len(comp) > 1:
        return True
    v = comp[0]
    return v in set(succ(v))


def bfs_path(sources: Iterable[int], succ, goal: Callable[[int], bool], allowed=None):
    """Shortest path (list of nodes) from any source to a node satisfying `goal`.

    `allowed` restricts intermediate and final nodes. Sources themselves are
    tested against `goal` first.
    """
    parent: dict[int, int | None] = {}
    queue = deque()
    for s in sources:
        if s not in parent and (allowed is None or s in allowed):
            parent[s] = None
            queue.append(s)
    while queue:
        v = queue.popleft()
        if goal(v):
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in succ(v):
            if w not in parent and (allowed is None or w in allowed):
                parent[w] = v
                queue.append(w)
    return None
