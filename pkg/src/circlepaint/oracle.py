"""Ground truth for tests: exact chromatic number, a colouring checker, random instances.

Nothing here touches the pillar machinery, so it can judge it.

Random instances use splitmix64 so fixtures are reproducible anywhere::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    return z ^ (z >> 31)

``random_system(m, seed)`` shuffles ``[1, 2m]`` with Fisher-Yates
(``for i = 2m-1 .. 1: j = next() % (i + 1); swap(a[i], a[j])``) and pairs
consecutive entries; interval ``k`` (id ``str(k)``) takes the smaller value
of pair ``k`` as its left end.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping

from .core import Graph, Interval, IntervalSystem

__all__ = [
    "SplitMix64",
    "Exhausted",
    "exact_chi",
    "greedy_colouring",
    "verify_colouring",
    "random_system",
    "brute_force_chi",
]

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n


def random_system(m: int, seed: int) -> IntervalSystem:
    if m < 0:
        raise ValueError("m must be non-negative")
    rng = SplitMix64(seed)
    values = list(range(1, 2 * m + 1))
    for i in range(2 * m - 1, 0, -1):
        j = rng.below(i + 1)
        values[i], values[j] = values[j], values[i]
    return IntervalSystem(
        Interval(str(k), min(values[2 * k], values[2 * k + 1]), max(values[2 * k], values[2 * k + 1]))
        for k in range(m)
    )


@dataclass(frozen=True)
class Exhausted:
    """The exact search ran out of node budget."""

    nodes: int

    def __str__(self):
        return "exhausted"


def verify_colouring(graph: Graph, colors: Mapping[Hashable, int]) -> bool:
    for v in graph.vertices:
        if colors.get(v) is None:
            return False
    return all(colors[u] != colors[v] for u, v in graph.edges())


def greedy_colouring(graph: Graph) -> dict:
    """First-fit in order of decreasing degree (ties by vertex order)."""
    order = sorted(graph.vertices, key=lambda v: -len(graph.adjacency[v]))
    colors: dict = {}
    for v in order:
        taken = {colors[u] for u in graph.adjacency[v] if u in colors}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return colors


def exact_chi(graph: Graph, node_budget: int = 10**7, lower_bound: int = 0) -> int | Exhausted:
    """Chromatic number by DSATUR branch and bound.

    ``lower_bound`` (for instance a known clique size) lets the search stop
    as soon as a colouring that small is found. Returns :class:`Exhausted`
    when more than ``node_budget`` search nodes would be expanded.
    """
    verts = list(graph.vertices)
    n = len(verts)
    if n == 0:
        return 0
    index = {v: k for k, v in enumerate(verts)}
    nbrs = [[index[u] for u in graph.adjacency[v]] for v in verts]
    deg = [len(a) for a in nbrs]
    best = max(greedy_colouring(graph).values())
    floor = max(lower_bound, 1 if not graph.edge_count else 2)
    if best <= floor:
        return best

    colour = [0] * n
    # neighbour_count[v][c]: neighbours of v currently wearing colour c
    neighbour_count = [dict() for _ in range(n)]
    nodes = 0

    class _Out(Exception):
        pass

    def pick():
        chosen, key = -1, None
        for v in range(n):
            if colour[v]:
                continue
            k = (len(neighbour_count[v]), deg[v], -v)
            if key is None or k > key:
                chosen, key = v, k
        return chosen

    def paint(v, c, sign):
        colour[v] = c if sign > 0 else 0
        for u in nbrs[v]:
            cnt = neighbour_count[u]
            cnt[c] = cnt.get(c, 0) + sign
            if not cnt[c]:
                del cnt[c]

    def search(coloured, used):
        nonlocal best, nodes
        if coloured == n:
            best = used
            if best <= floor:
                raise _Out
            return
        nodes += 1
        if nodes > node_budget:
            raise _Out
        v = pick()
        for c in range(1, min(used + 1, best - 1) + 1):
            if c in neighbour_count[v]:
                continue
            paint(v, c, +1)
            search(coloured + 1, max(used, c))
            paint(v, c, -1)
            if best <= max(used, floor):
                return

    try:
        search(0, 0)
    except _Out:
        if nodes > node_budget:
            return Exhausted(nodes)
    return best


def brute_force_chi(graph: Graph) -> int:
    """Smallest k admitting a proper k-colouring, by plain enumeration (tiny graphs only)."""
    from itertools import product

    verts = list(graph.vertices)
    if not verts:
        return 0
    edges = [(verts.index(u), verts.index(v)) for u, v in graph.edges()]
    for k in range(1, len(verts) + 1):
        for assignment in product(range(k), repeat=len(verts)):
            if all(assignment[a] != assignment[b] for a, b in edges):
                return k
    return len(verts)
