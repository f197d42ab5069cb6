"""Strong-dominance machinery: heights, chains, antichains, clique numbers.

Two intervals containing a common gap overlap exactly when they are
comparable under ``I < J  <=>  left(I) < left(J) and right(I) < right(J)``,
so cliques there are chains and the clique number is a longest chain.
"""
from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from ._errors import PreconditionViolated
from ._kernels import max_chain_over_gaps
from ._search import complement, max_clique
from .core import Interval, IntervalSystem

__all__ = [
    "GridPoint",
    "chain_heights",
    "heights_at_point",
    "longest_chain_2d",
    "grid_max_antichain",
    "estype_check",
    "omega",
    "omega_at_point",
    "random_chain_bounded_subset",
]


@dataclass(frozen=True, order=True)
class GridPoint:
    x: int
    y: int

    def precedes(self, other: "GridPoint") -> bool:
        return self.x < other.x and self.y < other.y


def chain_heights(points: Sequence[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """Heights of ``(x, y)`` points under strict dominance, with predecessor links.

    Returns ``(heights, preds)`` aligned with ``points``; ``preds[k]`` is the
    index of a height ``h-1`` predecessor with the smallest ``y`` (``-1`` for
    height 1). Runs in O(k log k).
    """
    # equal x never chain: process them with decreasing y
    order = sorted(range(len(points)), key=lambda k: (points[k][0], -points[k][1]))
    heights = [0] * len(points)
    preds = [-1] * len(points)
    tails: list[int] = []
    tail_idx: list[int] = []
    for k in order:
        y = points[k][1]
        pos = bisect_left(tails, y)
        heights[k] = pos + 1
        preds[k] = tail_idx[pos - 1] if pos else -1
        if pos == len(tails):
            tails.append(y)
            tail_idx.append(k)
        else:
            tails[pos] = y
            tail_idx[pos] = k
    return heights, preds


def heights_at_point(system: IntervalSystem, gap: int) -> dict:
    """Map id -> height for the intervals of ``system`` containing ``gap``."""
    members = system.containing(gap)
    heights, _ = chain_heights([(iv.left, iv.right) for iv in members])
    return {iv.id: h for iv, h in zip(members, heights)}


def omega_at_point(system: IntervalSystem, gap: int, members: Iterable[Interval] | None = None) -> int:
    """Clique number of the intervals containing ``gap``.

    ``members`` restricts the candidates (e.g. to still-unassigned
    intervals); only those containing ``gap`` are counted.
    """
    pool = system.intervals if members is None else members
    pts = [(iv.left, iv.right) for iv in pool if iv.left <= gap < iv.right]
    if not pts:
        return 0
    heights, _ = chain_heights(pts)
    return max(heights)


def longest_chain_2d(points: Iterable) -> tuple[int, list[GridPoint]]:
    pts = [p if isinstance(p, GridPoint) else GridPoint(*p) for p in points]
    if not pts:
        return 0, []
    heights, preds = chain_heights([(p.x, p.y) for p in pts])
    top = max(range(len(pts)), key=lambda k: (heights[k], -pts[k].y))
    chain = []
    while top != -1:
        chain.append(pts[top])
        top = preds[top]
    return len(chain), chain[::-1]


def grid_max_antichain(a: int, b: int, brute_force: bool = False) -> int:
    """Largest antichain of ``[a] x [b]`` under strong dominance.

    The closed form is ``a + b - 1``; ``brute_force=True`` instead runs an
    exact search (practical up to about 6 x 6).
    """
    if a < 1 or b < 1:
        raise ValueError("grid sides must be positive")
    if not brute_force:
        return a + b - 1
    pts = list(product(range(1, a + 1), range(1, b + 1)))
    comparable = [0] * len(pts)
    for i, (x1, y1) in enumerate(pts):
        for j, (x2, y2) in enumerate(pts):
            if (x1 < x2 and y1 < y2) or (x2 < x1 and y2 < y1):
                comparable[i] |= 1 << j
    return bin(max_clique(complement(comparable))).count("1")


def estype_check(S: Iterable, a: int, b: int, n: int) -> bool:
    """Whether ``|S| <= n(a + b - n)`` for a chain-bounded ``S`` in ``[a] x [b]``.

    Raises PreconditionViolated when S holds a chain longer than ``n``.
    """
    pts = {p if isinstance(p, GridPoint) else GridPoint(*p) for p in S}
    if not 1 <= n <= min(a, b):
        raise ValueError(f"need 1 <= n <= min(a, b), got n={n}, a={a}, b={b}")
    for p in pts:
        if not (1 <= p.x <= a and 1 <= p.y <= b):
            raise ValueError(f"{p} lies outside [{a}] x [{b}]")
    length, _ = longest_chain_2d(pts)
    if length > n:
        raise PreconditionViolated(f"S contains a chain of length {length} > {n}")
    return len(pts) <= n * (a + b - n)


def random_chain_bounded_subset(a: int, b: int, n: int, rng: random.Random, density: float | None = None):
    """Rejection-sample a subset of ``[a] x [b]`` whose longest chain is at most ``n``."""
    while True:
        p = rng.random() if density is None else density
        S = {GridPoint(x, y) for x in range(1, a + 1) for y in range(1, b + 1) if rng.random() < p}
        if longest_chain_2d(S)[0] <= n:
            return S


def omega(system: IntervalSystem) -> tuple[int, tuple[Interval, ...]]:
    """Clique number of the overlap graph and a maximum clique.

    Every pairwise-overlapping set shares a gap, and the chain length at a
    gap can only grow until the next right endpoint, so only gaps after a
    left endpoint that is followed by a right endpoint are inspected. The
    witness comes from the rightmost such gap attaining the maximum.
    """
    m = system.m
    if m == 0:
        return 0, ()
    ivs = sorted(system.intervals, key=lambda iv: iv.left)
    lefts = np.fromiter((iv.left for iv in ivs), dtype=np.int64, count=m)
    rights = np.fromiter((iv.right for iv in ivs), dtype=np.int64, count=m)
    is_right = np.zeros(2 * m + 2, dtype=bool)
    is_right[rights] = True
    is_right[2 * m + 1] = True
    candidates = is_right[lefts + 1]
    best, gap = max_chain_over_gaps(lefts, rights, candidates)
    return int(best), _chain_witness(system, int(gap))


def _chain_witness(system: IntervalSystem, gap: int) -> tuple[Interval, ...]:
    members = system.containing(gap)
    heights, preds = chain_heights([(iv.left, iv.right) for iv in members])
    top = max(range(len(members)), key=lambda k: (heights[k], -members[k].right))
    chain = []
    while top != -1:
        chain.append(members[top])
        top = preds[top]
    return tuple(chain[::-1])
