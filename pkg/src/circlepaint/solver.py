"""Colour a circle graph within 2w log2 w + 2w log2 log2 w + 10w colours.

The main loop repeatedly takes the leftmost arch still holding an uncoloured
interval, cuts it by a left-to-right sweep into blocks of degree exactly 2w,
adds one pillar inside the leftmost uncoloured interval, and inserts all the
new pillars median-first so every sub-arch gains at most ``w`` colours per
recursion level. Each proven inequality is re-checked as it is used; a
failure raises :class:`InvariantViolation` instead of returning a colouring.
"""
from __future__ import annotations

import logging
from bisect import bisect_right
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable

from ._errors import (
    DuplicatePillarGap,
    GapOutsideArch,
    InvariantViolation,
    NoUncolouredIntervalInArch,
    OmegaTooSmall,
)
from .core import GapInterval, IntervalSystem
from .dominance import omega as clique_number
from .pillar import PillarState, colouring_to_json, laminar_violation

__all__ = [
    "SolveStats",
    "CompleteColouring",
    "bound",
    "arch_degree_bound",
    "sweep_bound",
    "dnc_extend",
    "sweep_pillars",
    "colour",
]

log = logging.getLogger(__name__)


def _terms(omega: int) -> tuple[float, float]:
    lg = math.log2(omega)
    return omega * lg, omega * math.log2(lg)


def bound(omega: int) -> int:
    """Ceiling of ``2w log2 w + 2w log2 log2 w + 10w`` (requires w >= 2)."""
    if omega < 2:
        raise OmegaTooSmall(f"bound needs omega >= 2, got {omega}")
    a, b = _terms(omega)
    return math.ceil(2 * a + 2 * b + 10 * omega)


def arch_degree_bound(omega: int) -> int:
    """Ceiling of ``w log2 w + w log2 log2 w + 6w``; arches never exceed it."""
    if omega < 2:
        raise OmegaTooSmall(f"arch bound needs omega >= 2, got {omega}")
    a, b = _terms(omega)
    return math.ceil(a + b + 6 * omega)


def sweep_bound(omega: int) -> float:
    """Strict upper limit ``w log2 w + w log2 log2 w + 5w`` on the sweep count."""
    a, b = _terms(omega)
    return a + b + 5 * omega


@dataclass
class SolveStats:
    omega: int = 0
    colors_used: int = 0
    bound: int = 0
    pillar_count: int = 0
    iteration_count: int = 0
    max_arch_degree_seen: int = 0
    assertions_checked: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class CompleteColouring:
    colors: dict
    stats: SolveStats
    state: PillarState | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        if self.state is not None:
            out = colouring_to_json(self.state)
        else:
            out = {"colors": {}, "colour_sets": [], "pillar_order": [], "chi_used": 0, "complete": True}
        out["colors"] = {str(k): v for k, v in self.colors.items()}
        out["stats"] = self.stats.as_dict()
        return out


class _Checker:
    """Counts and enforces runtime assertions."""

    def __init__(self, enabled: bool, stats: SolveStats, state_ref):
        self.enabled = enabled
        self.stats = stats
        self._state_ref = state_ref

    def __call__(self, ok: bool, message: str, **details):
        self.stats.assertions_checked += 1
        if not ok:
            state = self._state_ref()
            details.setdefault(
                "state",
                {"pillars": len(state), "coloured": state.coloured_count, "last_gaps": list(state.gaps[-8:])}
                if state is not None
                else None,
            )
            raise InvariantViolation(message, details)


def _blocks(lo: int, hi: int, cuts: Iterable[int]) -> list[tuple[int, int]]:
    bounds = [lo, *sorted(cuts), hi]
    return list(zip(bounds, bounds[1:]))


def _median_first(qs: list[int]) -> list[int]:
    """Pre-order of the median recursion: median, then left half, then right half."""
    out: list[int] = []
    stack = [(0, len(qs))]
    while stack:
        a, b = stack.pop()
        if a >= b:
            continue
        size = b - a
        mid = a + (size + 1) // 2 - 1
        out.append(qs[mid])
        stack.append((mid + 1, b))
        stack.append((a, mid))
    return out


def _is_arch(led, lo: int, hi: int) -> bool:
    if not lo < hi:
        return False
    if not (lo == 0 or lo in led.gapset) or not (hi == 2 * led.system.m or hi in led.gapset):
        return False
    k = bisect_right(led.sorted_gaps, lo)
    return k == len(led.sorted_gaps) or led.sorted_gaps[k] >= hi


def dnc_extend(state: PillarState, K, Q: Iterable[int], omega: int | None = None,
               check: bool = True, _checker: _Checker | None = None) -> PillarState:
    """Add the pillars ``Q`` (inside arch ``K``) after all existing pillars.

    Pillars go in median-first pre-order. With ``t`` the largest degree of a
    block of ``K`` minus ``Q`` beforehand, afterwards every such block has
    degree at most ``t + w * ceil(log2(|Q| + 1))`` and the palette is at most
    ``max(old palette, d(K) + w * ceil(log2(|Q| + 1)))``; both are asserted
    when ``check`` is set.
    """
    lo, hi = (K.lo, K.hi) if isinstance(K, GapInterval) else K
    led = state._live()
    if not _is_arch(led, lo, hi):
        raise GapOutsideArch(f"({lo}, {hi}) is not an arch of the state")
    qs = sorted(set(Q))
    for q in qs:
        if q in led.gapset:
            raise DuplicatePillarGap(f"gap {q} is already a pillar")
        if not lo < q < hi:
            raise GapOutsideArch(f"gap {q} is not strictly inside arch ({lo}, {hi})")
    if not qs:
        return state
    if omega is None:
        omega = clique_number(state.system)[0]
    checker = _checker or _Checker(check, SolveStats(), lambda: state)
    blocks = _blocks(lo, hi, qs)
    if check:
        t = max(led.degree(a, b) for a, b in blocks)
        d_K = led.degree(lo, hi)
        chi_before = state.chi_used()
    for q in _median_first(qs):
        state = state.append(q)
    if check:
        led = state._live()
        growth = omega * math.ceil(math.log2(len(qs) + 1))
        for a, b in blocks:
            d = led.degree(a, b)
            checker(d <= t + growth, "sub-arch degree exceeds t + w*ceil(log2(|Q|+1))",
                    arch=(a, b), degree=d, t=t, growth=growth)
        checker(state.chi_used() <= max(chi_before, d_K + growth),
                "palette exceeds max(chi, d(K) + w*ceil(log2(|Q|+1)))",
                chi=state.chi_used(), chi_before=chi_before, d_K=d_K, growth=growth)
    return state


def _leftmost_uncoloured_inside(led, lo: int, hi: int):
    for e in range(lo + 1, hi + 1):
        i = led.owner[e]
        if e == led.left[i] and not led.colour[i] and led.right[i] <= hi:
            return i
    return None


def _sweep(led, lo: int, hi: int, threshold: int) -> list[int]:
    """Cut points q_1 < ... < q_n of the degree sweep over (lo, hi)."""
    owner, colour = led.owner, led.colour
    cuts = []
    start = lo
    while True:
        seen = set()
        full_at = None
        e = start + 1
        cut = None
        while e <= hi:
            c = colour[owner[e]]
            if c and c not in seen:
                seen.add(c)
                if len(seen) == threshold:
                    full_at = e
                elif len(seen) > threshold:
                    cut = full_at
                    break
            e += 1
        if cut is None:
            return cuts
        cuts.append(cut)
        start = cut


def sweep_pillars(state: PillarState, K, omega: int, check: bool = True,
                  _checker: _Checker | None = None) -> list[int]:
    """New pillars for arch ``K``: the 2w-degree cut points plus one inside an uncoloured interval.

    The cut points split ``K`` into blocks of degree exactly ``2w`` followed
    by a tail of degree at most ``2w``. The extra pillar is placed just after
    the left endpoint of the leftmost uncoloured interval lying in ``K``.
    """
    lo, hi = (K.lo, K.hi) if isinstance(K, GapInterval) else K
    led = state._live()
    target = _leftmost_uncoloured_inside(led, lo, hi)
    if target is None:
        raise NoUncolouredIntervalInArch(f"arch ({lo}, {hi}) holds no uncoloured interval")
    cuts = _sweep(led, lo, hi, 2 * omega)
    q_star = led.left[target]
    if check:
        checker = _checker or _Checker(True, SolveStats(), lambda: state)
        n = len(cuts)
        checker(n < sweep_bound(omega), "sweep produced too many cut points",
                arch=(lo, hi), n=n, limit=sweep_bound(omega))
        if n:
            # the partition as written in the proof: the last block runs to the arch end
            parts = _blocks(lo, hi, cuts[:-1])
            d_K = led.degree(lo, hi)
            if d_K >= omega and len(parts) >= omega:
                total = sum(led.degree(a, b) for a, b in parts)
                checker(total <= omega * (d_K + len(parts) - omega),
                        "degree-sum inequality failed on the sweep partition",
                        arch=(lo, hi), total=total, d_K=d_K, parts=len(parts))
    return sorted(set(cuts) | {q_star})


def _verify_total(system: IntervalSystem, colors: list[int]) -> tuple | None:
    """Independent properness check: each colour class must be laminar."""
    classes: dict[int, list] = {}
    for iv, c in zip(system.intervals, colors):
        if c <= 0:
            return ("uncoloured", iv.id)
        classes.setdefault(c, []).append((iv.left, iv.right))
    for c, members in classes.items():
        bad = laminar_violation(members)
        if bad:
            return ("overlap", c, bad)
    return None


def colour(system: IntervalSystem, check: bool = True) -> CompleteColouring:
    """Return a complete proper colouring of ``system``.

    ``check`` enables the runtime assertions of every proven inequality.
    Properness of the final colouring is always re-verified.
    """
    w, _ = clique_number(system)
    stats = SolveStats(omega=w)
    if w <= 1:
        colors = {iv.id: 1 for iv in system.intervals}
        stats.colors_used = len(set(colors.values()))
        stats.bound = w
        return CompleteColouring(colors, stats, None)

    stats.bound = bound(w)
    arch_limit = arch_degree_bound(w)
    state = PillarState.empty(system)
    checker = _Checker(check, stats, lambda: state)
    led = state._live()
    order = sorted(range(system.m), key=lambda i: led.left[i])
    cursor = 0
    while True:
        led = state._live()
        while cursor < len(order) and led.colour[order[cursor]]:
            cursor += 1
        if cursor == len(order):
            break
        target = order[cursor]
        # the leftmost uncoloured interval lies in the leftmost arch holding one
        lo, hi = led.arch_of(led.left[target])
        Q = sweep_pillars(state, (lo, hi), w, check=check, _checker=checker)
        before = state.coloured_count
        state = dnc_extend(state, (lo, hi), Q, omega=w, check=check, _checker=checker)
        stats.iteration_count += 1
        led = state._live()
        checker(state.coloured_count > before, "iteration coloured nothing", arch=(lo, hi))
        if check:
            # only arches inside (lo, hi) changed: new colours stay within it
            for a, b in _blocks(lo, hi, Q):
                d = led.degree(a, b)
                stats.max_arch_degree_seen = max(stats.max_arch_degree_seen, d)
                checker(d <= arch_limit, "arch degree above w log w + w log log w + 6w",
                        arch=(a, b), degree=d, limit=arch_limit)
            checker(state.chi_used() <= stats.bound, "palette above the colour bound",
                    chi=state.chi_used(), bound=stats.bound)
        log.debug("iteration %d: arch (%d, %d), |Q|=%d, coloured %d/%d",
                  stats.iteration_count, lo, hi, len(Q), state.coloured_count, system.m)

    led = state._live()
    problem = _verify_total(system, led.colour)
    if problem is not None:
        raise InvariantViolation("final colouring failed independent verification", {"problem": problem})
    stats.colors_used = len(set(led.colour))
    stats.pillar_count = len(state)
    if stats.colors_used > stats.bound:
        raise InvariantViolation("colour bound exceeded",
                                 {"colors_used": stats.colors_used, "bound": stats.bound})
    colors = {iv.id: c for iv, c in zip(system.intervals, led.colour)}
    return CompleteColouring(colors, stats, state)
