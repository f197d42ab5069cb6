"""Pillar assignments and the partial colouring they induce.

A pillar is a gap position. Pillars are totally ordered; each interval is
assigned to the earliest pillar it contains. When pillar ``p`` is appended,
the still-unassigned intervals containing it are coloured by their dominance
height using the smallest colours not already worn by intervals crossing the
boundary of ``p``'s foundation (the stretch around ``p`` bounded by earlier
pillars).

States are persistent snapshots. Snapshots that share history also share an
append-only ledger; extending the newest snapshot is O(length of the
foundation), while extending or querying an older one transparently replays
its prefix into a private ledger first.
"""
from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ._errors import ColourSetTooSmall, DuplicatePillarGap, PillarInsideJ
from .core import GapInterval, Interval, IntervalSystem
from .dominance import chain_heights

__all__ = [
    "Pillar",
    "PillarState",
    "AssignmentReport",
    "assign_intervals",
    "foundation",
    "permutation_colouring",
    "smallest_free_colours",
    "append_pillar",
    "build_colouring",
    "arches",
    "degree",
    "chi_used",
    "is_complete",
    "verify_assignment",
    "colouring_to_json",
]


@dataclass(frozen=True)
class Pillar:
    position: int
    order_index: int


def _check_gaps(gaps: Sequence[int], size: int):
    seen = set()
    for g in gaps:
        if g in seen:
            raise DuplicatePillarGap(f"gap {g} used by two pillars")
        if not 0 < g < size:
            raise ValueError(f"pillar gap {g} outside (0, {size})")
        seen.add(g)


def assign_intervals(system: IntervalSystem, pillars: Sequence[int]) -> dict:
    """Map each interval id to the earliest pillar gap it contains (or None)."""
    pillars = [p.position if isinstance(p, Pillar) else p for p in pillars]
    _check_gaps(pillars, system.size)
    out = {}
    for iv in system.intervals:
        out[iv.id] = next((g for g in pillars if iv.left <= g < iv.right), None)
    return out


def foundation(pillars: Sequence[int], k: int, size: int) -> GapInterval:
    """Foundation of the ``k``-th pillar: bounded by earlier pillars, 0 and ``size``."""
    gaps = [p.position if isinstance(p, Pillar) else p for p in pillars]
    g = gaps[k]
    earlier = gaps[:k]
    lo = max((q for q in earlier if q < g), default=0)
    hi = min((q for q in earlier if q > g), default=size)
    return GapInterval(lo, hi)


def smallest_free_colours(count: int, forbidden: Iterable[int]) -> tuple[int, ...]:
    forbidden = set(forbidden)
    out = []
    c = 1
    while len(out) < count:
        if c not in forbidden:
            out.append(c)
        c += 1
    return tuple(out)


def permutation_colouring(members: Iterable[Interval], colours: Iterable[int]) -> dict:
    """Colour intervals sharing a point by dominance height.

    The interval of height ``h`` receives the ``h``-th smallest colour. This
    coincides with first-fit in order of left (or right) endpoints.
    """
    members = list(members)
    palette = sorted(set(colours))
    if not members:
        return {}
    if max(iv.left for iv in members) >= min(iv.right for iv in members):
        raise ValueError("members do not share a common point")
    heights, _ = chain_heights([(iv.left, iv.right) for iv in members])
    if max(heights) > len(palette):
        raise ColourSetTooSmall(f"need {max(heights)} colours, got {len(palette)}")
    return {iv.id: palette[h - 1] for iv, h in zip(members, heights)}


class _Ledger:
    """Mutable record shared by a line of snapshots."""

    def __init__(self, system: IntervalSystem):
        m = system.m
        self.system = system
        self.left = [iv.left for iv in system.intervals]
        self.right = [iv.right for iv in system.intervals]
        self.owner = [system.owner(e) for e in range(2 * m + 1)]
        self.colour = [0] * m
        self.pillar_of = [-1] * m
        self.gaps: list[int] = []
        self.gapset: set[int] = set()
        self.sorted_gaps: list[int] = []
        self.colour_sets: list[tuple[int, ...]] = []
        self.members: list[tuple[int, ...]] = []
        self.palette: set[int] = set()
        self.chi_prefix: list[int] = [0]
        self.coloured_prefix: list[int] = [0]

    def __len__(self):
        return len(self.gaps)

    def replay(self, n: int) -> "_Ledger":
        fresh = _Ledger(self.system)
        for k in range(n):
            fresh._record(self.gaps[k], self.members[k], self.colour_sets[k],
                          [self.colour[i] for i in self.members[k]])
        return fresh

    def _record(self, g, members, cset, colours):
        k = len(self.gaps)
        for i, c in zip(members, colours):
            self.colour[i] = c
            self.pillar_of[i] = k
        self.gaps.append(g)
        self.gapset.add(g)
        insort(self.sorted_gaps, g)
        self.colour_sets.append(cset)
        self.members.append(tuple(members))
        self.palette.update(cset)
        self.chi_prefix.append(len(self.palette))
        self.coloured_prefix.append(self.coloured_prefix[-1] + len(members))

    def arch_of(self, g: int) -> tuple[int, int]:
        """Nearest pillars (or 0 / 2m) strictly around gap ``g``."""
        k = bisect_left(self.sorted_gaps, g)
        lo = self.sorted_gaps[k - 1] if k else 0
        if k < len(self.sorted_gaps) and self.sorted_gaps[k] == g:
            k += 1
        hi = self.sorted_gaps[k] if k < len(self.sorted_gaps) else 2 * self.system.m
        return lo, hi

    def append(self, g: int):
        if g in self.gapset:
            raise DuplicatePillarGap(f"gap {g} is already a pillar")
        size = 2 * self.system.m
        if not 0 < g < size:
            raise ValueError(f"pillar gap {g} outside (0, {size})")
        lo, hi = self.arch_of(g)
        owner, colour, left, right = self.owner, self.colour, self.left, self.right
        forbidden = set()
        members = []
        for e in range(lo + 1, hi + 1):
            i = owner[e]
            c = colour[i]
            if c:
                other = right[i] if e == left[i] else left[i]
                if not lo < other <= hi:
                    forbidden.add(c)
            elif e == left[i] and e <= g < right[i]:
                members.append(i)
        if members:
            heights, _ = chain_heights([(left[i], right[i]) for i in members])
            cset = smallest_free_colours(max(heights), forbidden)
            colours = [cset[h - 1] for h in heights]
        else:
            cset, colours = (), []
        self._record(g, members, cset, colours)
        return forbidden

    def degree(self, lo: int, hi: int) -> int:
        owner, colour = self.owner, self.colour
        seen = {colour[owner[e]] for e in range(lo + 1, hi + 1)}
        seen.discard(0)
        return len(seen)


class PillarState:
    """Snapshot of a pillar assignment ``(P, order, psi)`` over one system."""

    __slots__ = ("system", "_ledger", "_n", "_private")

    def __init__(self, system: IntervalSystem, _ledger: _Ledger | None = None, _n: int = 0):
        self.system = system
        self._ledger = _ledger if _ledger is not None else _Ledger(system)
        self._n = _n
        self._private = None

    @classmethod
    def empty(cls, system: IntervalSystem) -> "PillarState":
        return cls(system)

    def _live(self) -> _Ledger:
        if len(self._ledger) == self._n:
            return self._ledger
        if self._private is None:
            self._private = self._ledger.replay(self._n)
        return self._private

    def append(self, g: int) -> "PillarState":
        led = self._live()
        if led is self._private:
            # extend a copy so the cached view stays this snapshot's
            led = led.replay(self._n)
        led.append(g)
        return PillarState(self.system, led, self._n + 1)

    # -- read-only views --------------------------------------------------
    def __len__(self):
        return self._n

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(self._ledger.gaps[: self._n])

    @property
    def pillars(self) -> tuple[Pillar, ...]:
        return tuple(Pillar(g, k) for k, g in enumerate(self.gaps))

    @property
    def colour_sets(self) -> dict:
        return {g: frozenset(c) for g, c in zip(self.gaps, self._ledger.colour_sets[: self._n])}

    @property
    def colour_set_list(self) -> list[tuple[int, ...]]:
        return list(self._ledger.colour_sets[: self._n])

    @property
    def psi(self) -> dict:
        led = self._live()
        ids = self.system.ids
        return {ids[i]: c for i, c in enumerate(led.colour) if c}

    @property
    def assignment(self) -> dict:
        led = self._live()
        gaps = led.gaps
        return {
            iv.id: (gaps[k] if k >= 0 else None) for iv, k in zip(self.system.intervals, led.pillar_of)
        }

    @property
    def coloured_count(self) -> int:
        return self._ledger.coloured_prefix[self._n]

    def chi_used(self) -> int:
        return self._ledger.chi_prefix[self._n]

    def is_complete(self) -> bool:
        return self.coloured_count == self.system.m

    def arches(self) -> list[GapInterval]:
        size = self.system.size
        if size == 0:
            return []
        bounds = [0, *sorted(self.gaps), size]
        return [GapInterval(a, b) for a, b in zip(bounds, bounds[1:])]

    def degree(self, J: GapInterval | tuple[int, int]) -> int:
        lo, hi = (J.lo, J.hi) if isinstance(J, GapInterval) else J
        led = self._live()
        k = bisect_left(led.sorted_gaps, lo + 1)
        if k < len(led.sorted_gaps) and led.sorted_gaps[k] < hi:
            raise PillarInsideJ(f"pillar at gap {led.sorted_gaps[k]} lies inside ({lo}, {hi})")
        return led.degree(lo, hi)

    def __repr__(self):
        return f"PillarState(pillars={list(self.gaps)}, coloured={self.coloured_count}/{self.system.m})"


def append_pillar(state: PillarState, gap: int) -> PillarState:
    return state.append(gap)


def build_colouring(system: IntervalSystem, gaps: Iterable[int]) -> PillarState:
    state = PillarState.empty(system)
    for g in gaps:
        state = state.append(g)
    return state


def arches(state: PillarState) -> list[GapInterval]:
    return state.arches()


def degree(state: PillarState, J) -> int:
    """Number of distinct psi-colours on intervals with an endpoint in ``J``."""
    return state.degree(J)


def chi_used(state: PillarState) -> int:
    return state.chi_used()


def is_complete(state: PillarState) -> bool:
    return state.is_complete()


# -- verification ------------------------------------------------------------


@dataclass
class AssignmentReport:
    proper: bool = True
    covers_pillared: bool = True
    single_pillar_colours: bool = True
    non_interleaving: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.proper and self.covers_pillared and self.single_pillar_colours and self.non_interleaving


def laminar_violation(intervals: Iterable[tuple[int, int]]):
    """Return an overlapping pair among ``(left, right)`` rank pairs, or None.

    A family without overlaps is laminar: scanning by left endpoint, each
    interval must sit inside the innermost still-open one.
    """
    stack: list[tuple[int, int]] = []
    for l, r in sorted(intervals):
        while stack and stack[-1][1] < l:
            stack.pop()
        if stack and stack[-1][1] < r:
            return stack[-1], (l, r)
        stack.append((l, r))
    return None


def verify_assignment(state: PillarState) -> AssignmentReport:
    """Re-check the structural guarantees of a pillar assignment from scratch."""
    report = AssignmentReport()
    system = state.system
    psi = state.psi
    gaps = state.gaps
    rank = {g: k for k, g in enumerate(gaps)}

    classes: dict[int, list] = {}
    for iv in system.intervals:
        if iv.id in psi:
            classes.setdefault(psi[iv.id], []).append((iv.left, iv.right))
    for c, members in classes.items():
        bad = laminar_violation(members)
        if bad:
            report.proper = False
            report.failures.append(f"colour {c} on overlapping intervals {bad}")

    sorted_gaps = sorted(gaps)
    assigned = {}
    for iv in system.intervals:
        k = bisect_left(sorted_gaps, iv.left)
        inside = [g for g in sorted_gaps[k:] if g < iv.right]
        if inside:
            assigned[iv.id] = min(inside, key=rank.__getitem__)
        if bool(inside) != (iv.id in psi):
            report.covers_pillared = False
            report.failures.append(f"interval {iv.id!r}: contains pillar={bool(inside)}, coloured={iv.id in psi}")

    for K in state.arches():
        by_colour: dict[int, set] = {}
        outside: dict[int, list[int]] = {}
        for iv in system.intervals:
            inL, inR = iv.left in K, iv.right in K
            if inL == inR or iv.id not in psi:
                continue
            p = assigned.get(iv.id)
            by_colour.setdefault(psi[iv.id], set()).add(p)
            outside.setdefault(p, []).append(iv.right if inL else iv.left)
        for c, ps in by_colour.items():
            if len(ps) > 1:
                report.single_pillar_colours = False
                report.failures.append(f"arch {K}: colour {c} comes from pillars {sorted(ps)}")
        spans = sorted((min(v), max(v), p) for p, v in outside.items())
        for (a0, a1, pa), (b0, b1, pb) in zip(spans, spans[1:]):
            if b0 < a1:
                report.non_interleaving = False
                report.failures.append(f"arch {K}: endpoints from pillars {pa} and {pb} interleave")
    return report


def colouring_to_json(state: PillarState) -> dict:
    return {
        "colors": {str(k): v for k, v in state.psi.items()},
        "colour_sets": [{"gap": g, "colors": list(c)} for g, c in zip(state.gaps, state.colour_set_list)],
        "pillar_order": list(state.gaps),
        "chi_used": state.chi_used(),
        "complete": state.is_complete(),
    }
