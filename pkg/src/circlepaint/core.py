"""Interval systems, chord diagrams and their conversions.

Every interval system is stored rank-compressed: the 2m endpoints are the
integers 1..2m, so only their order carries information. Pillars live in
*gaps*; gap ``g`` sits strictly between endpoint ranks ``g`` and ``g + 1``
(gap 0 precedes everything, gap 2m follows everything).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Hashable, Iterable, Mapping, Sequence

from ._errors import DegenerateInterval, DuplicateEndpoint

__all__ = [
    "Interval",
    "IntervalSystem",
    "GapInterval",
    "Graph",
    "Chord",
    "ChordDiagram",
    "ExpandedChord",
    "canonicalize",
    "overlaps",
    "overlap_graph",
    "expand_chords",
    "chords_to_intervals",
    "chords_intersect",
    "system_to_json",
    "system_from_json",
    "diagram_to_json",
    "diagram_from_json",
    "load_json",
    "FIG1",
    "FIG2",
    "FIG1_RAW",
    "FIG2_RAW",
    "FIG1_PILLAR_GAP",
    "FIG2_PILLAR_GAPS",
]


@dataclass(frozen=True)
class Interval:
    id: Hashable
    left: int
    right: int

    def contains_gap(self, g: int) -> bool:
        return self.left <= g < self.right


@dataclass(frozen=True, order=True)
class GapInterval:
    """Open interval between two gap positions.

    Endpoint rank ``e`` lies inside iff ``lo < e <= hi``.
    """

    lo: int
    hi: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"GapInterval needs lo < hi, got ({self.lo}, {self.hi})")

    def __contains__(self, rank: int) -> bool:
        return self.lo < rank <= self.hi

    def contains_gap(self, g: int) -> bool:
        return self.lo < g < self.hi


class IntervalSystem:
    """An immutable, rank-compressed set of open intervals."""

    __slots__ = ("intervals", "m", "_by_id", "_owner", "_hash")

    def __init__(self, intervals: Iterable[Interval]):
        intervals = tuple(intervals)
        m = len(intervals)
        owner = [-1] * (2 * m + 1)
        by_id = {}
        for idx, iv in enumerate(intervals):
            if iv.id in by_id:
                raise ValueError(f"duplicate interval id {iv.id!r}")
            by_id[iv.id] = idx
            if not iv.left < iv.right:
                raise DegenerateInterval(f"interval {iv.id!r} has left >= right")
            for e in (iv.left, iv.right):
                if not 1 <= e <= 2 * m:
                    raise ValueError(f"rank {e} of {iv.id!r} outside [1, {2 * m}]")
                if owner[e] != -1:
                    raise DuplicateEndpoint(f"rank {e} used twice")
                owner[e] = idx
        self.intervals = intervals
        self.m = m
        self._by_id = by_id
        self._owner = owner
        self._hash = None

    @classmethod
    def from_ranks(cls, ranks: Mapping[Hashable, tuple[int, int]] | Iterable[tuple]):
        items = ranks.items() if isinstance(ranks, Mapping) else ((i, (l, r)) for i, l, r in ranks)
        return cls(Interval(i, int(l), int(r)) for i, (l, r) in items)

    @property
    def size(self) -> int:
        """Largest gap position (2m)."""
        return 2 * self.m

    @property
    def ids(self) -> tuple:
        return tuple(iv.id for iv in self.intervals)

    def owner(self, rank: int) -> int:
        """Index (into ``intervals``) of the interval owning endpoint ``rank``."""
        return self._owner[rank]

    def index(self, id_: Hashable) -> int:
        return self._by_id[id_]

    def __getitem__(self, id_: Hashable) -> Interval:
        return self.intervals[self._by_id[id_]]

    def __contains__(self, id_) -> bool:
        return id_ in self._by_id

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return self.m

    def __eq__(self, other):
        if not isinstance(other, IntervalSystem):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.intervals)
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{iv.id}:({iv.left},{iv.right})" for iv in self.intervals[:8])
        more = ", ..." if self.m > 8 else ""
        return f"IntervalSystem(m={self.m}, {{{body}{more}}})"

    def containing(self, g: int) -> list[Interval]:
        return [iv for iv in self.intervals if iv.left <= g < iv.right]

    def as_dict(self) -> dict:
        return {iv.id: (iv.left, iv.right) for iv in self.intervals}


def canonicalize(raw: Iterable[Sequence]) -> IntervalSystem:
    """Rank-compress ``(id, left, right)`` triples with arbitrary real endpoints.

    Raises DuplicateEndpoint if two endpoint values coincide and
    DegenerateInterval if some interval has ``left >= right``.
    """
    raw = [tuple(t) for t in raw]
    values = []
    for k, (id_, left, right) in enumerate(raw):
        if not left < right:
            raise DegenerateInterval(f"interval {id_!r}: left {left} >= right {right}")
        values.append((left, k, 0))
        values.append((right, k, 1))
    values.sort(key=lambda t: t[0])
    ranks = [[0, 0] for _ in raw]
    for pos, (value, k, side) in enumerate(values, start=1):
        if pos > 1 and values[pos - 2][0] == value:
            raise DuplicateEndpoint(f"endpoint value {value!r} occurs twice")
        ranks[k][side] = pos
    return IntervalSystem(Interval(t[0], r[0], r[1]) for t, r in zip(raw, ranks))


def overlaps(a: Interval, b: Interval) -> bool:
    return a.left < b.left < a.right < b.right or b.left < a.left < b.right < a.right


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; vertices keep their insertion order."""

    vertices: tuple
    adjacency: Mapping[Hashable, frozenset] = field(repr=False)

    @classmethod
    def from_edges(cls, vertices: Iterable[Hashable], edges: Iterable[tuple]) -> "Graph":
        vertices = tuple(vertices)
        adj = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u!r}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(vertices, {v: frozenset(n) for v, n in adj.items()})

    def edges(self) -> list[tuple]:
        order = {v: k for k, v in enumerate(self.vertices)}
        return [(u, v) for u in self.vertices for v in self.adjacency[u] if order[u] < order[v]]

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.adjacency.values()) // 2

    def has_edge(self, u, v) -> bool:
        return v in self.adjacency[u]

    def __len__(self):
        return len(self.vertices)


def overlap_graph(system: IntervalSystem) -> Graph:
    ivs = sorted(system.intervals, key=lambda iv: iv.left)
    edges = []
    # only intervals starting inside a can overlap a from the right
    for k, a in enumerate(ivs):
        for b in ivs[k + 1:]:
            if b.left > a.right:
                break
            if b.right > a.right:
                edges.append((a.id, b.id))
    return Graph.from_edges(system.ids, edges)


# -- chord diagrams ---------------------------------------------------------

_POINT_RE = re.compile(r"^([pq])(\d+)$")


def parse_point(label: str) -> tuple[str, int]:
    match = _POINT_RE.match(label.strip())
    if not match:
        raise ValueError(f"bad point label {label!r}; expected p<i> or q<i>")
    return match.group(1), int(match.group(2))


def point_label(point: tuple[str, int]) -> str:
    return f"{point[0]}{point[1]}"


@dataclass(frozen=True)
class Chord:
    a: tuple[str, int]
    b: tuple[str, int]
    mult: int = 1


@dataclass(frozen=True)
class ExpandedChord:
    """A single chord copy after multiplicities are expanded."""

    id: str
    a: tuple[str, int]
    b: tuple[str, int]
    source: int
    copy: int


@dataclass(frozen=True)
class ChordDiagram:
    """Points p1, q1, ..., pn, qn clockwise; chords carry multiplicities."""

    n: int
    chords: tuple[Chord, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a chord diagram needs n >= 1")
        for c in self.chords:
            if c.mult < 1:
                raise ValueError(f"chord {c} has multiplicity < 1")
            if c.a == c.b:
                raise ValueError(f"chord {c} joins a point to itself")
            for kind, i in (c.a, c.b):
                if kind not in "pq" or not 1 <= i <= self.n:
                    raise ValueError(f"point {kind}{i} not in diagram with n={self.n}")

    def position(self, point: tuple[str, int]) -> int:
        kind, i = point
        return 2 * (i - 1) + (kind == "q")

    @property
    def chord_count(self) -> int:
        return sum(c.mult for c in self.chords)


def expand_chords(diagram: ChordDiagram) -> list[ExpandedChord]:
    out = []
    for k, chord in enumerate(diagram.chords):
        for t in range(chord.mult):
            out.append(ExpandedChord(str(len(out)), chord.a, chord.b, k, t))
    return out


def chords_intersect(c1, c2, n: int | None = None) -> bool:
    """Whether two open chords intersect.

    Coinciding chords intersect; chords sharing exactly one endpoint do not;
    otherwise the endpoints must interleave in cyclic order. Accepts chord
    objects with ``a``/``b`` point attributes or plain point pairs.
    """
    a1, b1 = (c1.a, c1.b) if hasattr(c1, "a") else c1
    a2, b2 = (c2.a, c2.b) if hasattr(c2, "a") else c2
    s1, s2 = {a1, b1}, {a2, b2}
    if s1 == s2:
        return True
    if s1 & s2:
        return False

    def pos(p):
        return 2 * (p[1] - 1) + (p[0] == "q")

    x, y = sorted((pos(a1), pos(b1)))
    return (x < pos(a2) < y) != (x < pos(b2) < y)


def chords_to_intervals(diagram: ChordDiagram) -> IntervalSystem:
    """Cut the circle between q_n and p_1 and return the equivalent interval system.

    Every circle point is widened into one slot per incident chord copy.
    At a point, chords whose other end lies farther clockwise take earlier
    slots (so chords sharing only this point nest instead of crossing), and
    copies of one chord keep the same relative order at both ends (so they
    pairwise interleave). Ids follow ``expand_chords``.
    """
    size = 2 * diagram.n
    expanded = expand_chords(diagram)
    incident: dict[int, list] = {}
    for ec in expanded:
        pa, pb = diagram.position(ec.a), diagram.position(ec.b)
        for here, there in ((pa, pb), (pb, pa)):
            reach = (there - here) % size
            incident.setdefault(here, []).append((-reach, ec.source, ec.copy, ec.id))
    slot_of: dict[tuple[str, int], int] = {}
    next_slot = 1
    for here in range(size):
        for _, _, _, id_ in sorted(incident.get(here, ())):
            slot_of[(id_, here)] = next_slot
            next_slot += 1
    ivs = []
    for ec in expanded:
        u = slot_of[(ec.id, diagram.position(ec.a))]
        v = slot_of[(ec.id, diagram.position(ec.b))]
        ivs.append((ec.id, min(u, v), max(u, v)))
    return canonicalize(ivs)


# -- JSON -------------------------------------------------------------------


def system_to_json(system: IntervalSystem) -> dict:
    return {
        "intervals": [
            {"id": str(iv.id), "left": iv.left, "right": iv.right} for iv in system.intervals
        ]
    }


def system_from_json(obj: Mapping[str, Any]) -> IntervalSystem:
    try:
        items = obj["intervals"]
        raw = [(str(it["id"]), _number(it["left"]), _number(it["right"])) for it in items]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed interval-system JSON: {exc}") from exc
    return canonicalize(raw)


def _number(x):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValueError(f"endpoint {x!r} is not a number")
    return x


def diagram_to_json(diagram: ChordDiagram) -> dict:
    return {
        "n": diagram.n,
        "chords": [
            {"a": point_label(c.a), "b": point_label(c.b), "mult": c.mult} for c in diagram.chords
        ],
    }


def diagram_from_json(obj: Mapping[str, Any]) -> ChordDiagram:
    try:
        chords = tuple(
            Chord(parse_point(c["a"]), parse_point(c["b"]), int(c.get("mult", 1)))
            for c in obj["chords"]
        )
        return ChordDiagram(int(obj["n"]), chords)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed chord-diagram JSON: {exc}") from exc


def load_json(path: str | Path):
    with open(path) as fh:
        return json.load(fh)


# -- fixtures ---------------------------------------------------------------

FIG1_RAW = (("A", -5, 2), ("B", -4, 4), ("C", -3, 3), ("D", -2, 1), ("E", -1, 5))

FIG2_RAW = (
    ("I1", -7, -1),
    ("I2", -6.25, -3.5),
    ("I3", -5.5, -2.5),
    ("I4", -4.75, -1.5),
    ("I5", -3, 0),
    ("I6", -0.5, 6.25),
    ("I7", 0.5, 2.25),
    ("I8", 1.25, 4),
    ("I9", 2.75, 4.75),
    ("I10", 3.5, 5.25),
    ("I11", 5.75, 7),
)

FIG1 = IntervalSystem.from_ranks({"A": (1, 7), "B": (2, 9), "C": (3, 8), "D": (4, 6), "E": (5, 10)})

FIG2 = IntervalSystem.from_ranks(
    {
        "I1": (1, 9),
        "I2": (2, 5),
        "I3": (3, 7),
        "I4": (4, 8),
        "I5": (6, 11),
        "I6": (10, 21),
        "I7": (12, 14),
        "I8": (13, 17),
        "I9": (15, 18),
        "I10": (16, 19),
        "I11": (20, 22),
    }
)

FIG1_PILLAR_GAP = 5
FIG2_PILLAR_GAPS = (4, 21, 7, 13, 17)
