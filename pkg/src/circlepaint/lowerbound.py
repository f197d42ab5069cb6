"""Chord diagrams with small cliques and large chromatic number.

``generate_D(n, w)`` joins each ``p_i`` to ``q_{i+j}`` (indices mod n,
representatives in 1..n) with ``floor(w / (j + 1))`` coinciding chords for
``j = 1 .. w-1``. The resulting circle graph has clique number at most
``w`` and no stable set of size ``n``, so its chromatic number is at least
``|chords| / (n - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._errors import NTooSmall
from ._search import complement, max_clique
from .core import Chord, ChordDiagram, chords_intersect, chords_to_intervals, expand_chords
from .dominance import omega as clique_number

__all__ = [
    "LowerBoundReport",
    "generate_D",
    "chord_count_formula",
    "size_lower_bound",
    "intersection_bitsets",
    "verify_lower_bound_instance",
]


def _require(n: int, omega: int):
    if omega < 1:
        raise ValueError(f"omega must be positive, got {omega}")
    if n <= 3 * omega - 3:
        raise NTooSmall(f"need n > 3*omega - 3 = {3 * omega - 3}, got n={n}")


def generate_D(n: int, omega: int) -> ChordDiagram:
    _require(n, omega)
    chords = []
    for i in range(1, n + 1):
        for j in range(1, omega):
            target = (i + j - 1) % n + 1
            chords.append(Chord(("p", i), ("q", target), omega // (j + 1)))
    return ChordDiagram(n, tuple(chords))


def chord_count_formula(n: int, omega: int) -> int:
    return n * sum(omega // (j + 1) for j in range(1, omega))


def size_lower_bound(n: int, omega: int) -> float:
    return n * omega * (math.log(omega) - 2)


def intersection_bitsets(diagram: ChordDiagram) -> list[int]:
    """Adjacency of the expanded chords (by ``chords_intersect``) as bitmasks."""
    chords = expand_chords(diagram)
    adj = [0] * len(chords)
    for a in range(len(chords)):
        for b in range(a + 1, len(chords)):
            if chords_intersect(chords[a], chords[b]):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


@dataclass
class LowerBoundReport:
    n: int
    omega: int
    chord_count: int
    formula_count: int
    size_lower_bound: float
    exceeds_size_bound: bool
    clique_checked: int
    clique_method: str
    clique_polynomial: int
    stable_checked: int | None
    chi_lower: Fraction | None

    @property
    def ok(self) -> bool:
        return (
            self.chord_count == self.formula_count
            and self.exceeds_size_bound
            and self.clique_checked <= self.omega
            and self.clique_polynomial <= self.omega
            and (self.stable_checked is None or self.stable_checked <= self.n - 1)
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "omega": self.omega,
            "chord_count": self.chord_count,
            "formula_count": self.formula_count,
            "size_lower_bound": self.size_lower_bound,
            "exceeds_size_bound": self.exceeds_size_bound,
            "clique_checked": self.clique_checked,
            "clique_method": self.clique_method,
            "clique_polynomial": self.clique_polynomial,
            "stable_checked": self.stable_checked,
            "chi_lower": None if self.chi_lower is None else str(self.chi_lower),
            "chi_lower_ceil": None if self.chi_lower is None else math.ceil(self.chi_lower),
            "ok": self.ok,
        }


def verify_lower_bound_instance(n: int, omega: int, brute_limit: int = 64) -> LowerBoundReport:
    """Check the counting, clique and stable-set claims for ``generate_D(n, omega)``.

    Instances with at most ``brute_limit`` chords get exact searches over the
    chord intersection graph; larger ones only get the clique number through
    the interval conversion (the stable-set check is then skipped).
    """
    _require(n, omega)
    diagram = generate_D(n, omega)
    count = diagram.chord_count
    lb = size_lower_bound(n, omega)
    exceeds = count > lb - 1e-9 * max(1.0, abs(lb))
    poly = clique_number(chords_to_intervals(diagram))[0]
    if count <= brute_limit:
        adj = intersection_bitsets(diagram)
        clique = bin(max_clique(adj)).count("1")
        stable = bin(max_clique(complement(adj))).count("1")
        method = "brute_force"
    else:
        clique, stable, method = poly, None, "polynomial"
    chi_lower = Fraction(count, n - 1) if n > 1 else None
    return LowerBoundReport(
        n=n,
        omega=omega,
        chord_count=count,
        formula_count=chord_count_formula(n, omega),
        size_lower_bound=lb,
        exceeds_size_bound=exceeds,
        clique_checked=clique,
        clique_method=method,
        clique_polynomial=poly,
        stable_checked=stable,
        chi_lower=chi_lower,
    )
