"""Input validation helpers shared by the estimator and the CLI."""
from __future__ import annotations

from typing import Hashable, Sequence

import numpy as np

from ._errors import DegenerateInterval, DuplicateEndpoint
from .core import ChordDiagram, IntervalSystem, canonicalize, chords_to_intervals


def check_interval_array(X) -> np.ndarray:
    """Validate an ``(m, 2)`` array of real endpoints and return it as float64.

    Rows are ``(left, right)``; every row needs ``left < right`` and all 2m
    values must be distinct and finite.
    """
    arr = np.asarray(X, dtype=np.float64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an array of shape (m, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("endpoints must be finite")
    bad = np.flatnonzero(arr[:, 0] >= arr[:, 1])
    if bad.size:
        raise DegenerateInterval(f"row {bad[0]} has left >= right")
    flat = np.sort(arr.ravel())
    dup = np.flatnonzero(flat[1:] == flat[:-1])
    if dup.size:
        raise DuplicateEndpoint(f"endpoint value {flat[dup[0]]!r} occurs twice")
    return arr


def as_interval_system(X, ids: Sequence[Hashable] | None = None) -> IntervalSystem:
    """Coerce an IntervalSystem, a ChordDiagram or an ``(m, 2)`` array-like."""
    if isinstance(X, IntervalSystem):
        return X
    if isinstance(X, ChordDiagram):
        return chords_to_intervals(X)
    arr = check_interval_array(X)
    if ids is None:
        ids = [str(k) for k in range(len(arr))]
    elif len(ids) != len(arr):
        raise ValueError(f"{len(ids)} ids for {len(arr)} intervals")
    return canonicalize((i, float(l), float(r)) for i, (l, r) in zip(ids, arr))


def check_gap(system: IntervalSystem, gap: int) -> int:
    if not isinstance(gap, (int, np.integer)) or not 0 <= gap <= system.size:
        raise ValueError(f"gap must be an integer in [0, {system.size}], got {gap!r}")
    return int(gap)
