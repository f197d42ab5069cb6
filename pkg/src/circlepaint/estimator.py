"""scikit-learn style front end.

A proper colouring is a labelling of the intervals, so the colourer follows
the clusterer protocol: ``fit`` stores ``labels_`` and ``fit_predict``
returns them.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .dominance import omega
from .pillar import build_colouring
from .solver import colour
from .validation import as_interval_system


class CircleGraphColouring(ClusterMixin, BaseEstimator):
    """Colour the overlap graph of an interval system.

    Parameters
    ----------
    check_invariants : bool, default=True
        Re-check every proven inequality while solving.

    Attributes
    ----------
    labels_ : ndarray of shape (m,)
        Colour (1-based) of each interval, in input order.
    n_colors_ : int
    omega_ : int
        Clique number of the overlap graph.
    bound_ : int
        Guaranteed colour limit for ``omega_`` (equals ``omega_`` when it is at most 1).
    stats_ : dict
    pillar_gaps_ : list of int
        Pillars in insertion order.
    system_ : IntervalSystem
    """

    def __init__(self, check_invariants=True):
        self.check_invariants = check_invariants

    def fit(self, X, y=None, ids=None):
        system = as_interval_system(X, ids)
        result = colour(system, check=self.check_invariants)
        self.system_ = system
        self.labels_ = np.array([result.colors[iv.id] for iv in system.intervals], dtype=np.int64)
        self.n_colors_ = result.stats.colors_used
        self.omega_ = result.stats.omega
        self.bound_ = result.stats.bound
        self.stats_ = result.stats.as_dict()
        self.pillar_gaps_ = list(result.state.gaps) if result.state is not None else []
        return self


class PillarColouring(ClusterMixin, BaseEstimator):
    """Partial colouring induced by a fixed pillar order.

    ``labels_`` holds 0 for intervals containing no pillar.

    Parameters
    ----------
    pillar_gaps : sequence of int
        Gap positions (in rank space of the fitted system), earliest first.
    """

    def __init__(self, pillar_gaps=()):
        self.pillar_gaps = pillar_gaps

    def fit(self, X, y=None, ids=None):
        system = as_interval_system(X, ids)
        state = build_colouring(system, list(self.pillar_gaps))
        psi = state.psi
        self.system_ = system
        self.state_ = state
        self.labels_ = np.array([psi.get(iv.id, 0) for iv in system.intervals], dtype=np.int64)
        self.colour_sets_ = state.colour_set_list
        self.complete_ = state.is_complete()
        return self


def clique_number(X, ids=None) -> int:
    """Clique number of the overlap graph of ``X`` (array-like, system or diagram)."""
    return omega(as_interval_system(X, ids))[0]
