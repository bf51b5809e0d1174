"""scikit-learn style front end.

>>> import networkx as nx
>>> est = MaximumIndependentSet(strategy="packing").fit(nx.petersen_graph())
>>> est.mis_size_
4
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .branching import Strategy
from .solver import SolverConfig, solve
from .validation import check_graph

__all__ = ["MaximumIndependentSet"]


class MaximumIndependentSet(BaseEstimator):
    """Exact maximum independent set by branch-and-reduce.

    The "samples" are the vertices of the graph passed to :meth:`fit`; after
    fitting, ``labels_[v]`` is 1 when ``v`` is in the independent set.

    Parameters
    ----------
    strategy : str, default="max-degree"
        Branching strategy, one of ``max-degree``, ``articulation``,
        ``edge-cut``, ``nested-dissection``, ``twin``, ``funnel``,
        ``unconfined``, ``packing``, ``combined``.
    time_limit : float or None, default=None
        Wall-clock budget in seconds.  On expiry the best set found so far
        is kept and ``timed_out_`` is set.
    seed : int, default=42
        Seed for randomized choices (edge-cut terminals, dissection seeds).
    packing : bool, default=True
        Create packing constraints in excluding branches.
    bounds : bool, default=True
        Prune with the clique-cover upper bound.

    Attributes
    ----------
    independent_set_ : ndarray of int
    labels_ : ndarray of shape (n_vertices,)
    mis_size_ : int
    n_branches_ : int
    timed_out_ : bool
    report_ : SolveReport
    """

    def __init__(self, strategy="max-degree", time_limit=None, seed=42, packing=True, bounds=True):
        self.strategy = strategy
        self.time_limit = time_limit
        self.seed = seed
        self.packing = packing
        self.bounds = bounds

    def fit(self, X, y=None, n_vertices=None):
        g = check_graph(X, n_vertices)
        cfg = SolverConfig(
            strategy=Strategy(self.strategy),
            time_limit=self.time_limit,
            seed=self.seed,
            packing_enabled=self.packing,
            bound_enabled=self.bounds,
        )
        rep = solve(g, cfg)
        self.report_ = rep
        self.independent_set_ = np.asarray(rep.solution, dtype=np.int64)
        labels = np.zeros(g.n_original, dtype=np.int8)
        labels[self.independent_set_] = 1
        self.labels_ = labels
        self.mis_size_ = rep.mis_size
        self.n_branches_ = rep.branches
        self.timed_out_ = rep.timed_out
        self.n_vertices_ = g.n_original
        return self

    def fit_predict(self, X, y=None, n_vertices=None):
        return self.fit(X, y, n_vertices=n_vertices).labels_

    def transform(self, X=None):
        """Indicator vector of the fitted independent set."""
        check_is_fitted(self, "labels_")
        if X is not None and check_graph(X).n_original != self.n_vertices_:
            raise ValueError("transform expects the graph the estimator was fitted on")
        return self.labels_.astype(bool)
