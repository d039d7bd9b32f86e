"""scikit-learn style wrapper around :func:`seedcluster.driver.cluster`."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .driver import SolveOptions, cluster
from .objective import SeedSpec
from .validation import check_graph, check_node_ids, check_penalties


class SeedCluster(ClusterMixin, BaseEstimator):
    """Grow a seed set into a low-conductance cluster.

    Parameters
    ----------
    epsilon : float, default=0.1
        Locality. Larger values keep the cluster closer to the seeds.
        Ignored when ``mode="mqi"``.
    mode : {"flowseed", "simplelocal", "mqi"}, default="flowseed"
    alpha_update : {"pi", "phi"} or None, default=None
        Score used for the next ``alpha``; None picks the mode's default.
    penalty : float, default=0.0
        Soft exclusion penalty applied to every non-strict seed.
    strict_seeds : bool, default=False
        Treat every seed as strict.
    max_outer_iterations : int or None, default=None
    tol : float, default=1e-10
        Relative improvement below which the descent stops.

    Attributes
    ----------
    labels_ : ndarray of shape (n_nodes,)
        1 for nodes in the cluster, 0 otherwise.
    cluster_ : ndarray
        Sorted node ids of the cluster.
    pi_score_, conductance_ : float
    alpha_trace_ : list of float
    n_iter_ : int
        Local min-cut solves performed.
    result_ : ClusterResult
    """

    def __init__(
        self,
        epsilon=0.1,
        mode="flowseed",
        alpha_update=None,
        penalty=0.0,
        strict_seeds=False,
        max_outer_iterations=None,
        tol=1e-10,
    ):
        self.epsilon = epsilon
        self.mode = mode
        self.alpha_update = alpha_update
        self.penalty = penalty
        self.strict_seeds = strict_seeds
        self.max_outer_iterations = max_outer_iterations
        self.tol = tol

    def fit(self, X, seeds, strict=None, penalties=None):
        """Cluster graph ``X`` around ``seeds``.

        ``X`` is a :class:`~seedcluster.graph.Graph` or a symmetric adjacency
        matrix. ``strict`` lists seeds that must be kept; ``penalties`` maps
        seeds to soft exclusion penalties and overrides ``penalty``.
        """
        g = check_graph(X)
        seeds = check_node_ids(g, seeds, "seeds")
        strict = seeds if self.strict_seeds else check_node_ids(g, strict, "strict", allow_empty=True)
        pens = check_penalties(g, seeds, penalties, self.penalty, strict)
        opts = SolveOptions(
            mode=self.mode,
            alpha_update=self.alpha_update,
            max_outer_iterations=self.max_outer_iterations,
            relative_tolerance=self.tol,
        )
        spec = SeedSpec(seeds, strict, pens, self.epsilon if self.mode != "mqi" else np.inf)
        result = cluster(g, spec, opts)
        self.result_ = result
        self.cluster_ = np.array(sorted(result.best_set), dtype=np.int64)
        labels = np.zeros(g.node_count, dtype=np.int64)
        labels[self.cluster_] = 1
        self.labels_ = labels
        self.pi_score_ = result.pi_score
        self.conductance_ = result.conductance
        self.alpha_trace_ = list(result.alpha_trace)
        self.n_iter_ = result.outer_iterations
        return self

    def fit_predict(self, X, seeds, **kwargs):
        return self.fit(X, seeds, **kwargs).labels_

    def score(self, X=None, y=None):
        """Negative penalized score of the fitted cluster (higher is better)."""
        check_is_fitted(self, "result_")
        return -self.pi_score_
