"""Input checks shared by the estimator and the CLI."""

from __future__ import annotations

import numbers

import numpy as np
import scipy.sparse as sp

from .exceptions import InputError
from .graph import Graph, NodeSet


def check_graph(X) -> Graph:
    """Return ``X`` as a :class:`Graph`.

    Accepts a :class:`Graph`, a scipy sparse matrix or a dense square array
    holding a symmetric nonnegative adjacency matrix.
    """
    if isinstance(X, Graph):
        return X
    if sp.issparse(X):
        mat = X
    else:
        mat = np.asarray(X, dtype=np.float64)
        if mat.ndim != 2:
            raise InputError(f"expected a 2-d adjacency matrix, got shape {mat.shape}")
    if mat.shape[0] != mat.shape[1]:
        raise InputError(f"adjacency matrix must be square, got shape {mat.shape}")
    data = mat.data if sp.issparse(mat) else mat
    if np.any(data < 0) or not np.all(np.isfinite(data)):
        raise InputError("adjacency weights must be finite and nonnegative")
    return Graph.from_adjacency(mat)


def check_node_ids(g: Graph, nodes, name: str = "nodes", allow_empty: bool = False) -> NodeSet:
    if nodes is None:
        nodes = ()
    if isinstance(nodes, numbers.Integral):
        nodes = (nodes,)
    out = g.node_set(np.asarray(list(nodes), dtype=np.int64).tolist())
    if not out and not allow_empty:
        raise InputError(f"{name} must be nonempty")
    return out


def check_penalties(g: Graph, seeds: NodeSet, penalties, default: float = 0.0, strict=frozenset()) -> dict:
    """Per-seed penalties: ``default`` for every non-strict seed, overridden by
    entries of ``penalties`` (a mapping, or a per-node array)."""
    if not default >= 0:
        raise InputError("penalty must be nonnegative")
    out = {v: float(default) for v in seeds if v not in strict} if default else {}
    if penalties is None:
        return out
    if isinstance(penalties, dict):
        items = penalties.items()
    else:
        arr = np.asarray(penalties, dtype=np.float64)
        if arr.shape != (g.node_count,):
            raise InputError(f"penalty array must have shape ({g.node_count},)")
        items = ((v, arr[v]) for v in seeds)
    for v, p in items:
        v = g.check_node(v)
        if v not in seeds:
            raise InputError(f"penalty given for non-seed node {v}")
        out[v] = float(p)
    return out
