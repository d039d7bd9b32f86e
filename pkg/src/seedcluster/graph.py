"""Weighted undirected graphs in CSR form and the cut/volume primitives."""

from __future__ import annotations

import logging
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp

from .exceptions import InputError, UndefinedConductanceError

logger = logging.getLogger(__name__)

NodeSet = frozenset

#: Absolute tolerance for comparisons on derived real quantities.
ATOL = 1e-10


class Graph:
    """Immutable weighted undirected graph.

    Nodes are the dense integers ``0 .. n-1``. ``node_ids`` maps each internal
    node to the identifier used by whatever produced the graph (a file, a
    caller's labelling); it defaults to the identity.

    Use :meth:`from_edges` or :meth:`from_adjacency` rather than calling the
    constructor directly.
    """

    __slots__ = (
        "indptr",
        "indices",
        "weights",
        "degrees",
        "total_volume",
        "node_ids",
        "dropped_self_loops",
        "_id_index",
    )

    def __init__(self, indptr, indices, weights, node_ids=None, dropped_self_loops=0):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        n = len(self.indptr) - 1
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        self.degrees = np.bincount(rows, weights=self.weights, minlength=n).astype(np.float64)
        self.total_volume = float(self.degrees.sum())
        if node_ids is None:
            node_ids = np.arange(n, dtype=np.int64)
        self.node_ids = np.asarray(node_ids, dtype=np.int64)
        if len(self.node_ids) != n:
            raise InputError("node_ids must have one entry per node")
        self.dropped_self_loops = int(dropped_self_loops)
        self._id_index = None
        for arr in (self.indptr, self.indices, self.weights, self.degrees, self.node_ids):
            arr.setflags(write=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, edges, n: int | None = None, node_ids=None) -> "Graph":
        """Build a graph from ``(u, v)`` or ``(u, v, w)`` rows.

        Duplicate edges (in either orientation) are merged by summing their
        weights. Self-loops are dropped and counted in ``dropped_self_loops``.
        """
        rows = [tuple(e) for e in edges]
        if rows and len({len(r) for r in rows}) != 1:
            raise InputError("edge rows must all be (u, v) or all be (u, v, w)")
        if not rows:
            u = v = np.zeros(0, dtype=np.int64)
            w = np.zeros(0)
        else:
            arr = np.asarray(rows, dtype=np.float64)
            if arr.shape[1] not in (2, 3):
                raise InputError("edge rows must be (u, v) or (u, v, w)")
            u = arr[:, 0].astype(np.int64)
            v = arr[:, 1].astype(np.int64)
            if np.any(u != arr[:, 0]) or np.any(v != arr[:, 1]):
                raise InputError("node ids must be integers")
            w = arr[:, 2] if arr.shape[1] == 3 else np.ones(len(arr))
        return cls._from_arrays(u, v, w, n, node_ids)

    @classmethod
    def _from_arrays(cls, u, v, w, n, node_ids) -> "Graph":
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = np.asarray(w, dtype=np.float64)
        if len(u) and (u.min() < 0 or v.min() < 0):
            raise InputError("node ids must be nonnegative")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise InputError("edge weights must be finite and positive")
        top = int(max(u.max(), v.max())) + 1 if len(u) else 0
        if n is None:
            n = top if node_ids is None else len(node_ids)
        if top > n:
            raise InputError(f"edge endpoint {top - 1} out of range for {n} nodes")
        loops = u == v
        n_loops = int(loops.sum())
        if n_loops:
            logger.warning("dropped %d self-loop(s)", n_loops)
            u, v, w = u[~loops], v[~loops], w[~loops]
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        vals = np.concatenate([w, w])
        mat = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        mat.sum_duplicates()
        mat.sort_indices()
        return cls(mat.indptr, mat.indices, mat.data, node_ids=node_ids, dropped_self_loops=n_loops)

    @classmethod
    def from_adjacency(cls, matrix, node_ids=None) -> "Graph":
        """Build a graph from a symmetric (sparse or dense) adjacency matrix.

        The diagonal is ignored.
        """
        mat = sp.coo_matrix(matrix)
        if mat.shape[0] != mat.shape[1]:
            raise InputError(f"adjacency matrix must be square, got {mat.shape}")
        diff = sp.csr_matrix(mat) - sp.csr_matrix(mat).T
        if diff.nnz and np.abs(diff.data).max() > ATOL:
            raise InputError("adjacency matrix must be symmetric")
        mat.sum_duplicates()
        keep = (mat.row < mat.col) & (mat.data != 0)
        return cls._from_arrays(mat.row[keep], mat.col[keep], mat.data[keep], mat.shape[0], node_ids)

    # -- basic accessors ----------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def __len__(self):
        return self.node_count

    def __repr__(self):
        return f"Graph(nodes={self.node_count}, edges={self.edge_count}, volume={self.total_volume:g})"

    def check_node(self, v) -> int:
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
            raise InputError(f"node id must be an integer, got {v!r}")
        if not 0 <= v < self.node_count:
            raise InputError(f"node {v} out of range for {self.node_count} nodes")
        return int(v)

    def node_set(self, nodes: Iterable[int]) -> NodeSet:
        """Validate ``nodes`` and return them as a frozenset of ints."""
        if isinstance(nodes, frozenset) and all(
            isinstance(v, int) and 0 <= v < self.node_count for v in nodes
        ):
            return nodes
        return frozenset(self.check_node(v) for v in nodes)

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor ids and edge weights of ``v``, sorted by neighbor id."""
        a, b = self.indptr[v], self.indptr[v + 1]
        return self.indices[a:b], self.weights[a:b]

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield each undirected edge once as ``(u, v, w)`` with ``u < v``."""
        for u in range(self.node_count):
            nbrs, ws = self.neighbors(u)
            for v, w in zip(nbrs.tolist(), ws.tolist()):
                if u < v:
                    yield u, v, w

    def to_scipy(self) -> sp.csr_matrix:
        n = self.node_count
        return sp.csr_matrix((self.weights, self.indices, self.indptr), shape=(n, n))

    def internal_id(self, external) -> int:
        """Map an external node id (see ``node_ids``) to the dense internal id."""
        if self._id_index is None:
            self._id_index = {int(x): i for i, x in enumerate(self.node_ids.tolist())}
        try:
            return self._id_index[int(external)]
        except KeyError:
            raise InputError(f"unknown node id {external}") from None

    # -- set functionals ----------------------------------------------------

    def degree(self, v: int) -> float:
        return float(self.degrees[self.check_node(v)])

    def volume(self, nodes: Iterable[int]) -> float:
        s = self.node_set(nodes)
        if not s:
            return 0.0
        return float(self.degrees[list(s)].sum())

    def cut(self, nodes: Iterable[int]) -> float:
        """Total weight of edges with exactly one endpoint in ``nodes``."""
        s = self.node_set(nodes)
        total = 0.0
        indptr, indices, weights = self.indptr, self.indices, self.weights
        for v in s:
            a, b = indptr[v], indptr[v + 1]
            for u, w in zip(indices[a:b].tolist(), weights[a:b].tolist()):
                if u not in s:
                    total += w
        return total

    def internal_weight(self, nodes: Iterable[int]) -> float:
        """Total weight of edges with both endpoints in ``nodes``."""
        s = self.node_set(nodes)
        return (self.volume(s) - self.cut(s)) / 2.0

    def conductance(self, nodes: Iterable[int]) -> float:
        s = self.node_set(nodes)
        if not s or len(s) == self.node_count:
            raise UndefinedConductanceError("conductance is undefined for the empty or full node set")
        vol = self.volume(s)
        denom = min(vol, self.total_volume - vol)
        if denom <= 0:
            raise UndefinedConductanceError("conductance is undefined when either side has zero volume")
        return self.cut(s) / denom


def degree(g: Graph, v: int) -> float:
    return g.degree(v)


def volume(g: Graph, s: Iterable[int]) -> float:
    return g.volume(s)


def cut(g: Graph, s: Iterable[int]) -> float:
    return g.cut(s)


def conductance(g: Graph, s: Iterable[int]) -> float:
    return g.conductance(s)
