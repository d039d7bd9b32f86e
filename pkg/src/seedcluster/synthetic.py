"""Seed-set protocol and planted-community generators."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .exceptions import InputError
from .graph import Graph, NodeSet


def grow_seed(g: Graph, starters) -> NodeSet:
    """``starters`` together with all their one-hop neighbours."""
    starters = g.node_set(starters)
    grown = set(starters)
    for v in starters:
        grown.update(g.neighbors(v)[0].tolist())
    return frozenset(grown)


def make_seed(g: Graph, target, fraction: float, rng_seed: int) -> tuple[NodeSet, NodeSet]:
    """Sample ``ceil(fraction * |target|)`` starters from ``target`` and grow
    them by their neighbourhood. Returns ``(starters, seeds)``."""
    target = sorted(g.node_set(target))
    if not target:
        raise InputError("target set must be nonempty")
    if not 0 < fraction <= 1:
        raise InputError(f"fraction must lie in (0, 1], got {fraction}")
    k = max(1, math.ceil(fraction * len(target) - 1e-9))
    rng = np.random.default_rng(rng_seed)
    picked = rng.choice(len(target), size=k, replace=False)
    starters = frozenset(target[i] for i in picked.tolist())
    return starters, grow_seed(g, starters)


def _triangle_pairs(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # row-major index over pairs (i, j), i < j < n
    i = n - 2 - np.floor(np.sqrt(-8.0 * k + 4.0 * n * (n - 1) - 7) / 2.0 - 0.5).astype(np.int64)
    j = k + i + 1 - n * (n - 1) // 2 + (n - i) * ((n - i) - 1) // 2
    return i, j.astype(np.int64)


def sample_block_pairs(rng, n_a: int, n_b: int | None, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Edges of a G(n, p) block (``n_b is None``) or a bipartite block.

    Endpoints are local to each block.
    """
    total = n_a * (n_a - 1) // 2 if n_b is None else n_a * n_b
    if total == 0 or p <= 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    count = int(rng.binomial(total, p))
    idx = np.sort(rng.choice(total, size=count, replace=False)).astype(np.int64)
    if n_b is None:
        return _triangle_pairs(idx, n_a)
    return idx // n_b, idx % n_b


def _sbm_edges(rng, sizes: Sequence[int], p_in: float, p_out: float):
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    us, vs = [], []
    for a, n_a in enumerate(sizes):
        for b in range(a, len(sizes)):
            if a == b:
                u, v = sample_block_pairs(rng, n_a, None, p_in)
            else:
                u, v = sample_block_pairs(rng, n_a, sizes[b], p_out)
            us.append(u + offsets[a])
            vs.append(v + offsets[b])
    return np.concatenate(us), np.concatenate(vs), int(offsets[-1])


def _block_connected(u, v, block: np.ndarray) -> bool:
    lo, hi = block.min(), block.max() + 1
    keep = (u >= lo) & (u < hi) & (v >= lo) & (v < hi)
    m = hi - lo
    mat = sp.coo_matrix((np.ones(keep.sum()), (u[keep] - lo, v[keep] - lo)), shape=(m, m))
    ncomp, _ = connected_components(mat, directed=False)
    return ncomp == 1


def generate_planted(
    block_sizes: Sequence[int],
    p_in: float,
    p_out: float,
    rng_seed: int,
    target_block: int = 0,
    max_retries: int = 20,
) -> tuple[Graph, NodeSet]:
    """Stochastic block model with one block designated as the target.

    Blocks occupy consecutive node ids. The draw is repeated (with the same
    generator) until the target block induces a connected subgraph.
    """
    sizes = [int(s) for s in block_sizes]
    if not sizes or any(s <= 0 for s in sizes):
        raise InputError("block sizes must be positive")
    if not (0 <= p_in <= 1 and 0 <= p_out <= 1):
        raise InputError("probabilities must lie in [0, 1]")
    if not 0 <= target_block < len(sizes):
        raise InputError("target_block out of range")
    rng = np.random.default_rng(rng_seed)
    start = sum(sizes[:target_block])
    block = np.arange(start, start + sizes[target_block])
    for _ in range(max_retries):
        u, v, n = _sbm_edges(rng, sizes, p_in, p_out)
        if _block_connected(u, v, block):
            g = Graph._from_arrays(u, v, np.ones(len(u)), n, None)
            return g, frozenset(block.tolist())
    raise InputError(f"target block stayed disconnected after {max_retries} draws")


def plant_cluster(
    host: Graph,
    cluster_size: int,
    p_in: float,
    boundary_per_node: int,
    rng_seed: int,
) -> tuple[Graph, NodeSet]:
    """Attach a G(cluster_size, p_in) community to ``host``.

    The community takes node ids ``0 .. cluster_size-1`` and its internal edges
    depend only on ``(cluster_size, p_in, rng_seed)``, so the same community can
    be embedded in hosts of different sizes. Each community node gets
    ``boundary_per_node`` edges to uniformly chosen host nodes.
    """
    rng = np.random.default_rng(rng_seed)
    cu, cv = sample_block_pairs(rng, cluster_size, None, p_in)
    attach = np.random.default_rng([rng_seed, host.node_count])
    bu = np.repeat(np.arange(cluster_size), boundary_per_node)
    bv = attach.integers(0, host.node_count, size=len(bu)) + cluster_size
    hu, hv, hw = [], [], []
    for a, b, w in host.edges():
        hu.append(a)
        hv.append(b)
        hw.append(w)
    u = np.concatenate([cu, bu, np.asarray(hu, np.int64) + cluster_size])
    v = np.concatenate([cv, bv, np.asarray(hv, np.int64) + cluster_size])
    w = np.concatenate([np.ones(len(cu) + len(bu)), np.asarray(hw, float)])
    g = Graph._from_arrays(u, v, w, cluster_size + host.node_count, None)
    return g, frozenset(range(cluster_size))
