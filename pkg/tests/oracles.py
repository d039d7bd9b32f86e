"""Brute-force reference computations used to check the solvers.

Everything here works from raw edge lists and enumerates subsets directly; none
of it calls into the package under test.
"""

import itertools
from collections import deque

import numpy as np


def subsets_matrix(n):
    """All 2^n subsets of range(n) as a boolean matrix, one row per subset."""
    codes = np.arange(2**n, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(bool)


def degrees(n, edges):
    d = np.zeros(n)
    for u, v, w in edges:
        d[u] += w
        d[v] += w
    return d


def cut_values(X, edges):
    total = np.zeros(len(X))
    for u, v, w in edges:
        total += w * (X[:, u] != X[:, v])
    return total


def overlap_values(X, n, edges, seeds, penalties, eps):
    d = degrees(n, edges)
    in_r = np.zeros(n, bool)
    in_r[list(seeds)] = True
    pen = np.zeros(n)
    for r, p in penalties.items():
        pen[r] = p
    kept = X @ (d * in_r)
    taken = X @ (d * ~in_r)
    dropped = (~X) @ (pen * d * in_r)
    if np.isinf(eps):
        out = kept - dropped
        out[taken > 0] = -np.inf
        return out
    return kept - eps * taken - dropped


def pi_values(n, edges, seeds, strict, penalties, eps):
    """(subset matrix, penalized score per subset) with inf for infeasible sets."""
    X = subsets_matrix(n)
    cut = cut_values(X, edges)
    ov = overlap_values(X, n, edges, seeds, penalties, eps)
    feasible = ov > 0
    for r in strict:
        feasible &= X[:, r]
    with np.errstate(divide="ignore", invalid="ignore"):
        pi = np.where(feasible, cut / np.where(feasible, ov, 1.0), np.inf)
    return X, pi


def min_pi(n, edges, seeds, strict=(), penalties=None, eps=0.1):
    X, pi = pi_values(n, edges, seeds, strict, penalties or {}, eps)
    k = int(np.argmin(pi))
    return float(pi[k]), frozenset(np.flatnonzero(X[k]).tolist())


def f_values(n, edges, seeds, penalties, eps, alpha):
    X = subsets_matrix(n)
    cut = cut_values(X, edges)
    ov = overlap_values(X, n, edges, seeds, penalties, eps)
    vol_r = degrees(n, edges)[list(seeds)].sum()
    with np.errstate(invalid="ignore"):
        f = cut - alpha * ov + alpha * vol_r
    return X, f


def min_f(n, edges, seeds, strict=(), penalties=None, eps=0.1, alpha=0.5):
    """Minimum of the alpha objective over sets containing every strict seed."""
    X, f = f_values(n, edges, seeds, penalties or {}, eps, alpha)
    ok = np.ones(len(X), bool)
    for r in strict:
        ok &= X[:, r]
    f = np.where(ok, f, np.inf)
    k = int(np.argmin(f))
    return float(f[k]), frozenset(np.flatnonzero(X[k]).tolist())


def conductance_values(n, edges):
    X = subsets_matrix(n)
    cut = cut_values(X, edges)
    vol = X @ degrees(n, edges)
    total = degrees(n, edges).sum()
    denom = np.minimum(vol, total - vol)
    with np.errstate(divide="ignore", invalid="ignore"):
        return X, np.where(denom > 0, cut / np.where(denom > 0, denom, 1), np.inf)


def local_conductance_descent(n, edges, seeds, eps, use_phi=True, tol=1e-10):
    """Alpha descent on the unpenalized local objective, every step by enumeration.

    The minimiser at each step is the union of all minimisers (the largest one).
    Returns the best set found.
    """
    X = subsets_matrix(n)
    cut = cut_values(X, edges)
    ov = overlap_values(X, n, edges, seeds, {}, eps)
    _, phis = conductance_values(n, edges)
    vol_r = degrees(n, edges)[list(seeds)].sum()
    seed_row = np.zeros(n, bool)
    seed_row[list(seeds)] = True
    k_r = int((seed_row * (1 << np.arange(n))).sum())

    def score(k):
        if not ov[k] > 0:
            return np.inf
        return phis[k] if use_phi else cut[k] / ov[k]

    alpha, alpha_new, cur, best = np.inf, cut[k_r] / ov[k_r], k_r, k_r
    while alpha_new < alpha * (1 - tol):
        best, alpha = cur, alpha_new
        if alpha <= 0:
            break
        f = cut - alpha * ov + alpha * vol_r
        mins = np.flatnonzero(f <= f.min() + 1e-9)
        union = np.any(X[mins], axis=0)
        cur = int((union * (1 << np.arange(n))).sum())
        alpha_new = score(cur)
    return frozenset(np.flatnonzero(X[best]).tolist())


def min_st_cut(n_interior, arcs):
    """Minimum s-t cut by enumeration.

    ``arcs`` are ``(tail, head, cap)`` over nodes ``'s'``, ``'t'`` and
    ``0 .. n_interior-1``. Returns ``(value, list of minimising source sides)``.
    """
    best, sides = np.inf, []
    for bits in itertools.product((False, True), repeat=n_interior):
        side = {"s"} | {i for i in range(n_interior) if bits[i]}
        val = sum(c for a, b, c in arcs if a in side and b not in side)
        if val < best - 1e-12:
            best, sides = val, [frozenset(side - {"s"})]
        elif abs(val - best) <= 1e-12:
            sides.append(frozenset(side - {"s"}))
    return best, sides


def edmonds_karp(nodes, arcs, s="s", t="t"):
    """Max-flow value on directed ``(tail, head, cap)`` arcs (parallel arcs add)."""
    res = {u: {} for u in nodes}
    for a, b, c in arcs:
        res[a][b] = res[a].get(b, 0.0) + c
        res[b].setdefault(a, 0.0)
    total = 0.0
    while True:
        parent = {s: None}
        q = deque([s])
        while q and t not in parent:
            u = q.popleft()
            for v, r in res[u].items():
                if r > 1e-12 and v not in parent:
                    parent[v] = u
                    q.append(v)
        if t not in parent:
            return total
        path, v = [], t
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        b = min(res[u][v] for u, v in path)
        for u, v in path:
            res[u][v] -= b
            res[v][u] += b
        total += b
