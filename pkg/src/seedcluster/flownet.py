"""Incremental FIFO push-relabel for minimum s-t cuts.

Only the preflow phase is run: once no active node remains, the nodes that can
still reach the sink in the residual network form the sink side of a minimum
cut. Excess trapped on the source side is never routed back to the source.

Arcs are stored in pairs, arc ``a`` and ``a ^ 1`` being reverses of each other,
with skew-symmetric flow. An undirected edge of weight ``w`` becomes a pair in
which both arcs have capacity ``w``; a terminal edge becomes one arc with its
capacity and a reverse arc of capacity zero.

A solved :class:`FlowState` can be carried across :func:`insert` calls that add
interior nodes, interior edges and sink arcs; the old preflow stays valid, and
the next :func:`solve_min_cut` starts from it after a global relabel.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .exceptions import ContractError, InputError

logger = logging.getLogger(__name__)

SOURCE = 0
SINK = 1

#: Residual capacities and excesses at or below this are treated as zero.
TOL = 1e-10


class FlowNetwork:
    """Directed capacitated network with a source, a sink and interior nodes.

    Interior nodes are addressed by arbitrary hashable ids (in practice node ids
    of a base graph) and stored at internal indices ``2, 3, ...``.
    """

    def __init__(self):
        self.node_ids: list = ["s", "t"]
        self.index: dict = {}
        self.adj: list[list[int]] = [[], []]
        self.head: list[int] = []
        self.cap: list[float] = []
        self._pair: dict[tuple[int, int], int] = {}
        self._source_arc: dict[int, int] = {}
        self._sink_arc: dict[int, int] = {}

    @classmethod
    def build(cls, interior=(), edges=(), source_arcs=()) -> "FlowNetwork":
        """Network from ``(node, sink_cap)``, ``(u, v, cap)`` and ``(node, cap)`` rows.

        Interior edges are undirected. Repeated edges between the same pair
        are merged by adding capacities.
        """
        net = cls()
        for node, sink_cap in interior:
            net.add_node(node, sink_cap)
        for node, c in source_arcs:
            net.add_source_arc(node, c)
        for u, v, c in edges:
            net.add_edge(u, v, c)
        return net

    # -- structure ----------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        """Node count including source and sink."""
        return len(self.adj)

    @property
    def n_arcs(self) -> int:
        return len(self.head)

    @property
    def interior(self) -> list:
        return self.node_ids[2:]

    def __contains__(self, node):
        return node in self.index

    def __repr__(self):
        return f"FlowNetwork(interior={self.n_nodes - 2}, arcs={self.n_arcs})"

    def tail(self, a: int) -> int:
        return self.head[a ^ 1]

    def _new_pair(self, i, j, c_fwd, c_rev) -> int:
        a = len(self.head)
        self.head += [j, i]
        self.cap += [float(c_fwd), float(c_rev)]
        self.adj[i].append(a)
        self.adj[j].append(a + 1)
        return a

    @staticmethod
    def _check_cap(c) -> float:
        c = float(c)
        if not c >= 0 or c == float("inf"):
            raise InputError(f"capacity must be finite and nonnegative, got {c}")
        return c

    def _idx(self, node) -> int:
        try:
            return self.index[node]
        except KeyError:
            raise InputError(f"unknown interior node {node!r}") from None

    def add_node(self, node: Hashable, sink_cap: float = 0.0) -> int:
        """Add an interior node, or add ``sink_cap`` to an existing one."""
        c = self._check_cap(sink_cap)
        i = self.index.get(node)
        if i is None:
            i = len(self.adj)
            self.index[node] = i
            self.node_ids.append(node)
            self.adj.append([])
        if c > 0:
            a = self._sink_arc.get(i)
            if a is None:
                self._sink_arc[i] = self._new_pair(i, SINK, c, 0.0)
            else:
                self.cap[a] += c
        return i

    def add_source_arc(self, node: Hashable, c: float) -> None:
        c = self._check_cap(c)
        i = self._idx(node)
        a = self._source_arc.get(i)
        if a is None:
            self._source_arc[i] = self._new_pair(SOURCE, i, c, 0.0)
        else:
            self.cap[a] += c

    def add_edge(self, u: Hashable, v: Hashable, c: float) -> int:
        """Add an undirected interior edge; returns the arc ``u -> v``."""
        c = self._check_cap(c)
        i, j = self._idx(u), self._idx(v)
        if i == j:
            raise InputError(f"self-loop on {u!r}")
        key = (i, j) if i < j else (j, i)
        a = self._pair.get(key)
        if a is None:
            a = self._new_pair(key[0], key[1], c, c)
            self._pair[key] = a
        else:
            self.cap[a] += c
            self.cap[a ^ 1] += c
        return a if self.head[a] == j else a ^ 1

    def source_caps(self) -> dict:
        return {self.node_ids[i]: self.cap[a] for i, a in self._source_arc.items()}

    def sink_caps(self) -> dict:
        return {self.node_ids[i]: self.cap[a] for i, a in self._sink_arc.items()}

    def edge_caps(self) -> dict:
        """``{(u, v): cap}`` for interior edges, keyed by insertion orientation."""
        return {(self.node_ids[i], self.node_ids[j]): self.cap[a] for (i, j), a in self._pair.items()}

    def crossing_capacity(self, source_side: Iterable) -> float:
        """Total capacity of arcs leaving ``{s} | source_side``."""
        side = {SOURCE} | {self._idx(x) for x in source_side}
        head, cap, adj = self.head, self.cap, self.adj
        return sum(cap[a] for x in side for a in adj[x] if head[a] not in side)


@dataclass
class FlowState:
    """Preflow, labels and the FIFO queue of active nodes for one network."""

    flow: list[float]
    excess: list[float]
    label: list[int]
    fifo: deque = field(default_factory=deque)
    in_fifo: list[bool] = field(default_factory=list)
    current: list[int] = field(default_factory=list)
    work_counter: float = 0.0
    converged: bool = False
    pushes: int = 0
    relabels: int = 0
    global_relabels: int = 0

    @classmethod
    def fresh(cls, net: FlowNetwork) -> "FlowState":
        """Zero preflow with every source arc saturated; ``label(s) = n``."""
        n = net.n_nodes
        st = cls(
            flow=[0.0] * net.n_arcs,
            excess=[0.0] * n,
            label=[0] * n,
            in_fifo=[False] * n,
            current=[0] * n,
        )
        st.label[SOURCE] = n
        for a in sorted(net._source_arc.values()):
            c = net.cap[a]
            st.flow[a] = c
            st.flow[a ^ 1] = -c
            st.excess[net.head[a]] += c
            st.excess[SOURCE] -= c
        for i in range(2, n):
            if st.excess[i] > TOL:
                st.fifo.append(i)
                st.in_fifo[i] = True
        return st

    def _grow(self, net: FlowNetwork) -> None:
        extra_nodes = net.n_nodes - len(self.label)
        self.excess += [0.0] * extra_nodes
        self.label += [0] * extra_nodes
        self.in_fifo += [False] * extra_nodes
        self.current += [0] * extra_nodes
        self.flow += [0.0] * (net.n_arcs - len(self.flow))


@dataclass(frozen=True)
class MinCutResult:
    source_side: frozenset
    cut_value: float
    flow_value: float
    pushes: int
    relabels: int
    global_relabels: int


def global_relabel(net: FlowNetwork, st: FlowState) -> None:
    """Set every label to its residual distance to the sink.

    Nodes that cannot reach the sink, and the source, get label ``n``. The FIFO
    queue is rebuilt to hold exactly the active nodes in index order.
    """
    n = net.n_nodes
    head, cap, adj = net.head, net.cap, net.adj
    flow, label = st.flow, st.label
    label[:] = [n] * n
    label[SINK] = 0
    queue = [SINK]
    for v in queue:
        dv = label[v] + 1
        for a in adj[v]:
            w = head[a]
            if label[w] == n and w != SOURCE:
                b = a ^ 1
                if cap[b] - flow[b] > TOL:
                    label[w] = dv
                    queue.append(w)
    excess = st.excess
    st.fifo.clear()
    st.in_fifo[:] = [False] * n
    st.current[:] = [0] * n
    for i in range(2, n):
        if excess[i] > TOL and label[i] < n:
            st.fifo.append(i)
            st.in_fifo[i] = True
    st.work_counter = 0.0
    st.global_relabels += 1


def _sink_reachers(net: FlowNetwork, st: FlowState) -> list[bool]:
    head, cap, adj, flow = net.head, net.cap, net.adj, st.flow
    seen = [False] * net.n_nodes
    seen[SINK] = True
    queue = [SINK]
    for v in queue:
        for a in adj[v]:
            w = head[a]
            if not seen[w]:
                b = a ^ 1
                if cap[b] - flow[b] > TOL:
                    seen[w] = True
                    queue.append(w)
    return seen


def extract_source_side(net: FlowNetwork, st: FlowState) -> frozenset:
    """Interior nodes with no residual path to the sink.

    Raises :class:`ContractError` if a node that can reach the sink still
    carries excess, i.e. the preflow is not maximum.
    """
    if len(st.label) != net.n_nodes or len(st.flow) != net.n_arcs:
        raise ContractError("flow state does not match the network; solve after inserting")
    seen = _sink_reachers(net, st)
    excess = st.excess
    for i in range(2, net.n_nodes):
        if seen[i] and excess[i] > TOL:
            raise ContractError(f"node {net.node_ids[i]!r} is still active; preflow is not maximum")
    return frozenset(net.node_ids[i] for i in range(2, net.n_nodes) if not seen[i])


def solve_min_cut(net: FlowNetwork, state: FlowState | None = None, *, debug: bool = False):
    """Run preflow push-relabel to completion.

    ``state`` is a previous (possibly pre-insert) state to warm start from;
    ``None`` starts cold. Returns ``(MinCutResult, state)``; the state is
    updated in place when supplied.
    """
    st = FlowState.fresh(net) if state is None else state
    if state is not None:
        st._grow(net)
    if debug:
        check_state(net, st, labels=False)
    pushes0, relabels0, globals0 = st.pushes, st.relabels, st.global_relabels

    head, cap, adj = net.head, net.cap, net.adj
    flow, excess, label = st.flow, st.excess, st.label
    current, in_fifo, fifo = st.current, st.in_fifo, st.fifo
    n = net.n_nodes
    m = max(net.n_arcs, 1)
    tol = TOL

    global_relabel(net, st)
    pushes = relabels = 0
    work = 0.0
    while fifo:
        u = fifo.popleft()
        in_fifo[u] = False
        ex = excess[u]
        lu = label[u]
        if ex <= tol or lu >= n:
            continue
        arcs = adj[u]
        deg = len(arcs)
        i = current[u]
        relabelled = False
        while True:
            if i < deg:
                a = arcs[i]
                r = cap[a] - flow[a]
                if r > tol:
                    v = head[a]
                    if lu == label[v] + 1:
                        d = ex if ex < r else r
                        flow[a] += d
                        flow[a ^ 1] -= d
                        ex -= d
                        excess[v] += d
                        pushes += 1
                        if v > SINK and not in_fifo[v] and excess[v] > tol:
                            fifo.append(v)
                            in_fifo[v] = True
                        if debug:
                            excess[u] = ex
                            check_state(net, st)
                        if ex <= tol:
                            break
                i += 1
                continue
            new = n
            for b in arcs:
                if cap[b] - flow[b] > tol:
                    lv = label[head[b]] + 1
                    if lv < new:
                        new = lv
            if debug and new <= lu:
                raise ContractError(f"relabel of node {u} did not increase its label")
            label[u] = lu = new
            relabels += 1
            work += 1.0 + deg / m
            i = 0
            relabelled = True
            if debug:
                excess[u] = ex
                check_state(net, st)
            break
        excess[u] = ex
        current[u] = i
        if relabelled:
            if work > n:
                global_relabel(net, st)
                work = 0.0
                continue
            if lu < n and ex > tol:
                fifo.append(u)
                in_fifo[u] = True

    st.pushes += pushes
    st.relabels += relabels
    st.work_counter = work
    st.converged = True
    side = extract_source_side(net, st)
    result = MinCutResult(
        source_side=side,
        cut_value=net.crossing_capacity(side),
        flow_value=excess[SINK],
        pushes=st.pushes - pushes0,
        relabels=st.relabels - relabels0,
        global_relabels=st.global_relabels - globals0,
    )
    return result, st


def insert(net: FlowNetwork, state: FlowState | None, new_interior=(), new_edges=()):
    """Grow ``net`` with new interior nodes (and sink arcs) and interior edges.

    New arcs carry zero flow, so a maximum preflow of the old network remains a
    valid preflow of the new one. Source arcs cannot be added this way.
    Returns ``(net, state)``; both are modified in place.
    """
    if state is not None and not state.converged:
        raise ContractError("warm start requires a solved flow state")
    for node, sink_cap in new_interior:
        net.add_node(node, sink_cap)
    for u, v, c in new_edges:
        net.add_edge(u, v, c)
    if state is not None:
        state._grow(net)
        state.converged = False
    return net, state


def check_state(net: FlowNetwork, st: FlowState, *, labels: bool = True, tol: float = 1e-9) -> None:
    """Raise :class:`ContractError` unless ``st`` is a valid preflow for ``net``.

    Checks capacity constraints, skew symmetry, stored versus recomputed excess
    and nonnegative interior excess; with ``labels`` also label validity on
    every residual arc.
    """
    head, cap, adj, flow = net.head, net.cap, net.adj, st.flow
    if len(flow) != net.n_arcs or len(st.excess) != net.n_nodes:
        raise ContractError("state size does not match network")
    for a in range(0, net.n_arcs, 2):
        if abs(flow[a] + flow[a + 1]) > tol:
            raise ContractError(f"arc pair {a} is not skew symmetric")
    for a in range(net.n_arcs):
        if flow[a] > cap[a] + tol:
            raise ContractError(f"arc {a} over capacity: {flow[a]} > {cap[a]}")
    for i in range(2, net.n_nodes):
        ex = -sum(flow[a] for a in adj[i])
        if abs(ex - st.excess[i]) > tol * max(1.0, abs(ex)):
            raise ContractError(f"stored excess of node {i} is {st.excess[i]}, flows give {ex}")
        if ex < -tol:
            raise ContractError(f"node {i} has negative excess {ex}")
    if labels:
        label = st.label
        for a in range(net.n_arcs):
            if cap[a] - flow[a] > TOL:
                u, v = head[a ^ 1], head[a]
                if u != SOURCE and label[u] > label[v] + 1:
                    raise ContractError(f"label invalid on residual arc {u}->{v}: {label[u]} > {label[v]} + 1")


def reference_max_flow(net: FlowNetwork) -> float:
    """Maximum s-t flow value by shortest augmenting paths (Edmonds-Karp).

    Independent of the push-relabel machinery above; for testing.
    """
    n = net.n_nodes
    residual: list[dict[int, float]] = [dict() for _ in range(n)]
    for a in range(net.n_arcs):
        u, v = net.head[a ^ 1], net.head[a]
        residual[u][v] = residual[u].get(v, 0.0) + net.cap[a]
    total = 0.0
    while True:
        parent = {SOURCE: None}
        queue = deque([SOURCE])
        while queue and SINK not in parent:
            u = queue.popleft()
            for v, r in residual[u].items():
                if r > TOL and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if SINK not in parent:
            return total
        path = []
        v = SINK
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        bottleneck = min(residual[u][v] for u, v in path)
        for u, v in path:
            residual[u][v] -= bottleneck
            residual[v][u] = residual[v].get(u, 0.0) + bottleneck
        total += bottleneck
