"""Strongly-local minimisation of the parametric cut objective.

The cut network is built only over a growing local subgraph ``L`` whose edge
set starts as the edges incident to the seeds. Each round solves a minimum
cut on ``L`` (warm-starting from the previous preflow), and every
source-side node whose edges are not all in ``L`` yet gets its full
neighbourhood added. Once the source side consists only of edge-complete
nodes its local cut equals its global cut, so it minimises the objective over
the whole graph.

Nodes that have never been touched are not materialised at all; they sit on
the sink side at zero cost.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import flownet
from .graph import Graph, NodeSet
from .objective import SeedSpec, alpha_objective

logger = logging.getLogger(__name__)


class LocalGraph:
    """Edge-complete nodes, touched edge-incomplete nodes and the local edges.

    Every local edge has at least one edge-complete endpoint. Nodes of the base
    graph that are in neither set have local degree zero and are implicit.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.edge_complete: set[int] = set()
        self.touched_incomplete: set[int] = set()
        self.local_degree: dict[int, float] = {}
        self.edges: list[tuple[int, int, float]] = []
        self.local_volume = 0.0
        self.expansions = 0
        self.noop_expansions = 0

    @property
    def explored_edges(self) -> int:
        return len(self.edges)

    @property
    def nodes(self) -> set[int]:
        return self.edge_complete | self.touched_incomplete

    def edge_set(self) -> set[frozenset]:
        return {frozenset((u, v)) for u, v, _ in self.edges}


def expand(lg: LocalGraph, g: Graph, new_nodes) -> tuple[list, list]:
    """Make each node in ``new_nodes`` edge-complete.

    Nodes are processed in ascending order. Returns ``(delta_edges,
    delta_nodes)``: the edges added to the local graph as ``(u, v, w)`` and
    the nodes that had local degree zero before this call and are now touched.
    Expanding a node that is already edge-complete does nothing and is
    counted in ``noop_expansions``.
    """
    delta_edges = []
    delta_nodes = []
    complete = lg.edge_complete
    touched = lg.touched_incomplete
    ldeg = lg.local_degree
    for v in sorted(new_nodes):
        if v in complete:
            lg.noop_expansions += 1
            continue
        if v not in touched:
            delta_nodes.append(v)
        nbrs, ws = g.neighbors(v)
        for w, wt in zip(nbrs.tolist(), ws.tolist()):
            if w in complete:
                continue
            delta_edges.append((v, w, wt))
            ldeg[v] = ldeg.get(v, 0.0) + wt
            ldeg[w] = ldeg.get(w, 0.0) + wt
            if w not in touched:
                touched.add(w)
                delta_nodes.append(w)
        touched.discard(v)
        complete.add(v)
        ldeg.setdefault(v, 0.0)
        lg.expansions += 1
    lg.edges.extend(delta_edges)
    lg.local_volume += 2.0 * sum(e[2] for e in delta_edges)
    return delta_edges, delta_nodes


def init_local(g: Graph, spec: SeedSpec) -> LocalGraph:
    """Local graph whose edge-complete set is the seed set."""
    lg = LocalGraph(g)
    expand(lg, g, spec.seeds)
    return lg


def strict_penalty(g: Graph, alpha: float) -> float:
    """Penalty making a strict seed's source arc heavier than any cut it could save."""
    return max(g.total_volume, 1.0) / alpha


def source_capacity(g: Graph, spec: SeedSpec, alpha: float, r: int) -> float:
    p = strict_penalty(g, alpha) if r in spec.strict else spec.penalty(r)
    return alpha * (1.0 + p) * float(g.degrees[r])


def sink_capacity(g: Graph, spec: SeedSpec, alpha: float, v: int) -> float:
    """``alpha * eps * d_v`` using the global degree, zero for seeds."""
    if v in spec.seeds:
        return 0.0
    return alpha * spec.epsilon * float(g.degrees[v])


def build_local_cut_network(lg: LocalGraph, g: Graph, spec: SeedSpec, alpha: float) -> flownet.FlowNetwork:
    """Cut network of the local graph for a fixed ``alpha``.

    With ``epsilon = inf`` non-seed nodes are merged into the sink: each seed
    gets a sink arc carrying the weight of its edges leaving the seed set.
    """
    seeds = spec.seeds
    if spec.is_mqi:
        interior = []
        edges = []
        for r in sorted(seeds):
            out = 0.0
            nbrs, ws = g.neighbors(r)
            for w, wt in zip(nbrs.tolist(), ws.tolist()):
                if w in seeds:
                    if r < w:
                        edges.append((r, w, wt))
                else:
                    out += wt
            interior.append((r, out))
    else:
        interior = [(v, sink_capacity(g, spec, alpha, v)) for v in sorted(lg.nodes)]
        edges = lg.edges
    source_arcs = [(r, source_capacity(g, spec, alpha, r)) for r in sorted(seeds)]
    return flownet.FlowNetwork.build(interior, edges, source_arcs)


@dataclass(frozen=True)
class LocalSolveReport:
    alpha: float
    minimizer: NodeSet
    objective_value: float
    cut_value: float
    rounds: int
    peak_local_volume: float
    explored_edges: int
    edge_complete: NodeSet
    local_nodes: int
    pushes: int
    relabels: int
    global_relabels: int


def local_min_cut(g: Graph, spec: SeedSpec, alpha: float, *, debug: bool = False) -> LocalSolveReport:
    """Minimise ``cut(S) - alpha * O(S) + alpha * vol(R)`` over all node sets.

    Only the neighbourhood that the successive local cuts reach is explored.
    """
    if not 0 < alpha:
        raise ValueError(f"alpha must be positive, got {alpha}")
    lg = init_local(g, spec)
    net = build_local_cut_network(lg, g, spec, alpha)
    state = None
    rounds = pushes = relabels = global_relabels = 0
    while True:
        res, state = flownet.solve_min_cut(net, state, debug=debug)
        rounds += 1
        pushes += res.pushes
        relabels += res.relabels
        global_relabels += res.global_relabels
        if spec.is_mqi:
            break
        frontier = res.source_side & lg.touched_incomplete
        if not frontier:
            break
        delta_edges, delta_nodes = expand(lg, g, frontier)
        if not delta_edges and not delta_nodes:
            # frontier nodes already had every edge; the cut is unchanged
            break
        flownet.insert(
            net,
            state,
            [(v, sink_capacity(g, spec, alpha, v)) for v in delta_nodes],
            delta_edges,
        )
    minimizer = frozenset(res.source_side)
    if not spec.is_mqi and not minimizer <= lg.edge_complete:
        raise AssertionError("local minimizer contains edge-incomplete nodes")
    report = LocalSolveReport(
        alpha=alpha,
        minimizer=minimizer,
        objective_value=alpha_objective(g, spec, alpha, minimizer),
        cut_value=res.cut_value,
        rounds=rounds,
        peak_local_volume=lg.local_volume,
        explored_edges=lg.explored_edges,
        edge_complete=frozenset(lg.edge_complete),
        local_nodes=len(lg.nodes),
        pushes=pushes,
        relabels=relabels,
        global_relabels=global_relabels,
    )
    logger.debug(
        "alpha=%.6g rounds=%d |S|=%d explored_edges=%d", alpha, rounds, len(minimizer), lg.explored_edges
    )
    return report
