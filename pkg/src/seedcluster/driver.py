"""Outer descent over ``alpha``: repeated local min-cuts until no set scores lower."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import NamedTuple

from .exceptions import InfeasibleSpecError, InputError, UndefinedConductanceError
from .graph import Graph, NodeSet
from .local import LocalSolveReport, local_min_cut
from .objective import SeedSpec, overlap_score, seed_penalized_conductance

logger = logging.getLogger(__name__)

MODES = ("flowseed", "simplelocal", "mqi")
ALPHA_UPDATES = ("pi", "phi")


@dataclass(frozen=True)
class SolveOptions:
    """How :func:`cluster` runs.

    ``mode``
        ``"flowseed"`` uses the seed spec as given. ``"simplelocal"`` drops
        strict seeds and penalties. ``"mqi"`` sets ``epsilon`` to infinity, so
        only subsets of the seeds are candidates.
    ``alpha_update``
        ``"pi"`` sets the next ``alpha`` to the penalized score of the new set,
        ``"phi"`` to its plain conductance. ``None`` picks ``"phi"`` for
        simplelocal and ``"pi"`` otherwise.
    """

    mode: str = "flowseed"
    alpha_update: str | None = None
    max_outer_iterations: int | None = None
    relative_tolerance: float = 1e-10

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.alpha_update is not None and self.alpha_update not in ALPHA_UPDATES:
            raise InputError(f"alpha_update must be one of {ALPHA_UPDATES}, got {self.alpha_update!r}")
        if self.max_outer_iterations is not None and self.max_outer_iterations < 1:
            raise InputError("max_outer_iterations must be at least 1")
        if not 0 <= self.relative_tolerance < 1:
            raise InputError("relative_tolerance must lie in [0, 1)")

    @property
    def update(self) -> str:
        if self.alpha_update is not None:
            return self.alpha_update
        return "phi" if self.mode == "simplelocal" else "pi"

    def effective_spec(self, spec: SeedSpec) -> SeedSpec:
        if self.mode == "simplelocal":
            return spec.replace(strict=frozenset(), penalties={})
        if self.mode == "mqi":
            return spec.replace(epsilon=math.inf)
        return spec


@dataclass
class ClusterResult:
    best_set: NodeSet
    pi_score: float
    conductance: float
    alpha_trace: list[float]
    spec: SeedSpec
    options: SolveOptions
    volume: float = 0.0
    cut: float = 0.0
    reports: list[LocalSolveReport] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def outer_iterations(self) -> int:
        """Number of local min-cut solves performed."""
        return len(self.reports)

    @property
    def size(self) -> int:
        return len(self.best_set)

    @property
    def peak_local_volume(self) -> float:
        return max((r.peak_local_volume for r in self.reports), default=0.0)

    @property
    def explored_edges(self) -> int:
        return max((r.explored_edges for r in self.reports), default=0)


class AlphaStep(NamedTuple):
    nodes: NodeSet
    alpha: float
    report: LocalSolveReport


def _safe_conductance(g: Graph, s) -> float:
    try:
        return g.conductance(s)
    except UndefinedConductanceError:
        return math.inf


def set_score(g: Graph, spec: SeedSpec, s, update: str = "pi") -> float:
    """Score used to update ``alpha``; infinite for sets violating the seed constraints."""
    pi = seed_penalized_conductance(g, spec, s)
    if update == "pi" or math.isinf(pi):
        return pi
    return _safe_conductance(g, s)


def alpha_search_step(g: Graph, spec: SeedSpec, alpha: float, update: str = "pi") -> AlphaStep:
    """Minimise the ``alpha`` objective and score the minimiser."""
    report = local_min_cut(g, spec, alpha)
    return AlphaStep(report.minimizer, set_score(g, spec, report.minimizer, update), report)


def cluster(g: Graph, spec: SeedSpec, opts: SolveOptions | None = None) -> ClusterResult:
    """Grow (or shrink) the seed set into the set of smallest penalized score.

    Starts from ``alpha = score(R)`` and repeatedly replaces ``alpha`` by the
    score of the minimiser of the ``alpha`` objective until that no longer
    decreases it (relative tolerance ``opts.relative_tolerance``).
    """
    opts = opts or SolveOptions()
    spec = opts.effective_spec(spec).check(g)
    start = time.perf_counter()
    seeds = spec.seeds
    if g.volume(seeds) <= 0:
        raise InputError("seed set has zero volume")
    if not overlap_score(g, spec, seeds) > 0:
        raise InfeasibleSpecError("seed set has nonpositive overlap with itself")
    update = opts.update
    shrink = 1.0 - opts.relative_tolerance

    alpha = math.inf
    alpha_new = seed_penalized_conductance(g, spec, seeds)
    current = seeds
    best = seeds
    trace: list[float] = []
    reports: list[LocalSolveReport] = []
    while alpha_new < alpha * shrink:
        best = current
        alpha = alpha_new
        trace.append(alpha)
        if alpha <= 0:
            break
        if opts.max_outer_iterations is not None and len(reports) >= opts.max_outer_iterations:
            logger.info("stopping after %d outer iterations", len(reports))
            break
        current, alpha_new, report = alpha_search_step(g, spec, alpha, update)
        reports.append(report)
        logger.debug("alpha=%.12g -> %.12g (|S|=%d)", alpha, alpha_new, len(current))

    return ClusterResult(
        best_set=best,
        pi_score=seed_penalized_conductance(g, spec, best),
        conductance=_safe_conductance(g, best),
        alpha_trace=trace,
        spec=spec,
        options=opts,
        volume=g.volume(best),
        cut=g.cut(best),
        reports=reports,
        wall_time=time.perf_counter() - start,
    )
