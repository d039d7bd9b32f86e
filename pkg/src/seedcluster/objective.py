"""Seed-penalized conductance and the parametric cut objective behind it.

For a seed set ``R`` with strict members ``R_s``, soft penalties ``p`` and a
locality parameter ``eps`` the overlap of a candidate set ``S`` is::

    O(S) = vol(R & S) - eps * vol(S - R) - sum(p[r] * d[r] for r in R - S)

and the score to minimise is ``cut(S) / O(S)`` when ``O(S) > 0`` and
``R_s <= S``, infinity otherwise. For a fixed ``alpha`` the set minimising::

    f(S) = cut(S) - alpha * O(S) + alpha * vol(R)

is a minimum s-t cut, and ``f(S) < alpha * vol(R)`` exactly when the score of
``S`` is below ``alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .exceptions import BoundUndefinedError, InputError
from .graph import Graph, NodeSet

INF = math.inf


@dataclass(frozen=True)
class SeedSpec:
    """Seed set, strict subset, soft exclusion penalties and locality.

    ``epsilon = math.inf`` restricts candidates to subsets of the seed set.
    Penalties default to zero for any seed not listed.
    """

    seeds: NodeSet
    strict: NodeSet = frozenset()
    penalties: Mapping[int, float] = field(default_factory=dict)
    epsilon: float = 0.1

    def __post_init__(self):
        seeds = frozenset(int(v) for v in self.seeds)
        strict = frozenset(int(v) for v in self.strict)
        penalties = {int(k): float(p) for k, p in dict(self.penalties).items()}
        if not seeds:
            raise InputError("seed set must be nonempty")
        if not strict <= seeds:
            raise InputError(f"strict nodes {sorted(strict - seeds)} are not seeds")
        bad = set(penalties) - seeds
        if bad:
            raise InputError(f"penalties given for non-seed nodes {sorted(bad)}")
        if any(not p >= 0 or math.isinf(p) for p in penalties.values()):
            raise InputError("penalties must be finite and nonnegative")
        eps = float(self.epsilon)
        if not eps > 0:
            raise InputError(f"epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, "seeds", seeds)
        object.__setattr__(self, "strict", strict)
        object.__setattr__(self, "penalties", MappingProxyType(penalties))
        object.__setattr__(self, "epsilon", eps)

    @property
    def is_mqi(self) -> bool:
        return math.isinf(self.epsilon)

    def penalty(self, r: int) -> float:
        return self.penalties.get(r, 0.0)

    def check(self, g: Graph) -> "SeedSpec":
        """Raise :class:`InputError` unless every node id is valid for ``g``."""
        g.node_set(self.seeds)
        return self

    def replace(self, **changes) -> "SeedSpec":
        kw = dict(seeds=self.seeds, strict=self.strict, penalties=dict(self.penalties), epsilon=self.epsilon)
        kw.update(changes)
        return SeedSpec(**kw)


@dataclass(frozen=True)
class TheoryParams:
    """``gamma = vol(R) / vol(T)`` for a target ``T`` containing ``R``."""

    gamma: float
    epsilon: float


def overlap_score(g: Graph, spec: SeedSpec, s: Iterable[int]) -> float:
    """Overlap between ``s`` and the seed set, rewarding seeds kept and
    penalising non-seeds taken and seeds dropped."""
    s = g.node_set(s)
    seeds = spec.seeds
    outside = s - seeds
    if spec.is_mqi and outside:
        return -INF
    kept = g.volume(s & seeds)
    taken = 0.0 if spec.is_mqi else spec.epsilon * g.volume(outside)
    dropped = sum(spec.penalty(r) * g.degrees[r] for r in seeds - s)
    return kept - taken - float(dropped)


def seed_penalized_conductance(g: Graph, spec: SeedSpec, s: Iterable[int]) -> float:
    s = g.node_set(s)
    if not spec.strict <= s:
        return INF
    overlap = overlap_score(g, spec, s)
    if not overlap > 0:
        return INF
    return g.cut(s) / overlap


def alpha_objective(g: Graph, spec: SeedSpec, alpha: float, s: Iterable[int]) -> float:
    """``cut(S) - alpha * O(S) + alpha * vol(R)``; soft penalties only."""
    s = g.node_set(s)
    return g.cut(s) - alpha * overlap_score(g, spec, s) + alpha * g.volume(spec.seeds)


def local_conductance(g: Graph, seeds: Iterable[int], epsilon: float, s: Iterable[int]) -> float:
    """``cut(S) / (vol(R & S) - eps * vol(S - R))``, infinite when the
    denominator is not positive."""
    seeds = g.node_set(seeds)
    s = g.node_set(s)
    denom = g.volume(s & seeds) - epsilon * g.volume(s - seeds)
    if not denom > 0:
        return INF
    return g.cut(s) / denom


def improvement_constant(tp: TheoryParams) -> float:
    """Factor ``C`` with ``phi(S*) <= C * phi(T)`` for the score minimiser."""
    gamma, eps = tp.gamma, tp.epsilon
    if not 0 < gamma <= 1:
        raise BoundUndefinedError(f"gamma must lie in (0, 1], got {gamma}")
    if not eps > 0:
        raise BoundUndefinedError(f"epsilon must be positive, got {eps}")
    denom = gamma + eps * gamma - eps
    if denom <= 0:
        raise BoundUndefinedError(
            f"epsilon={eps} is not below gamma/(1-gamma) for gamma={gamma}; the bound is undefined"
        )
    return 1.0 / denom
