"""Flow-based local graph clustering with strict and soft seed penalties."""

from .driver import ClusterResult, SolveOptions, alpha_search_step, cluster
from .estimator import SeedCluster
from .exceptions import (
    BoundUndefinedError,
    ContractError,
    InfeasibleSpecError,
    InputError,
    ParseError,
    UndefinedConductanceError,
)
from .graph import Graph
from .local import local_min_cut
from .metrics import EvalReport, evaluate
from .objective import (
    SeedSpec,
    TheoryParams,
    alpha_objective,
    improvement_constant,
    overlap_score,
    seed_penalized_conductance,
)

__version__ = "0.1.0"

__all__ = [
    "BoundUndefinedError",
    "ClusterResult",
    "ContractError",
    "EvalReport",
    "Graph",
    "InfeasibleSpecError",
    "InputError",
    "ParseError",
    "SeedCluster",
    "SeedSpec",
    "SolveOptions",
    "TheoryParams",
    "UndefinedConductanceError",
    "alpha_objective",
    "alpha_search_step",
    "cluster",
    "evaluate",
    "improvement_constant",
    "local_min_cut",
    "overlap_score",
    "seed_penalized_conductance",
]
