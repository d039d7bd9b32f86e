"""Recovery metrics against a ground-truth node set."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable

from .exceptions import InputError, UndefinedConductanceError


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    set_size: int
    conductance: float = math.nan
    pi_score: float = math.nan

    def as_dict(self) -> dict:
        return asdict(self)


def f1_score(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate(output: Iterable, target: Iterable, g=None, spec=None) -> EvalReport:
    """Precision, recall and F1 of ``output`` against ``target``.

    When the graph ``g`` is given the report also carries the conductance of
    ``output``, and with ``spec`` its penalized score.
    """
    output = frozenset(output)
    target = frozenset(target)
    if not target:
        raise InputError("target set must be nonempty")
    hit = len(output & target)
    precision = hit / len(output) if output else 0.0
    recall = hit / len(target)
    cond = pi = math.nan
    if g is not None and output:
        try:
            cond = g.conductance(output)
        except UndefinedConductanceError:
            cond = math.inf
        if spec is not None:
            from .objective import seed_penalized_conductance

            pi = seed_penalized_conductance(g, spec, output)
    return EvalReport(precision, recall, f1_score(precision, recall), len(output), cond, pi)
