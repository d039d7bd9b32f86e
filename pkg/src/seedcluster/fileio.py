"""Edge-list, seed-file, node-list and result-file formats.

Graph files hold one edge per line, ``u v`` or ``u v w``, whitespace separated,
``#`` starting a comment. Seed files hold ``node [strict] [penalty]`` per line.
Node-list files hold one node id per line (extra columns are ignored). Result
files are JSON documents; the field list is in ``RESULT_FIELDS``.

Node ids in files are external ids. ``index_base`` is subtracted to obtain
internal ids unless ``relabel`` is requested, in which case the distinct ids
are numbered in sorted order. The mapping is kept in ``Graph.node_ids``.
"""

from __future__ import annotations

import json
import math
import os
from typing import IO, Iterable

import numpy as np

from .exceptions import InputError, ParseError
from .graph import Graph, NodeSet
from .objective import SeedSpec

RESULT_FORMAT = "seedcluster-result/1"

RESULT_FIELDS = (
    "format",
    "mode",
    "alpha_update",
    "epsilon",
    "seeds",
    "strict",
    "size",
    "volume",
    "cut",
    "conductance",
    "pi_score",
    "alpha_trace",
    "outer_iterations",
    "iterations",
    "members",
)
ITERATION_FIELDS = (
    "alpha",
    "set_size",
    "objective_value",
    "rounds",
    "explored_edges",
    "peak_local_volume",
    "local_nodes",
    "pushes",
    "relabels",
    "global_relabels",
)


def _content_lines(path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line.split()


def _parse_int(tok, path, lineno, what="node id"):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} {tok!r}", path, lineno) from None


def load_graph(path, index_base: int = 0, weighted: bool | None = None, relabel: bool = False) -> Graph:
    """Read an edge list.

    ``weighted=None`` takes a third column as the weight when present;
    ``False`` ignores it; ``True`` requires it. Duplicate edges are merged by
    summing weights and self-loops are dropped (see ``Graph.dropped_self_loops``).
    """
    if index_base not in (0, 1):
        raise InputError("index_base must be 0 or 1")
    us, vs, ws = [], [], []
    for lineno, toks in _content_lines(path):
        if len(toks) < 2 or (len(toks) > 3 and weighted is not False):
            raise ParseError(f"expected 'u v' or 'u v w', got {' '.join(toks)!r}", path, lineno)
        u = _parse_int(toks[0], path, lineno)
        v = _parse_int(toks[1], path, lineno)
        w = 1.0
        if len(toks) == 3 and weighted is not False:
            try:
                w = float(toks[2])
            except ValueError:
                raise ParseError(f"bad weight {toks[2]!r}", path, lineno) from None
            if not (w > 0 and math.isfinite(w)):
                raise ParseError(f"weight must be positive, got {toks[2]}", path, lineno)
        elif weighted:
            raise ParseError("missing weight column", path, lineno)
        if not relabel and min(u, v) < index_base:
            raise ParseError(f"node id below index base {index_base}", path, lineno)
        us.append(u)
        vs.append(v)
        ws.append(w)
    u = np.asarray(us, dtype=np.int64)
    v = np.asarray(vs, dtype=np.int64)
    if relabel:
        ids, inverse = np.unique(np.concatenate([u, v]), return_inverse=True)
        u, v = inverse[: len(u)], inverse[len(u):]
        node_ids = ids
    else:
        u, v = u - index_base, v - index_base
        n = int(max(u.max(), v.max())) + 1 if len(u) else 0
        node_ids = np.arange(n, dtype=np.int64) + index_base
    return Graph._from_arrays(u, v, np.asarray(ws, dtype=np.float64), len(node_ids), node_ids)


def write_graph(g: Graph, path, weighted: bool = True) -> None:
    """Write ``g`` as an edge list using its external node ids."""
    ids = g.node_ids.tolist()
    with open(path, "w") as fh:
        for u, v, w in g.edges():
            if weighted:
                fh.write(f"{ids[u]} {ids[v]} {w!r}\n")
            else:
                fh.write(f"{ids[u]} {ids[v]}\n")


def load_node_list(path, g: Graph) -> NodeSet:
    """Internal ids of the external node ids listed one per line."""
    return frozenset(g.internal_id(_parse_int(toks[0], path, lineno)) for lineno, toks in _content_lines(path))


def load_seeds(
    path,
    g: Graph,
    epsilon: float,
    default_penalty: float = 0.0,
    strict_all: bool = False,
) -> SeedSpec:
    """Read ``node [strict] [penalty]`` rows into a :class:`SeedSpec`.

    ``default_penalty`` applies to non-strict seeds without a penalty column;
    an explicit penalty column overrides it. ``strict_all`` marks every seed
    strict.
    """
    seeds, strict, penalties = set(), set(), {}
    for lineno, toks in _content_lines(path):
        if len(toks) > 3:
            raise ParseError(f"expected 'node [strict] [penalty]', got {' '.join(toks)!r}", path, lineno)
        ext = _parse_int(toks[0], path, lineno)
        try:
            v = g.internal_id(ext)
        except InputError:
            raise ParseError(f"seed {ext} is not a node of the graph", path, lineno) from None
        if v in seeds:
            raise ParseError(f"seed {ext} listed twice", path, lineno)
        seeds.add(v)
        if len(toks) >= 2:
            flag = toks[1]
            if flag not in ("0", "1"):
                raise ParseError(f"strict flag must be 0 or 1, got {flag!r}", path, lineno)
            if flag == "1":
                strict.add(v)
        if len(toks) == 3:
            try:
                p = float(toks[2])
            except ValueError:
                raise ParseError(f"bad penalty {toks[2]!r}", path, lineno) from None
            if not (p >= 0 and math.isfinite(p)):
                raise ParseError(f"penalty must be nonnegative, got {toks[2]}", path, lineno)
            penalties[v] = p
        elif default_penalty and v not in strict:
            penalties[v] = float(default_penalty)
    if not seeds:
        raise ParseError("seed file lists no nodes", path)
    if strict_all:
        strict = set(seeds)
    return SeedSpec(frozenset(seeds), frozenset(strict), penalties, epsilon)


def write_seeds(path, g: Graph, seeds: Iterable[int], strict: Iterable[int] = (), penalty: float | None = None):
    ids = g.node_ids.tolist()
    strict = set(strict)
    with open(path, "w") as fh:
        for v in sorted(seeds):
            line = f"{ids[v]} {1 if v in strict else 0}"
            if penalty is not None and v not in strict:
                line += f" {penalty!r}"
            fh.write(line + "\n")


def _num(x):
    # JSON has no infinity; non-finite values are written as null
    return x if math.isfinite(x) else None


def result_document(result, g: Graph, report=None, timing: bool = False) -> dict:
    if not result.best_set:
        raise InputError("refusing to write an empty cluster")
    ids = g.node_ids.tolist()
    spec = result.spec
    doc = {
        "format": RESULT_FORMAT,
        "mode": result.options.mode,
        "alpha_update": result.options.update,
        "epsilon": _num(spec.epsilon),
        "seeds": sorted(ids[v] for v in spec.seeds),
        "strict": sorted(ids[v] for v in spec.strict),
        "size": result.size,
        "volume": result.volume,
        "cut": result.cut,
        "conductance": _num(result.conductance),
        "pi_score": _num(result.pi_score),
        "alpha_trace": [_num(a) for a in result.alpha_trace],
        "outer_iterations": result.outer_iterations,
        "iterations": [
            {
                "alpha": r.alpha,
                "set_size": len(r.minimizer),
                "objective_value": r.objective_value,
                "rounds": r.rounds,
                "explored_edges": r.explored_edges,
                "peak_local_volume": r.peak_local_volume,
                "local_nodes": r.local_nodes,
                "pushes": r.pushes,
                "relabels": r.relabels,
                "global_relabels": r.global_relabels,
            }
            for r in result.reports
        ],
        "members": sorted(ids[v] for v in result.best_set),
    }
    if report is not None:
        doc["evaluation"] = {k: _num(float(v)) if k != "set_size" else v for k, v in report.as_dict().items()}
    if timing:
        doc["wall_time"] = result.wall_time
    return doc


def write_result(result, g: Graph, dest: str | os.PathLike | IO | None = None, report=None,
                 timing: bool = False, members_path=None) -> dict:
    """Serialise a clustering result as JSON to ``dest`` (a path or a text
    stream); optionally also write the member ids one per line."""
    doc = result_document(result, g, report, timing)
    text = json.dumps(doc, indent=2) + "\n"
    if dest is None:
        pass
    elif hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)
    if members_path is not None:
        with open(members_path, "w") as fh:
            fh.writelines(f"{m}\n" for m in doc["members"])
    return doc


def read_result(path) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != RESULT_FORMAT:
        raise ParseError(f"not a {RESULT_FORMAT} document", path)
    return doc
