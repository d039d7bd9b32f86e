import numpy as np
import pytest

import oracles
from conftest import B6_EDGES
from seedcluster import Graph, SeedSpec, local_min_cut
from seedcluster.flownet import solve_min_cut
from seedcluster.local import build_local_cut_network, expand, init_local

R = {0, 1, 2}
B6_W = [(u, v, 1.0) for u, v in B6_EDGES]


def edge_pairs(lg):
    return {tuple(sorted(e)) for e in lg.edge_set()}


def check_invariants(lg, g):
    assert not lg.edge_complete & lg.touched_incomplete
    for v in lg.edge_complete:
        assert lg.local_degree[v] == pytest.approx(g.degrees[v])
    for v in lg.touched_incomplete:
        assert 0 < lg.local_degree[v] <= g.degrees[v] + 1e-12
    for u, v, _ in lg.edges:
        assert u in lg.edge_complete or v in lg.edge_complete
    assert lg.local_volume == pytest.approx(sum(lg.local_degree.values()))


def test_init_local_b6(b6):
    lg = init_local(b6, SeedSpec(R))
    assert lg.edge_complete == R
    assert lg.touched_incomplete == {3}
    assert edge_pairs(lg) == {(0, 1), (0, 2), (1, 2), (2, 3)}
    check_invariants(lg, b6)


def test_init_local_whole_graph(b6):
    lg = init_local(b6, SeedSpec(range(6)))
    assert lg.edge_complete == set(range(6))
    assert not lg.touched_incomplete
    assert len(lg.edges) == b6.edge_count


def test_init_local_isolated_seed():
    g = Graph.from_edges([(0, 1)], n=3)
    lg = init_local(g, SeedSpec({2}))
    assert lg.edges == []
    assert not lg.touched_incomplete


def test_expand_examples(b6):
    lg = init_local(b6, SeedSpec(R))
    delta_edges, delta_nodes = expand(lg, b6, {3})
    assert {tuple(sorted(e[:2])) for e in delta_edges} == {(3, 4), (3, 5)}
    assert sorted(delta_nodes) == [4, 5]
    assert lg.touched_incomplete == {4, 5}
    check_invariants(lg, b6)

    before = (set(lg.edge_complete), set(lg.touched_incomplete), list(lg.edges))
    assert expand(lg, b6, set()) == ([], [])
    assert before == (lg.edge_complete, lg.touched_incomplete, lg.edges)

    expand(lg, b6, range(6))
    assert edge_pairs(lg) == {tuple(sorted(e)) for e in B6_EDGES}
    assert lg.noop_expansions == 4
    check_invariants(lg, b6)


def test_cut_network_capacities(b6):
    lg = init_local(b6, SeedSpec(R))
    net = build_local_cut_network(lg, b6, SeedSpec(R, epsilon=1.0), 0.2)
    assert net.source_caps() == pytest.approx({0: 0.4, 1: 0.4, 2: 0.6})
    assert net.sink_caps() == pytest.approx({3: 0.6})
    assert sorted(net.edge_caps().values()) == [1.0] * 4
    strict = build_local_cut_network(lg, b6, SeedSpec(R, strict={0}, epsilon=1.0), 0.2)
    assert strict.source_caps()[0] == pytest.approx(28.4)


def test_cut_network_with_penalty(b6):
    lg = init_local(b6, SeedSpec(R))
    net = build_local_cut_network(lg, b6, SeedSpec(R, penalties={1: 1.0}, epsilon=1.0), 0.2)
    assert net.source_caps()[1] == pytest.approx(0.2 * 2 * 2)


def test_local_min_cut_b6(b6):
    rep = local_min_cut(b6, SeedSpec(R, epsilon=1.0), 0.2, debug=True)
    assert rep.minimizer == frozenset(R)
    assert rep.objective_value == pytest.approx(1.0)
    value, best = oracles.min_f(6, B6_W, R, eps=1.0, alpha=0.2)
    assert (value, best) == (pytest.approx(1.0), frozenset(R))
    assert rep.minimizer <= rep.edge_complete


def test_local_min_cut_below_optimum_with_strict_seeds(b6):
    spec = SeedSpec(R, strict=R, epsilon=1.0)
    rep = local_min_cut(b6, spec, 0.05)
    value, _ = oracles.min_f(6, B6_W, R, strict=R, eps=1.0, alpha=0.05)
    assert value == pytest.approx(0.35)
    assert rep.objective_value == pytest.approx(value)
    assert R <= rep.minimizer


def test_whole_graph_seed_is_one_round(b6):
    rep = local_min_cut(b6, SeedSpec(range(6), epsilon=1.0), 0.3)
    assert rep.rounds == 1
    net = build_local_cut_network(init_local(b6, SeedSpec(range(6))), b6, SeedSpec(range(6), epsilon=1.0), 0.3)
    res, _ = solve_min_cut(net)
    assert rep.cut_value == pytest.approx(res.cut_value)


def test_alpha_must_be_positive(b6):
    with pytest.raises(ValueError):
        local_min_cut(b6, SeedSpec(R), 0.0)


def test_mqi_network_contracts_outside_nodes(b6):
    spec = SeedSpec(R, epsilon=np.inf)
    lg = init_local(b6, spec)
    net = build_local_cut_network(lg, b6, spec, 0.1)
    assert sorted(net.interior) == [0, 1, 2]
    assert net.sink_caps() == {2: 1.0}


@pytest.mark.parametrize("seed", range(40))
def test_local_solution_is_global_minimum(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 11))
    edges = [(u, v, float(rng.choice([1.0, 2.0, 0.5]))) for u in range(n) for v in range(u + 1, n)
             if rng.random() < 0.35]
    if not edges:
        pytest.skip("empty draw")
    g = Graph.from_edges(edges, n=n)
    seeds = rng.choice(n, size=int(rng.integers(1, 4)), replace=False).tolist()
    if g.volume(seeds) == 0:
        pytest.skip("zero-volume seeds")
    strict = [r for r in seeds if rng.random() < 0.3]
    pens = {r: float(rng.choice([0.0, 0.5, 1.0])) for r in seeds if r not in strict}
    eps = float(rng.choice([0.1, 0.5, 1.0]))
    alpha = float(rng.uniform(0.05, 1.0))
    rep = local_min_cut(g, SeedSpec(seeds, strict, pens, eps), alpha, debug=True)
    value, _ = oracles.min_f(n, edges, seeds, strict, pens, eps, alpha)
    assert rep.objective_value == pytest.approx(value, abs=1e-9)
    assert set(strict) <= rep.minimizer
    assert rep.minimizer <= rep.edge_complete
