import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from seedcluster import InputError, SeedCluster


@pytest.fixture
def adjacency(b6):
    return b6.to_scipy()


@pytest.mark.parametrize("kind", ["graph", "sparse", "dense"])
def test_fit_b6(b6, adjacency, kind):
    X = {"graph": b6, "sparse": adjacency, "dense": adjacency.toarray()}[kind]
    est = SeedCluster(epsilon=1.0).fit(X, [0, 1, 2], strict=[0])
    assert est.labels_.tolist() == [1, 1, 1, 0, 0, 0]
    assert est.cluster_.tolist() == [0, 1, 2]
    assert est.pi_score_ == pytest.approx(1 / 7)
    assert est.conductance_ == pytest.approx(1 / 7)
    assert est.n_iter_ == est.result_.outer_iterations
    assert est.score() == pytest.approx(-1 / 7)


def test_params_and_clone():
    est = SeedCluster(epsilon=0.5, mode="simplelocal", penalty=1.0)
    params = est.get_params()
    assert params["epsilon"] == 0.5 and params["mode"] == "simplelocal"
    twin = clone(est)
    assert twin.get_params() == params
    assert twin.set_params(epsilon=2.0).epsilon == 2.0


def test_fit_predict(b6):
    assert SeedCluster(epsilon=1.0).fit_predict(b6, [0, 1, 2]).tolist() == [1, 1, 1, 0, 0, 0]
    assert SeedCluster(epsilon=1.0).fit_predict(b6, 0).tolist() == [1, 0, 0, 0, 0, 0]


def test_strict_seeds_flag(b6):
    est = SeedCluster(epsilon=0.3, strict_seeds=True).fit(b6, [0, 5])
    assert {0, 5} <= set(est.cluster_.tolist())


def test_penalty_array(b6):
    pens = np.zeros(6)
    pens[3] = 1.0
    est = SeedCluster(epsilon=0.5).fit(b6, [0, 3], penalties=pens)
    spec = est.result_.spec
    assert (spec.penalty(0), spec.penalty(3)) == (0.0, 1.0)
    est = SeedCluster(epsilon=0.5, penalty=0.5).fit(b6, [0, 3], strict=[0], penalties={3: 2.0})
    assert dict(est.result_.spec.penalties) == {3: 2.0}


def test_mqi_mode(b6):
    est = SeedCluster(mode="mqi").fit(b6, [0, 1, 2, 3])
    assert est.cluster_.tolist() == [0, 1, 2]


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SeedCluster().score()


@pytest.mark.parametrize(
    "X,seeds,kwargs",
    [
        (np.ones((2, 3)), [0], {}),
        (np.ones(4), [0], {}),
        (np.array([[0, -1], [-1, 0]]), [0], {}),
        (np.array([[0, 1], [0, 0]]), [0], {}),
        (sp.eye(3) * 0 + sp.csr_matrix(np.ones((3, 3))), [], {}),
        (np.ones((3, 3)), [5], {}),
        (np.ones((3, 3)), [0], {"penalties": {1: 1.0}}),
        (np.ones((3, 3)), [0], {"penalties": np.ones(2)}),
        (np.ones((3, 3)), [0], {"strict": [1]}),
    ],
)
def test_invalid_inputs(X, seeds, kwargs):
    with pytest.raises(InputError):
        SeedCluster().fit(X, seeds, **kwargs)


def test_invalid_parameters(b6):
    with pytest.raises(InputError):
        SeedCluster(mode="other").fit(b6, [0])
    with pytest.raises(InputError):
        SeedCluster(epsilon=-1).fit(b6, [0])
    with pytest.raises(InputError):
        SeedCluster(penalty=-1).fit(b6, [0])
