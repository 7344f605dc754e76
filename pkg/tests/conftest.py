import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from infomat.distribution import JointDistribution


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow exploration tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# --- independent dense oracles -------------------------------------------

def dense_entropy(pmf, keep):
    """H of the marginal on axes ``keep``, by summing out the other axes of a dense array."""
    pmf = np.asarray(pmf, dtype=np.float64)
    drop = tuple(a for a in range(pmf.ndim) if a not in set(keep))
    m = pmf.sum(axis=drop).ravel()
    m = m[m > 0]
    return float(-(m * np.log2(m)).sum())


def dense_mi_matrix(pmf):
    n = np.ndim(pmf)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                out[i, i] = dense_entropy(pmf, [i])
            else:
                out[i, j] = dense_entropy(pmf, [i]) + dense_entropy(pmf, [j]) - dense_entropy(pmf, [i, j])
    return out


def dense_atoms(pmf):
    """Solve the union-measure linear system directly: sum_{T meets U} mu(T) = H(U)."""
    n = np.ndim(pmf)
    masks = range(1, 1 << n)
    a = np.array([[1.0 if t & u else 0.0 for t in masks] for u in masks])
    h = np.array([dense_entropy(pmf, [i for i in range(n) if u >> i & 1]) for u in masks])
    x = np.linalg.solve(a, h)
    return dict(zip(masks, x))


def random_dist(rng, shape, sparsity=0.0):
    w = rng.gamma(1.0, size=shape)
    if sparsity:
        w[rng.random(shape) < sparsity] = 0.0
        if w.sum() == 0:
            w.flat[0] = 1.0
    return JointDistribution.from_dense(w / w.sum())


@st.composite
def distributions(draw, min_vars=1, max_vars=4, max_alphabet=3):
    n = draw(st.integers(min_vars, max_vars))
    shape = tuple(draw(st.lists(st.integers(1, max_alphabet), min_size=n, max_size=n)))
    size = int(np.prod(shape))
    weights = draw(st.lists(st.one_of(st.just(0.0), st.floats(1e-3, 1.0)), min_size=size, max_size=size))
    if sum(weights) == 0:
        weights[0] = 1.0
    w = np.array(weights).reshape(shape)
    return JointDistribution.from_dense(w / w.sum())


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def all_outcomes(shape):
    return list(itertools.product(*(range(s) for s in shape)))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
