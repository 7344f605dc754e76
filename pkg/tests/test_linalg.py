import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from infomat import linalg
from infomat.errors import NoConvergence
from infomat.examples import parity_mi_matrix_closed_form
from infomat.linalg import eigen_sym, is_psd, min_eigenvalue, round_robin_pairs, sym_matrix

XOR4_M = np.array([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1], [1, 1, 1, 2]], dtype=float)
SUM4_M = np.array([[1, 0, 0.5, 1], [0, 1, 0.5, 1], [0.5, 0.5, 1.5, 1.5], [1, 1, 1.5, 2]])


def check_eigen_invariants(a, res):
    a = sym_matrix(a)
    n = a.shape[0]
    scale = max(1.0, np.max(np.abs(a)))
    assert np.all(np.diff(res.values) >= 0)
    assert res.residual <= 1e-10 * scale
    assert np.max(np.abs(res.vectors.T @ res.vectors - np.eye(n))) <= 1e-10
    assert abs(res.values.sum() - np.trace(a)) <= 1e-9 * max(1.0, abs(np.trace(a)))
    recon = res.vectors @ np.diag(res.values) @ res.vectors.T
    assert np.max(np.abs(recon - a)) <= 1e-9 * scale


def angle(u, v):
    c = abs(u @ v) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.acos(min(1.0, c))


def test_identity():
    res = eigen_sym(np.eye(3))
    assert list(res.values) == [1.0, 1.0, 1.0]
    assert res.sweeps == 0


def test_xor4_eigen():
    res = eigen_sym(XOR4_M)
    assert res.values[0] == pytest.approx((3 - math.sqrt(13)) / 2, abs=1e-9)
    check_eigen_invariants(XOR4_M, res)


def test_sum4_eigen():
    value, _ = min_eigenvalue(SUM4_M)
    assert value == pytest.approx(-0.11062, abs=5e-6)


def test_min_eigenvector_parallel():
    _, v = min_eigenvalue(XOR4_M)
    expected = np.array([1, 1, 1, (1 - math.sqrt(13)) / 2])
    assert angle(v, expected) <= 1e-6


def test_diagonal():
    value, v = min_eigenvalue(np.diag([2.0, 5.0]))
    assert value == 2.0
    np.testing.assert_array_equal(v, [1.0, 0.0])


def test_parity_three():
    value, _ = min_eigenvalue(parity_mi_matrix_closed_form(3))
    # n = 3 in (n + 1 - sqrt((n-1)^2 + 4(2^n - 1))) / 2 gives 2 - 2 sqrt(2)
    assert value == pytest.approx(2 - 2 * math.sqrt(2), abs=1e-9)


def test_psd_verdicts():
    assert is_psd(np.eye(4)).psd
    verdict = is_psd(XOR4_M)
    assert not verdict
    assert verdict.value == pytest.approx(-0.302776, abs=1e-6)
    assert verdict.quadratic_form < -verdict.tol / 2


def test_rejects_asymmetric_and_bad_input():
    with pytest.raises(ValueError, match="not symmetric"):
        sym_matrix([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        sym_matrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        sym_matrix([[np.nan]])
    with pytest.raises(ValueError):
        is_psd(np.eye(2), tol=-1.0)


def test_symmetrizes_roundoff():
    a = np.array([[1.0, 0.5], [0.5 + 1e-14, 1.0]])
    assert np.array_equal(sym_matrix(a), sym_matrix(a).T)


def test_round_robin_covers_all_pairs():
    for n in range(1, 12):
        rounds = round_robin_pairs(n)
        seen = []
        for p, q in rounds:
            assert len(set(p) | set(q)) == 2 * len(p)
            seen.extend(zip(p.tolist(), q.tolist()))
        assert sorted(seen) == list(itertools.combinations(range(n), 2))


def test_no_convergence_reported():
    a = np.array([[1.0, 2.0, 0.3], [2.0, -1.0, 0.7], [0.3, 0.7, 4.0]])
    with pytest.raises(NoConvergence) as info:
        eigen_sym(a, max_sweeps=1)
    assert info.value.off_norm > 0


def test_deterministic():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(12, 12))
    a = a + a.T
    r1, r2 = eigen_sym(a), eigen_sym(a)
    assert np.array_equal(r1.values, r2.values) and np.array_equal(r1.vectors, r2.vectors)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 9, 17, 40])
def test_random_sizes_both_paths(n):
    rng = np.random.default_rng(n)
    a = rng.normal(size=(n, n)) * 10 ** rng.uniform(-3, 3)
    a = a + a.T
    res = eigen_sym(a)
    check_eigen_invariants(a, res)
    np.testing.assert_allclose(res.values, np.linalg.eigvalsh(a), rtol=0, atol=1e-10 * max(1, np.max(np.abs(a))))


def test_scalar_and_vectorized_agree(monkeypatch):
    rng = np.random.default_rng(3)
    a = rng.normal(size=(7, 7))
    a = a + a.T
    scalar = eigen_sym(a)
    monkeypatch.setattr(linalg, "SCALAR_LIMIT", 0)
    vector = eigen_sym(a)
    np.testing.assert_allclose(scalar.values, vector.values, rtol=0, atol=1e-13)


def test_degenerate_spectrum():
    a = parity_mi_matrix_closed_form(4)
    res = eigen_sym(a)
    check_eigen_invariants(a, res)
    assert np.sum(np.abs(res.values - 1.0) < 1e-12) == 14


symmetric_small = hnp.arrays(
    np.float64, st.tuples(st.integers(1, 3), st.just(3)), elements=st.floats(-5, 5, allow_nan=False)
).map(lambda x: x[:, : x.shape[0]] + x[:, : x.shape[0]].T)


def principal_minors_nonneg(a, tol):
    n = a.shape[0]
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            with np.errstate(all="ignore"):
                det = np.linalg.det(a[np.ix_(idx, idx)])
            if det < -tol:
                return False
    return True


@settings(max_examples=200, deadline=None)
@given(symmetric_small)
def test_psd_agrees_with_principal_minors(a):
    verdict = is_psd(a)
    minors = principal_minors_nonneg(a, 1e-6)
    # skip matrices too close to the boundary for the determinant oracle to be decisive
    if abs(verdict.value) > 1e-3:
        assert verdict.psd == minors
    if not verdict.psd:
        assert float(verdict.vector @ a @ verdict.vector) < -verdict.tol / 2


@settings(max_examples=60, deadline=None)
@given(hnp.arrays(np.float64, st.tuples(st.integers(1, 10), st.just(10)), elements=st.floats(-100, 100)))
def test_eigen_invariants_property(x):
    a = x[:, : x.shape[0]]
    a = a + a.T
    check_eigen_invariants(a, eigen_sym(a))
