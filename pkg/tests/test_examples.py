import itertools
import math

import numpy as np
import pytest

from infomat import errors
from infomat.examples import (
    embed_with_independent,
    example_xor4,
    independent_uniform,
    named_example,
    parity_family,
    parity_min_eigen_closed_form,
    parity_mi_matrix_closed_form,
    sum_example,
)
from infomat.info import mi_matrix, mutual_information, subset_entropy
from infomat.linalg import min_eigenvalue

XOR4_M = [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1], [1, 1, 1, 2]]
XOR4_LAMBDA = (3 - math.sqrt(13)) / 2


def test_xor4():
    d = example_xor4()
    assert d.shape == (2, 2, 2, 4)
    assert d.outcomes == ((0, 0, 0, 0), (0, 1, 1, 1), (1, 0, 1, 2), (1, 1, 0, 3))
    assert d.probs == (0.25,) * 4
    np.testing.assert_allclose(mi_matrix(d), XOR4_M, atol=1e-12)
    assert min_eigenvalue(mi_matrix(d))[0] == pytest.approx(XOR4_LAMBDA, abs=1e-9)
    for i, j in itertools.combinations(range(3), 2):
        assert mutual_information(d, i, j) == 0.0


def test_sum_example():
    d = sum_example()
    assert d.shape == (2, 2, 3, 4)
    assert subset_entropy(d, [2]) == 1.5
    assert min_eigenvalue(mi_matrix(d))[0] == pytest.approx(-0.11062, abs=5e-6)


def test_parity_two_is_xor4():
    d = parity_family(2)
    assert d.outcomes == example_xor4().outcomes
    np.testing.assert_array_equal(mi_matrix(d), XOR4_M)


def test_parity_three():
    d = parity_family(3)
    m = mi_matrix(d)
    assert m.shape == (8, 8)
    assert m[7, 7] == 3.0
    # variables are ordered by bitmask: Y{1} is index 0, Y{1,2} is index 2
    assert d.names[0] == "Y{1}" and d.names[2] == "Y{1,2}"
    assert mutual_information(d, 0, 2) == 0.0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_parity_invariants(n):
    d = parity_family(n)
    size = 1 << n
    assert d.n == size and d.support_size == size
    assert d.shape == (2,) * (size - 1) + (size,)
    m = mi_matrix(d)
    off = m[: size - 1, : size - 1] - np.eye(size - 1)
    assert np.max(np.abs(off)) <= 1e-12
    np.testing.assert_allclose(m[: size - 1, -1], 1.0, atol=1e-12)
    assert m[-1, -1] == pytest.approx(n, abs=1e-12)


def test_parity_range():
    for n in (1, 13):
        with pytest.raises(errors.OutOfRange):
            parity_family(n)
    with pytest.raises(errors.OutOfRange):
        parity_mi_matrix_closed_form(31)


def test_closed_form_matrix():
    np.testing.assert_array_equal(parity_mi_matrix_closed_form(2), XOR4_M)
    assert np.trace(parity_mi_matrix_closed_form(3)) == 10.0
    for n in (2, 5, 9):
        dense = parity_mi_matrix_closed_form(n)
        np.testing.assert_array_equal(parity_mi_matrix_closed_form(n, sparse=True).toarray(), dense)


def test_closed_form_eigen():
    lam, v = parity_min_eigen_closed_form(2)
    assert lam == pytest.approx(XOR4_LAMBDA, abs=1e-15)
    lam3, _ = parity_min_eigen_closed_form(3)
    assert lam3 == pytest.approx(2 - 2 * math.sqrt(2), abs=1e-12)
    lam10, _ = parity_min_eigen_closed_form(10)
    assert 0.5 < abs(lam10) / 2**5 < 1.0
    ratios = [abs(parity_min_eigen_closed_form(n)[0]) / 2 ** (n / 2) for n in range(6, 15)]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_closed_form_eigen_against_solver(n):
    lam, v = parity_min_eigen_closed_form(n)
    a = parity_mi_matrix_closed_form(n)
    assert np.linalg.norm(a @ v - lam * v) <= 1e-9 * np.linalg.norm(a)
    value, _ = min_eigenvalue(a)
    assert value == pytest.approx(lam, abs=1e-9)


def test_embed():
    d = embed_with_independent(example_xor4(), 1)
    m = mi_matrix(d)
    assert m.shape == (5, 5)
    assert min_eigenvalue(m)[0] == pytest.approx(XOR4_LAMBDA, abs=1e-9)
    assert embed_with_independent(sum_example(), 0) == sum_example()
    np.testing.assert_array_equal(mi_matrix(embed_with_independent(independent_uniform(3), 2)), np.eye(5))
    with pytest.raises(errors.OutOfRange):
        embed_with_independent(example_xor4(), -1)


def test_embed_eigenvalue_is_min_with_one():
    d = embed_with_independent(independent_uniform(2, 3), 2)
    # independent ternary variables have entropy log2(3) > 1, so the spectrum minimum is the bits' 1
    assert min_eigenvalue(mi_matrix(d))[0] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "name, shape",
    [("xor4", (2, 2, 2, 4)), ("sum4", (2, 2, 3, 4)), ("parity:3", (2,) * 7 + (8,)), ("independent:3", (2, 2, 2))],
)
def test_named_example(name, shape):
    assert named_example(name).shape == shape


@pytest.mark.parametrize("name", ["xor5", "parity", "parity:x", "independent:", "sum4:2"])
def test_named_example_errors(name):
    with pytest.raises(errors.OutOfRange):
        named_example(name)
