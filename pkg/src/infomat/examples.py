"""Known constructions whose MI matrices are not positive semi-definite.

Each constructor returns a :class:`~infomat.distribution.JointDistribution`;
the parity family also has closed forms for its MI matrix and its most
negative eigenpair, which serve as oracles for the numerical path.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse

from .distribution import (
    DerivedVariableMap,
    JointDistribution,
    extend_with_derived,
    new_joint,
    product,
)
from .errors import OutOfRange

PARITY_FAMILY_LIMIT = 12
PARITY_CLOSED_FORM_LIMIT = 30


def independent_uniform(n: int, k: int = 2) -> JointDistribution:
    """``n`` independent variables, each uniform on ``0..k-1``."""
    if n < 1 or k < 1:
        raise OutOfRange(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    pmf = np.full((k,) * n, 1.0 / k**n)
    return JointDistribution.from_dense(pmf, names=[f"X{i + 1}" for i in range(n)])


def fair_bits(n: int = 2) -> JointDistribution:
    return independent_uniform(n, 2)


def example_xor4() -> JointDistribution:
    """``(X1, X2, X1 xor X2, (X1, X2))`` for independent fair bits; tuple coded as ``2*X1 + X2``."""
    d = fair_bits(2)
    d = extend_with_derived(d, DerivedVariableMap.from_function(d, 2, lambda x1, x2: x1 ^ x2), "X3")
    return extend_with_derived(d, DerivedVariableMap.from_function(d, 4, lambda x1, x2, _: 2 * x1 + x2), "X4")


def xor_triple() -> JointDistribution:
    d = fair_bits(2)
    return extend_with_derived(d, DerivedVariableMap.from_function(d, 2, lambda x1, x2: x1 ^ x2), "X3")


def sum_example() -> JointDistribution:
    """Like :func:`example_xor4` but with the integer sum ``X1 + X2`` in place of xor."""
    d = fair_bits(2)
    d = extend_with_derived(d, DerivedVariableMap.from_function(d, 3, lambda x1, x2: x1 + x2), "X3")
    return extend_with_derived(d, DerivedVariableMap.from_function(d, 4, lambda x1, x2, _: 2 * x1 + x2), "X4")


def parity_family(n: int) -> JointDistribution:
    """All parities ``Y_S`` of ``n`` fair bits plus the tuple of the bits.

    Variables are ordered by the bitmask of ``S`` (bit ``i - 1`` selects
    ``X_i``), then the tuple variable, coded as ``sum x_i 2^(n-i)``.
    """
    if not 2 <= n <= PARITY_FAMILY_LIMIT:
        raise OutOfRange(f"parity family needs 2 <= n <= {PARITY_FAMILY_LIMIT}, got {n}")
    size = 1 << n
    code = np.arange(size)
    # bits[x, i] = value of X_{i+1} in base outcome x, X_1 most significant
    bits = (code[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    masks = np.arange(1, size)
    selected = (masks[:, None] >> np.arange(n)[None, :]) & 1
    parities = (bits @ selected.T) % 2
    table = np.concatenate([parities, code[:, None]], axis=1)
    names = [f"Y{{{','.join(str(i + 1) for i in range(n) if m >> i & 1)}}}" for m in masks] + ["X"]
    entries = zip(map(tuple, table.tolist()), [1.0 / size] * size)
    return new_joint([2] * (size - 1) + [size], entries, names=names)


def parity_mi_matrix_closed_form(n: int, sparse: bool = False):
    """Identity of size ``2^n - 1`` bordered by a row and column of ones, corner ``n``.

    With ``sparse=True`` a CSR matrix is returned, which is the only
    practical option beyond ``n`` of about 13.
    """
    if not 2 <= n <= PARITY_CLOSED_FORM_LIMIT:
        raise OutOfRange(f"closed form needs 2 <= n <= {PARITY_CLOSED_FORM_LIMIT}, got {n}")
    size = 1 << n
    last = size - 1
    if not sparse:
        m = np.eye(size)
        m[last, :] = 1.0
        m[:, last] = 1.0
        m[last, last] = float(n)
        return m
    k = np.arange(last)
    rows = np.concatenate([k, k, np.full(last, last), [last]])
    cols = np.concatenate([k, np.full(last, last), k, [last]])
    data = np.concatenate([np.ones(3 * last), [float(n)]])
    return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(size, size))


def parity_min_eigen_closed_form(n: int) -> tuple[float, np.ndarray]:
    """Most negative eigenvalue of the parity MI matrix and its unit eigenvector.

    The unnormalized eigenvector is ``(1, ..., 1, x_n)`` with
    ``x_n = lambda - 1``.
    """
    if n < 2:
        raise OutOfRange(f"need n >= 2, got {n}")
    root = math.sqrt((n - 1) ** 2 + 4 * (2**n - 1))
    lam = (n + 1 - root) / 2
    x_n = (n - 1 - root) / 2
    v = np.ones(1 << n)
    v[-1] = x_n
    return lam, v / np.linalg.norm(v)


def embed_with_independent(dist: JointDistribution, m: int) -> JointDistribution:
    """Append ``m`` fair bits independent of ``dist`` and of each other."""
    if m < 0:
        raise OutOfRange(f"m must be non-negative, got {m}")
    if m == 0:
        return dist
    extra = fair_bits(m)
    if dist.names is not None:
        extra = JointDistribution(extra.shape, extra.outcomes, extra.probs,
                                  tuple(f"Z{i + 1}" for i in range(m)))
    return product(dist, extra)


def named_example(spec: str) -> JointDistribution:
    """Resolve ``xor4``, ``sum4``, ``parity:<n>`` or ``independent:<n>``."""
    name, _, arg = spec.partition(":")
    if name == "xor4" and not arg:
        return example_xor4()
    if name == "sum4" and not arg:
        return sum_example()
    if name in ("parity", "independent") and arg:
        try:
            k = int(arg)
        except ValueError:
            raise OutOfRange(f"bad count in example name {spec!r}") from None
        return parity_family(k) if name == "parity" else independent_uniform(k)
    raise OutOfRange(f"unknown example {spec!r}; expected xor4, sum4, parity:<n> or independent:<n>")
