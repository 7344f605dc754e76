"""Entropies, mutual informations, I-measure atoms and the MI matrix.

All quantities are in bits.  Subset entropies are exactly-rounded sums
(:func:`math.fsum`) of ``-p log2 p`` over the marginal masses, so the
value of ``H(X_S)`` does not depend on how the variables are ordered.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .distribution import JointDistribution, grouped_masses, mask_to_indices, variable_indices
from .errors import IndexOutOfRange, IndicesNotDistinct, TooManyVariables, WrongArity

ATOM_LIMIT = 10
IDENTITY_TOL = 1e-12
INEQUALITY_TOL = 1e-9


def _entropy_of_masses(masses: Iterable[float]) -> float:
    h = -math.fsum(p * math.log2(p) for p in masses)
    return h if h > 0 else 0.0


def subset_entropy(dist: JointDistribution, s: Iterable[int]) -> float:
    """Joint entropy ``H(X_S)`` of the variables indexed by ``s`` (0-based)."""
    idx = variable_indices(dist, s)
    return _entropy_of_masses(grouped_masses(dist, idx).values())


def _check_index(dist, *indices):
    for i in indices:
        if not 0 <= i < dist.n:
            raise IndexOutOfRange(f"variable index {i} outside 0..{dist.n - 1}")


def _check_distinct(*indices):
    if len(set(indices)) != len(indices):
        raise IndicesNotDistinct(f"indices {indices} are not distinct")


def mutual_information(dist: JointDistribution, i: int, j: int) -> float:
    """``I(X_i; X_j) = H(X_i) + H(X_j) - H(X_i, X_j)``; equals ``H(X_i)`` when ``i == j``."""
    _check_index(dist, i, j)
    if i == j:
        return subset_entropy(dist, (i,))
    i, j = min(i, j), max(i, j)
    return subset_entropy(dist, (i,)) + subset_entropy(dist, (j,)) - subset_entropy(dist, (i, j))


def mi_matrix(dist: JointDistribution) -> np.ndarray:
    """Symmetric matrix of pairwise mutual informations, entropies on the diagonal."""
    n = dist.n
    h = [subset_entropy(dist, (i,)) for i in range(n)]
    m = np.diag(np.array(h, dtype=np.float64)).reshape(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = h[i] + h[j] - subset_entropy(dist, (i, j))
    return m


def conditional_mi(dist: JointDistribution, i: int, j: int, k: int) -> float:
    """``I(X_i; X_j | X_k)``."""
    _check_index(dist, i, j, k)
    _check_distinct(i, j, k)
    return (
        subset_entropy(dist, (i, k))
        + subset_entropy(dist, (j, k))
        - subset_entropy(dist, (k,))
        - subset_entropy(dist, (i, j, k))
    )


def triple_information(dist: JointDistribution, i: int, j: int, k: int) -> float:
    """``I(X_i; X_j; X_k) = I(X_i; X_j) - I(X_i; X_j | X_k)``; may be negative."""
    _check_distinct(i, j, k)
    return mutual_information(dist, i, j) - conditional_mi(dist, i, j, k)


def all_subset_entropies(dist: JointDistribution) -> list[float]:
    """Entropies indexed by bitmask; entry 0 is the empty set (0 bits)."""
    out = [0.0] * (1 << dist.n)
    for mask in range(1, 1 << dist.n):
        out[mask] = _entropy_of_masses(grouped_masses(dist, mask_to_indices(mask)).values())
    return out


def _mask_of(subset) -> int:
    if isinstance(subset, (int, np.integer)):
        return int(subset)
    mask = 0
    for i in subset:
        mask |= 1 << int(i)
    return mask


@dataclass(frozen=True)
class AtomTable:
    """Signed I-measure of every information-diagram atom.

    ``values[mask]`` is the measure of the region inside ``X_i`` for the
    bits ``i`` set in ``mask`` and outside all other variables.
    """

    n: int
    values: dict[int, float] = field(repr=False)

    def __getitem__(self, subset) -> float:
        return self.values[_mask_of(subset)]

    def union_measure(self, subset) -> float:
        """Sum of atoms meeting ``subset``; equals ``H(X_subset)``."""
        u = _mask_of(subset)
        return math.fsum(v for t, v in self.values.items() if t & u)

    def max_reconstruction_error(self, entropies: list[float]) -> float:
        return max(abs(self.union_measure(u) - entropies[u]) for u in range(1, 1 << self.n))


def i_measure_atoms(dist: JointDistribution, max_vars: int = ATOM_LIMIT) -> AtomTable:
    """Atoms of the information diagram by Moebius inversion of subset entropies.

    For atom ``T`` with complement ``C``::

        mu(T) = sum over W subset of T of (-1)^(|W|+1) H(X_{W u C})

    with ``H`` of the empty set taken as 0.
    """
    n = dist.n
    if n > max_vars:
        raise TooManyVariables(f"{n} variables exceeds the atom limit {max_vars}")
    h = all_subset_entropies(dist)
    full = (1 << n) - 1
    values = {}
    for t in range(1, full + 1):
        comp = full ^ t
        terms = []
        w = t
        while True:
            sign = 1.0 if bin(w).count("1") % 2 else -1.0
            terms.append(sign * h[w | comp])
            if w == 0:
                break
            w = (w - 1) & t
        values[t] = math.fsum(terms)
    return AtomTable(n, values)


def subset_matrix(n: int, subset) -> np.ndarray:
    """0/1 matrix with ones exactly on ``S x S``."""
    e = np.zeros((n, n))
    idx = list(mask_to_indices(_mask_of(subset)))
    e[np.ix_(idx, idx)] = 1.0
    return e


# coefficient name -> variables whose overlap region carries it
THREE_VAR_REGIONS = {
    "b1": (0,), "b2": (0, 1), "b3": (1,), "b4": (2,),
    "b5": (0, 2), "b6": (1, 2), "b7": (0, 1, 2),
}


@dataclass(frozen=True)
class ThreeVarDecomposition:
    """Nonnegative split ``M = a I + sum_k b_k E_{S_k}`` of a 3-variable MI matrix.

    ``clamped`` is the largest magnitude of a slightly negative coefficient
    that was rounded up to zero.
    """

    a: float
    b: tuple[float, float, float, float, float, float, float]
    clamped: float = 0.0

    def coefficients(self) -> dict[str, float]:
        return {"a": self.a, **{f"b{k + 1}": v for k, v in enumerate(self.b)}}

    def matrix(self) -> np.ndarray:
        m = self.a * np.eye(3)
        for bk, region in zip(self.b, THREE_VAR_REGIONS.values()):
            m = m + bk * subset_matrix(3, region)
        return m

    def min_coefficient(self) -> float:
        return min(self.a, *self.b)


def three_var_decomposition(dist: JointDistribution, tol: float = IDENTITY_TOL) -> ThreeVarDecomposition:
    """Split the atoms of three variables into the nonnegative coefficients of a PSD sum.

    The centre atom ``t`` becomes ``a = max(0, -t)`` or ``b7 = max(0, t)``;
    pairwise atoms are ``a + b_k`` and singleton atoms are ``b_k``.
    """
    if dist.n != 3:
        raise WrongArity(f"expected 3 variables, got {dist.n}")
    atoms = i_measure_atoms(dist)
    t = atoms[7]
    a = max(0.0, -t)
    raw = {
        "b1": atoms[0b001], "b3": atoms[0b010], "b4": atoms[0b100],
        "b2": atoms[0b011] - a, "b5": atoms[0b101] - a, "b6": atoms[0b110] - a,
        "b7": max(0.0, t),
    }
    clamped = 0.0
    b = []
    for name in THREE_VAR_REGIONS:
        v = raw[name]
        if -tol <= v < 0:
            clamped = max(clamped, -v)
            v = 0.0
        b.append(v)
    return ThreeVarDecomposition(a, tuple(b), clamped)


@dataclass(frozen=True)
class Certificate:
    decomposition: ThreeVarDecomposition
    reconstruction: np.ndarray
    error: float


def psd_certificate_3(dist: JointDistribution) -> Certificate:
    """Constructive PSD proof for a 3-variable MI matrix, with its reconstruction error."""
    dec = three_var_decomposition(dist)
    recon = dec.matrix()
    err = float(np.max(np.abs(recon - mi_matrix(dist))))
    return Certificate(dec, recon, err)
