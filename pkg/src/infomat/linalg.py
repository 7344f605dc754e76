"""Symmetric eigendecomposition by cyclic Jacobi rotations, and PSD testing.

Each sweep visits every off-diagonal pair once in round-robin
("tournament") order.  Pairs within one round are disjoint, so their
rotations commute and are applied together as vectorized column and row
updates.  The schedule is fixed, so results are bit-identical run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence

SYMMETRY_TOL = 1e-12
OFF_DIAGONAL_TOL = 1e-13
MAX_SWEEPS = 64
SCALAR_LIMIT = 8


def sym_matrix(a) -> np.ndarray:
    """Validate a square, nearly symmetric matrix and return ``(A + A^T) / 2``."""
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a))))
    asym = float(np.max(np.abs(a - a.T)))
    if asym > SYMMETRY_TOL * scale:
        raise ValueError(f"matrix is not symmetric (max |A - A^T| = {asym:.3e})")
    return (a + a.T) / 2


def round_robin_pairs(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs ``(p, q)`` with ``p < q`` covering all pairs once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            i, j = players[k], players[m - 1 - k]
            if i < n and j < n:
                pairs.append((min(i, j), max(i, j)))
        pairs.sort()
        if pairs:
            p, q = zip(*pairs)
            rounds.append((np.array(p), np.array(q)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _rotation(app, aqq, apq):
    theta = (aqq - app) / (2.0 * apq)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.hypot(theta, 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c


def _sweep_scalar(work, v, rounds, target, max_sweeps):
    # plain lists: numpy call overhead dominates for tiny matrices
    n = work.shape[0]
    a = work.tolist()
    vv = v.tolist()
    pairs = [(int(p), int(q)) for ps, qs in rounds for p, q in zip(ps, qs)]
    sweeps = 0
    while True:
        off = math.sqrt(math.fsum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= target:
            break
        if sweeps == max_sweeps:
            raise NoConvergence(off, sweeps)
        for p, q in pairs:
            apq = a[p][q]
            if apq == 0.0:
                continue
            c, s = _rotation(a[p][p], a[q][q], apq)
            for row in a:
                xp, xq = row[p], row[q]
                row[p], row[q] = c * xp - s * xq, s * xp + c * xq
            rp, rq = a[p], a[q]
            a[p] = [c * x - s * y for x, y in zip(rp, rq)]
            a[q] = [s * x + c * y for x, y in zip(rp, rq)]
            a[p][q] = a[q][p] = 0.0
            for row in vv:
                xp, xq = row[p], row[q]
                row[p], row[q] = c * xp - s * xq, s * xp + c * xq
        sweeps += 1
    return np.array(a), np.array(vv), sweeps


def _sweep_vectorized(work, v, rounds, target, max_sweeps):
    sweeps = 0
    off = np.linalg.norm(work - np.diag(np.diag(work)))
    while off > target:
        if sweeps == max_sweeps:
            raise NoConvergence(float(off), sweeps)
        for p, q in rounds:
            apq = work[p, q]
            active = apq != 0
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (work[q, q] - work[p, p]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            cp, cq = work[:, p], work[:, q]
            work[:, p], work[:, q] = c * cp - s * cq, s * cp + c * cq
            rp, rq = work[p, :], work[q, :]
            work[p, :], work[q, :] = c[:, None] * rp - s[:, None] * rq, s[:, None] * rp + c[:, None] * rq
            work[p, q] = 0.0
            work[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
        sweeps += 1
        off = np.linalg.norm(work - np.diag(np.diag(work)))
    return work, v, sweeps


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray
    vectors: np.ndarray
    residual: float
    sweeps: int


def eigen_sym(a, tol: float = OFF_DIAGONAL_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenResult:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a symmetric matrix.

    Sweeps stop once the off-diagonal Frobenius norm is at most
    ``tol * ||A||_F``.  Eigenvector signs are fixed so the largest-magnitude
    component is positive.
    """
    a0 = sym_matrix(a)
    n = a0.shape[0]
    work = a0.copy()
    v = np.eye(n)
    target = tol * float(np.linalg.norm(a0))
    rounds = round_robin_pairs(n)

    if n <= SCALAR_LIMIT:
        work, v, sweeps = _sweep_scalar(work, v, rounds, target, max_sweeps)
    else:
        work, v, sweeps = _sweep_vectorized(work, v, rounds, target, max_sweeps)

    values = np.diag(work).copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    v = v[:, order]
    lead = np.argmax(np.abs(v), axis=0)
    v = v * np.where(v[lead, np.arange(n)] < 0, -1.0, 1.0)
    residual = float(np.max(np.linalg.norm(a0 @ v - v * values, axis=0)))
    return EigenResult(values, v, residual, sweeps)


def min_eigenvalue(a) -> tuple[float, np.ndarray]:
    res = eigen_sym(a)
    return float(res.values[0]), res.vectors[:, 0].copy()


def default_psd_tol(a, base: float = 1e-9) -> float:
    return base * max(1.0, float(np.max(np.abs(np.asarray(a, dtype=np.float64)))))


@dataclass(frozen=True)
class PSDVerdict:
    """Outcome of :func:`is_psd`.

    When not PSD, ``value``/``vector`` form the violating eigenpair and
    ``quadratic_form`` is ``v^T A v`` recomputed directly from ``A``.
    """

    psd: bool
    value: float
    vector: np.ndarray
    quadratic_form: float
    tol: float

    def __bool__(self) -> bool:
        return self.psd


def is_psd(a, tol: float | None = None) -> PSDVerdict:
    a = sym_matrix(a)
    if tol is None:
        tol = default_psd_tol(a)
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    value, vec = min_eigenvalue(a)
    quad = float(vec @ a @ vec)
    return PSDVerdict(value >= -tol, value, vec, quad, tol)
