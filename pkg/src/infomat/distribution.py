"""Sparse joint distributions over finite alphabets.

A :class:`JointDistribution` stores only the outcomes with positive mass,
sorted lexicographically.  Every entropy in the package is computed from
this table, so zero-mass outcomes never reach a ``log``.

Probabilities are accumulated with :func:`math.fsum`, which is exactly
rounded and therefore independent of summation order.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateOutcome,
    EmptyVariableSet,
    IndexOutOfRange,
    NegativeProbability,
    OutcomeOutOfRange,
    ProbabilityNotNormalized,
    UnmappedOutcome,
)

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class JointDistribution:
    """Immutable sparse joint PMF of ``n`` discrete variables.

    Use :func:`new_joint` (or :meth:`from_dense`) to build one; the raw
    constructor trusts its arguments.
    """

    shape: tuple[int, ...]
    outcomes: tuple[tuple[int, ...], ...]
    probs: tuple[float, ...]
    names: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.shape)

    @property
    def support_size(self) -> int:
        return len(self.outcomes)

    def __iter__(self):
        return zip(self.outcomes, self.probs)

    def outcome_array(self) -> np.ndarray:
        return np.array(self.outcomes, dtype=np.int64).reshape(len(self.outcomes), self.n)

    def prob_array(self) -> np.ndarray:
        return np.array(self.probs, dtype=np.float64)

    def to_dense(self) -> np.ndarray:
        pmf = np.zeros(self.shape)
        for o, p in self:
            pmf[o] = p
        return pmf

    @classmethod
    def from_dense(cls, pmf, threshold=0.0, names=None) -> JointDistribution:
        """Build from a dense array, keeping entries strictly above ``threshold``.

        Surviving masses are renormalized so dropped dust does not upset
        the normalization check.
        """
        pmf = np.asarray(pmf, dtype=np.float64)
        if np.any(pmf < 0):
            raise NegativeProbability("dense pmf has negative entries")
        flat = pmf.ravel()
        keep = np.flatnonzero(flat > threshold)
        masses = flat[keep].tolist()
        total = math.fsum(masses)
        if total <= 0:
            raise ProbabilityNotNormalized(total)
        outcomes = [tuple(int(v) for v in o) for o in zip(*np.unravel_index(keep, pmf.shape))]
        return new_joint(pmf.shape, [(o, m / total) for o, m in zip(outcomes, masses)], names=names)


def new_joint(shape: Sequence[int], entries: Iterable, names: Sequence[str] | None = None) -> JointDistribution:
    """Validate and canonicalize ``entries`` of ``(outcome, p)`` pairs."""
    shape = tuple(int(s) for s in shape)
    if any(s < 1 for s in shape):
        raise OutcomeOutOfRange(f"alphabet sizes must be positive, got {shape}")
    if names is not None:
        names = tuple(str(x) for x in names)
        if len(names) != len(shape):
            raise OutcomeOutOfRange(f"{len(names)} names for {len(shape)} variables")

    table: dict[tuple[int, ...], float] = {}
    seen_any = False
    for outcome, p in entries:
        seen_any = True
        if isinstance(outcome, (int, np.integer)):
            outcome = (outcome,)
        outcome = tuple(int(v) for v in outcome)
        p = float(p)
        if len(outcome) != len(shape):
            raise OutcomeOutOfRange(f"outcome {outcome} does not have {len(shape)} coordinates")
        if any(not 0 <= v < s for v, s in zip(outcome, shape)):
            raise OutcomeOutOfRange(f"outcome {outcome} outside alphabet sizes {shape}")
        if not math.isfinite(p):
            raise ProbabilityNotNormalized(p)
        if p < 0:
            raise NegativeProbability(f"outcome {outcome} has probability {p!r}")
        if outcome in table:
            raise DuplicateOutcome(f"outcome {outcome} listed twice")
        table[outcome] = p
    if not seen_any:
        raise ProbabilityNotNormalized(0.0)

    outcomes = sorted(o for o, p in table.items() if p > 0)
    probs = [table[o] for o in outcomes]
    total = math.fsum(probs)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ProbabilityNotNormalized(total)
    return JointDistribution(shape, tuple(outcomes), tuple(probs), names)


def variable_indices(dist: JointDistribution, s: Iterable[int]) -> tuple[int, ...]:
    """Normalize a variable subset to a sorted tuple of distinct 0-based indices."""
    if isinstance(s, (int, np.integer)):
        s = (s,)
    idx = tuple(sorted({int(i) for i in s}))
    if not idx:
        raise EmptyVariableSet("variable set is empty")
    if idx[0] < 0 or idx[-1] >= dist.n:
        raise IndexOutOfRange(f"variable indices {idx} outside 0..{dist.n - 1}")
    return idx


def mask_to_indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def grouped_masses(dist: JointDistribution, idx: Sequence[int]) -> dict[tuple[int, ...], float]:
    """Marginal masses on ``idx`` keyed by projected outcome (unsorted)."""
    groups: dict[tuple[int, ...], list[float]] = {}
    for o, p in zip(dist.outcomes, dist.probs):
        key = tuple(o[i] for i in idx)
        bucket = groups.get(key)
        if bucket is None:
            groups[key] = [p]
        else:
            bucket.append(p)
    return {k: v[0] if len(v) == 1 else math.fsum(v) for k, v in groups.items()}


def marginal(dist: JointDistribution, s: Iterable[int]) -> JointDistribution:
    """Project ``dist`` onto the variables in ``s`` (kept in ascending order)."""
    idx = variable_indices(dist, s)
    if idx == tuple(range(dist.n)):
        return dist
    masses = grouped_masses(dist, idx)
    outcomes = sorted(masses)
    names = None if dist.names is None else tuple(dist.names[i] for i in idx)
    return JointDistribution(
        tuple(dist.shape[i] for i in idx), tuple(outcomes), tuple(masses[o] for o in outcomes), names
    )


def permute(dist: JointDistribution, order: Sequence[int]) -> JointDistribution:
    """Reorder variables so that new variable ``k`` is old variable ``order[k]``."""
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(dist.n)):
        raise IndexOutOfRange(f"{order} is not a permutation of 0..{dist.n - 1}")
    names = None if dist.names is None else [dist.names[i] for i in order]
    entries = [(tuple(o[i] for i in order), p) for o, p in dist]
    return new_joint([dist.shape[i] for i in order], entries, names=names)


@dataclass(frozen=True)
class DerivedVariableMap:
    """Deterministic function from outcomes of a distribution to ``0..alphabet_size-1``.

    ``table`` is either a mapping from outcome tuples to values (it must
    cover the support) or a dense row-major sequence over every outcome of
    the source shape.
    """

    alphabet_size: int
    table: Mapping[tuple[int, ...], int] | Sequence[int]

    @classmethod
    def from_function(cls, dist: JointDistribution, alphabet_size: int, fn: Callable) -> DerivedVariableMap:
        return cls(alphabet_size, {o: int(fn(*o)) for o in dist.outcomes})

    def image(self, outcome: tuple[int, ...], shape: tuple[int, ...]) -> int:
        if isinstance(self.table, Mapping):
            if outcome not in self.table:
                raise UnmappedOutcome(f"outcome {outcome} has no image")
            value = self.table[outcome]
        else:
            flat = int(np.ravel_multi_index(outcome, shape))
            if flat >= len(self.table):
                raise UnmappedOutcome(f"dense table too short for outcome {outcome}")
            value = self.table[flat]
        value = int(value)
        if not 0 <= value < self.alphabet_size:
            raise OutcomeOutOfRange(f"image {value} of {outcome} outside 0..{self.alphabet_size - 1}")
        return value


def extend_with_derived(dist: JointDistribution, dmap: DerivedVariableMap, name: str | None = None) -> JointDistribution:
    """Append the variable ``dmap(X_1, ..., X_n)``; support size is unchanged."""
    if dmap.alphabet_size < 1:
        raise OutcomeOutOfRange("derived alphabet size must be positive")
    outcomes = tuple(o + (dmap.image(o, dist.shape),) for o in dist.outcomes)
    names = None
    if dist.names is not None:
        names = dist.names + (name if name is not None else f"X{dist.n + 1}",)
    # appending a coordinate keeps lexicographic order since prefixes are unique
    return JointDistribution(dist.shape + (dmap.alphabet_size,), outcomes, dist.probs, names)


def product(d1: JointDistribution, d2: JointDistribution) -> JointDistribution:
    """Joint distribution of independent ``d1`` and ``d2`` (variables concatenated)."""
    names = None
    if d1.names is not None and d2.names is not None:
        names = d1.names + d2.names
    outcomes = []
    probs = []
    for (o1, p1), (o2, p2) in itertools.product(d1, d2):
        p = p1 * p2
        if p > 0:
            outcomes.append(o1 + o2)
            probs.append(p)
    return JointDistribution(d1.shape + d2.shape, tuple(outcomes), tuple(probs), names)
