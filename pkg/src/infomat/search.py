"""Stochastic exploration of the smallest MI-matrix eigenvalue.

Distributions are parameterized by unconstrained logits over the full
dense outcome space and mapped onto the simplex by softmax.  The search is
simulated annealing with Gaussian proposals, Metropolis acceptance and
geometric cooling.

Random streams are numpy ``PCG64`` generators.  Restart ``r`` of a search
with seed ``s`` draws from ``PCG64(SeedSequence(s, spawn_key=(r,)))``, so
restarts can run in any order or in parallel with identical results.
The three-variable verifier uses ``PCG64(SeedSequence(seed))`` directly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .distribution import JointDistribution
from .errors import InfomatError, InvalidSampleCount, NoConvergence, ShapeMismatch
from .info import INEQUALITY_TOL, IDENTITY_TOL, mi_matrix, psd_certificate_3
from .linalg import min_eigenvalue

DUST = 1e-15


def softmax_pmf(params, shape) -> np.ndarray:
    """Dense PMF of the given shape from logits.

    The normalizer is an exactly-rounded sum, so permuting ``params``
    permutes the output exactly.
    """
    shape = tuple(int(s) for s in shape)
    params = np.asarray(params, dtype=np.float64).ravel()
    if params.size != math.prod(shape):
        raise ShapeMismatch(f"{params.size} parameters for outcome space of size {math.prod(shape)}")
    w = np.exp(params - np.max(params))
    return (w / math.fsum(w.tolist())).reshape(shape)


def objective(params, shape) -> tuple[float, JointDistribution]:
    """Smallest eigenvalue of the MI matrix of ``softmax(params)``, and that distribution."""
    dist = JointDistribution.from_dense(softmax_pmf(params, shape), threshold=DUST)
    lam, _ = min_eigenvalue(mi_matrix(dist))
    return lam, dist


def logits_from_pmf(pmf, floor: float = -40.0) -> np.ndarray:
    """Logits reproducing ``pmf``; zero cells get ``floor`` relative to the largest logit."""
    pmf = np.asarray(pmf, dtype=np.float64)
    with np.errstate(divide="ignore"):
        logits = np.log(pmf)
    top = np.max(logits)
    return np.maximum(logits, top + floor).ravel()


@dataclass(frozen=True)
class SearchConfig:
    shape: tuple[int, ...]
    seed: int = 0
    iterations: int = 10_000
    restarts: int = 1
    step_sigma: float = 0.3
    temperature: float = 0.02
    decay: float = 0.9995
    init_logits: tuple[float, ...] | None = None
    init_sigma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(int(s) for s in self.shape))
        if self.init_logits is not None:
            object.__setattr__(self, "init_logits", tuple(float(x) for x in np.ravel(self.init_logits)))
        if not self.shape or any(s < 1 for s in self.shape):
            raise InfomatError(f"invalid shape {self.shape}")
        if self.iterations < 1 or self.restarts < 1:
            raise InfomatError("iterations and restarts must be at least 1")
        if not self.step_sigma > 0:
            raise InfomatError("step_sigma must be positive")
        if not 0 < self.decay <= 1:
            raise InfomatError("decay must lie in (0, 1]")
        if self.temperature < 0 or self.init_sigma < 0:
            raise InfomatError("temperature and init_sigma must be non-negative")
        if self.init_logits is not None and len(self.init_logits) != math.prod(self.shape):
            raise ShapeMismatch(f"init_logits has {len(self.init_logits)} entries, expected {math.prod(self.shape)}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["shape"] = list(self.shape)
        d["init_logits"] = None if self.init_logits is None else list(self.init_logits)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> SearchConfig:
        return cls(**d)


@dataclass(frozen=True)
class RestartResult:
    restart: int
    best_lambda_min: float
    best_distribution: JointDistribution
    trace: list[tuple[int, float]]
    accepted: int
    rejected_no_convergence: int


@dataclass(frozen=True)
class SearchResult:
    best_lambda_min: float
    best_distribution: JointDistribution
    trace: list[tuple[int, float]]
    config: SearchConfig
    best_restart: int
    restarts: list[RestartResult] = field(repr=False)

    @property
    def rejected_no_convergence(self) -> int:
        return sum(r.rejected_no_convergence for r in self.restarts)


def _is_checkpoint(k: int, last: int) -> bool:
    # 0, 1, 2, 4, 8, ... and the final iteration
    return k == last or (k & (k - 1)) == 0


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(restart,))))


def run_restart(config: SearchConfig, restart: int) -> RestartResult:
    """One annealing chain; iteration 0 is the starting point."""
    rng = restart_rng(config.seed, restart)
    size = math.prod(config.shape)
    if config.init_logits is not None:
        x = np.array(config.init_logits) + config.init_sigma * rng.standard_normal(size)
    else:
        x = config.init_sigma * rng.standard_normal(size)

    rejected = 0
    try:
        value, dist = objective(x, config.shape)
    except NoConvergence:
        value, dist = math.inf, None
        rejected += 1
    best, best_dist = value, dist
    trace = [(0, best)]
    accepted = 0
    temp = config.temperature
    for k in range(1, config.iterations + 1):
        proposal = x + config.step_sigma * rng.standard_normal(size)
        u = rng.random()
        try:
            cand, cand_dist = objective(proposal, config.shape)
        except NoConvergence:
            rejected += 1
        else:
            delta = cand - value
            if delta <= 0 or (temp > 0 and u < math.exp(-delta / temp)):
                x, value = proposal, cand
                accepted += 1
                if cand < best:
                    best, best_dist = cand, cand_dist
        temp *= config.decay
        if _is_checkpoint(k, config.iterations):
            trace.append((k, best))
    if best_dist is None:
        raise NoConvergence(math.inf, 0)
    return RestartResult(restart, best, best_dist, trace, accepted, rejected)


def search_min_eigen(config: SearchConfig, jobs: int = 1) -> SearchResult:
    """Best-of-restarts annealing; ties go to the lowest restart index."""
    if jobs > 1 and config.restarts > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_restart, [config] * config.restarts, range(config.restarts)))
    else:
        results = [run_restart(config, r) for r in range(config.restarts)]
    winner = min(results, key=lambda r: (r.best_lambda_min, r.restart))
    return SearchResult(
        winner.best_lambda_min, winner.best_distribution, winner.trace, config, winner.restart, results
    )


@dataclass
class VerificationReport:
    samples: int
    violations: int = 0
    worst_lambda_min: float = math.inf
    worst_certificate_error: float = 0.0
    min_coefficient: float = math.inf
    certificates_checked: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def random_three_var(rng: np.random.Generator, max_alphabet: int) -> JointDistribution:
    """Uniform-Dirichlet PMF on a random 3-variable outcome space (alphabets 2..max_alphabet)."""
    shape = tuple(int(s) for s in rng.integers(2, max_alphabet + 1, size=3))
    w = rng.gamma(1.0, size=math.prod(shape))
    return JointDistribution.from_dense(w.reshape(shape))


def verify_three_var_conjecture(
    samples: int,
    max_alphabet: int = 4,
    seed: int = 0,
    instances=None,
    tol: float = INEQUALITY_TOL,
    coefficient_tol: float = IDENTITY_TOL,
) -> VerificationReport:
    """Check PSD-ness and the constructive certificate on random 3-variable distributions.

    ``instances`` replaces the random draws with the given distributions.
    A sample is a violation if its smallest eigenvalue is below ``-tol``,
    its certificate misses the MI matrix by more than ``tol``, or a
    certificate coefficient is below ``-coefficient_tol``.
    """
    if instances is not None:
        instances = list(instances)
        samples = len(instances)
    if samples < 1:
        raise InvalidSampleCount(f"samples must be at least 1, got {samples}")
    if max_alphabet < 2:
        raise InfomatError("max_alphabet must be at least 2")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    report = VerificationReport(samples)
    for k in range(samples):
        dist = instances[k] if instances is not None else random_three_var(rng, max_alphabet)
        lam, _ = min_eigenvalue(mi_matrix(dist))
        cert = psd_certificate_3(dist)
        coef = cert.decomposition.min_coefficient()
        report.certificates_checked += 1
        report.worst_lambda_min = min(report.worst_lambda_min, lam)
        report.worst_certificate_error = max(report.worst_certificate_error, cert.error)
        report.min_coefficient = min(report.min_coefficient, coef)
        if lam < -tol or cert.error > tol or coef < -coefficient_tol:
            report.violations += 1
    return report
