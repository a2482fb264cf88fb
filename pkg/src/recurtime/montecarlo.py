"""Eigenangle samplers and first-return-time experiments.

CUE eigenangles are drawn by Metropolis-within-Gibbs on the joint density
prod_{i<j} |e^{i theta_i} - e^{i theta_j}|^2; i.i.d. uniform angles serve as
the independent baseline.  Random numbers are always generated here with
numpy and handed to the kernels, so the compiled and pure-Python backends
consume identical streams and return identical results.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.stats

from ._backend import kernels as _default_kernels
from ._math import check_eps, check_size
from .errors import DomainError, TooFewSamples

CUE = "cue"
IID = "iid"


@dataclass(frozen=True)
class MCMCParams:
    """Random-walk Metropolis settings; ``sigma=None`` means pi / sqrt(n)."""

    sigma: float | None = None
    burn_in_per_n: int = 2000
    thin_per_n: int = 20
    block: int = 256

    def step(self, n):
        return self.sigma if self.sigma is not None else math.pi / math.sqrt(n)


@dataclass(frozen=True)
class AngleSample:
    thetas: np.ndarray
    model: str
    seed: int | None = None
    index: int = 0
    acceptance: float | None = None

    def __post_init__(self):
        self.thetas.setflags(write=False)

    @property
    def n(self):
        return self.thetas.shape[0]


@dataclass(frozen=True)
class FirstReturnRecord:
    tau: float
    normalized: float
    candidates_checked: int
    horizon_hit: bool


@dataclass(frozen=True)
class ExpFit:
    lambda_hat: float
    n_samples: int
    ks_statistic: float
    ks_p_value: float
    n_censored: int = 0


# ---------------------------------------------------------------- samplers

def sample_iid(n: int, seed=None, index: int = 0) -> AngleSample:
    """n independent uniform angles on [-pi, pi)."""
    n = check_size(n)
    rng = np.random.default_rng(seed)
    return AngleSample(rng.uniform(-math.pi, math.pi, n), IID, _seed_int(seed), index)


def iid_samples(n: int, count: int, seed=None) -> list[AngleSample]:
    """``count`` i.i.d. samples, one spawned RNG stream per replication."""
    n = check_size(n)
    streams = np.random.SeedSequence(seed).spawn(count)
    return [sample_iid(n, s, i) for i, s in enumerate(streams)]


def _seed_int(seed):
    return seed if isinstance(seed, (int, np.integer)) else None


class _Chain:
    """One Metropolis chain over n eigenangles."""

    def __init__(self, n, seed, params, kernels):
        self.n = n
        self.params = params
        self.sigma = params.step(n)
        self.rng = np.random.default_rng(seed)
        self.kern = kernels
        self.theta = self.rng.uniform(-math.pi, math.pi, n)
        self.accepted = 0
        self.proposed = 0

    def run(self, sweeps):
        while sweeps > 0:
            m = min(sweeps, self.params.block)
            steps = self.sigma * self.rng.standard_normal((m, self.n))
            log_u = np.log(self.rng.random((m, self.n)))
            self.accepted += self.kern.mcmc_sweeps(self.theta, steps, log_u)
            self.proposed += m * self.n
            sweeps -= m

    @property
    def acceptance(self):
        return self.accepted / self.proposed if self.proposed else float("nan")


def cue_chain(n: int, count: int, seed=None, params: MCMCParams = MCMCParams(),
              kernels=None) -> list[AngleSample]:
    """``count`` thinned draws from a single CUE chain after burn-in."""
    n = check_size(n)
    chain = _Chain(n, seed, params, kernels or _default_kernels)
    chain.run(params.burn_in_per_n * n)
    out = []
    for i in range(count):
        if i:
            chain.run(params.thin_per_n * n)
        out.append(AngleSample(chain.theta.copy(), CUE, _seed_int(seed), i, chain.acceptance))
    return out


def sample_cue(n: int, seed=None, params: MCMCParams = MCMCParams(), kernels=None) -> AngleSample:
    """One approximately CUE-distributed draw (burn-in only)."""
    return cue_chain(n, 1, seed, params, kernels)[0]


def log_density(thetas) -> float:
    """Unnormalized CUE log density 2 sum_{i<j} ln|sin((theta_i - theta_j)/2)|."""
    th = np.asarray(thetas, dtype=float)
    i, j = np.triu_indices(th.size, 1)
    return float(2.0 * np.sum(np.log(np.abs(np.sin(0.5 * (th[i] - th[j]))))))


# --------------------------------------------------------- first returns

def default_horizon_continuous(n, eps, mult=1e4):
    return mult * 4.0 * eps ** (-(n - 1)) / n


def default_horizon_discrete(n, eps, mult=1e3):
    return int(math.ceil(mult * eps ** (-n)))


def _thetas(sample):
    th = sample.thetas if isinstance(sample, AngleSample) else sample
    return np.ascontiguousarray(th, dtype=np.float64)


def first_return_continuous(sample, eps: float, horizon: float | None = None,
                            kernels=None) -> FirstReturnRecord:
    """First strong return time of the flow t -> t*theta (t real).

    A return can only start when some angle re-enters the target arc, at
    t = (2 pi k - pi eps) / |theta_i|, k >= 1.  The per-angle candidate
    streams are merged in increasing order and each candidate is tested
    against the remaining angles.
    """
    check_eps(eps)
    th = _thetas(sample)
    n = th.size
    if horizon is None:
        horizon = default_horizon_continuous(n, eps)
    tau, checked, hit = (kernels or _default_kernels).first_return_continuous(th, eps, float(horizon))
    return FirstReturnRecord(float(tau), n * float(tau) * eps ** (n - 1) / 4.0, int(checked), bool(hit))


def first_return_discrete(sample, eps: float, horizon: int | None = None,
                          kernels=None) -> FirstReturnRecord:
    """Smallest integer power m >= 1 with every ||m theta_i / 2 pi|| <= eps/2."""
    check_eps(eps)
    x = _thetas(sample) / (2.0 * math.pi)
    n = x.size
    if horizon is None:
        horizon = default_horizon_discrete(n, eps)
    m, hit = (kernels or _default_kernels).first_return_discrete(x, eps, int(horizon))
    return FirstReturnRecord(float(m), float(m) * eps**n, int(m), bool(hit))


def candidate_times(sample, eps: float, t_max: float) -> np.ndarray:
    """All candidate re-entry times in (0, t_max], sorted."""
    th = np.abs(_thetas(sample))
    th = th[th >= 1e-12]
    parts = []
    for w in th:
        kmax = math.floor((t_max * w + math.pi * eps) / (2.0 * math.pi))
        k = np.arange(1, kmax + 1)
        parts.append((2.0 * math.pi * k - math.pi * eps) / w)
    return np.sort(np.concatenate(parts)) if parts else np.empty(0)


def mean_candidate_gap(n: int) -> float:
    """Mean spacing 4/n between consecutive candidate times (uniform angles)."""
    return 4.0 / check_size(n)


def empirical_candidate_gap(samples, eps: float, t_max: float) -> float:
    """Pooled average spacing of merged candidate streams up to ``t_max``."""
    span = 0.0
    gaps = 0
    for s in samples:
        c = candidate_times(s, eps, t_max)
        if c.size >= 2:
            span += c[-1] - c[0]
            gaps += c.size - 1
    if gaps == 0:
        raise TooFewSamples("no candidate gaps in the supplied samples")
    return span / gaps


# ------------------------------------------------------------- fitting

def fit_exponential(records, min_samples: int = 30) -> ExpFit:
    """lambda_hat = 1/mean and a KS test against Exp(1).

    Accepts FirstReturnRecords (censored ones are dropped with a warning)
    or plain positive numbers.
    """
    values, censored = [], 0
    for r in records:
        if isinstance(r, FirstReturnRecord):
            if r.horizon_hit:
                censored += 1
                continue
            values.append(r.normalized)
        else:
            values.append(float(r))
    if censored:
        warnings.warn(f"{censored} censored records excluded from the fit", stacklevel=2)
    if len(values) < min_samples:
        raise TooFewSamples(f"need at least {min_samples} uncensored records, got {len(values)}")
    v = np.asarray(values)
    ks = scipy.stats.kstest(v, "expon")
    return ExpFit(float(1.0 / v.mean()), int(v.size), float(ks.statistic), float(ks.pvalue), censored)


# ------------------------------------------------------------ experiments

def resolve_threads(threads: int | None = None) -> int:
    """Worker count: RECUR_THREADS wins over the argument, then CPU count."""
    env = os.environ.get("RECUR_THREADS")
    if env:
        try:
            threads = int(env)
        except ValueError:
            raise DomainError(f"RECUR_THREADS must be an integer, got {env!r}") from None
    if threads is None:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise DomainError(f"thread count must be positive, got {threads}")
    return threads


def run_first_return(n: int, eps: float, samples: int, *, model: str = CUE,
                     time: str = "continuous", seed=0, horizon_mult: float | None = None,
                     params: MCMCParams = MCMCParams(), threads: int | None = None,
                     kernels=None) -> list[FirstReturnRecord]:
    """Sample angles and compute one first-return record per replication.

    The output order, and every value in it, depends only on the arguments
    and not on the number of worker threads.
    """
    n = check_size(n)
    check_eps(eps)
    if samples < 1:
        raise DomainError("samples must be positive")
    if model == CUE:
        draws = cue_chain(n, samples, seed, params, kernels)
    elif model == IID:
        draws = iid_samples(n, samples, seed)
    else:
        raise DomainError(f"unknown model {model!r}")

    if time == "continuous":
        h = default_horizon_continuous(n, eps, *(() if horizon_mult is None else (horizon_mult,)))
        job = lambda s: first_return_continuous(s, eps, h, kernels)  # noqa: E731
    elif time == "discrete":
        h = default_horizon_discrete(n, eps, *(() if horizon_mult is None else (horizon_mult,)))
        job = lambda s: first_return_discrete(s, eps, h, kernels)  # noqa: E731
    else:
        raise DomainError(f"unknown time mode {time!r}")

    workers = resolve_threads(threads)
    if workers == 1:
        return [job(s) for s in draws]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, draws))
