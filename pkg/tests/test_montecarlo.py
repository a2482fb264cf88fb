import math
import warnings

import numpy as np
import pytest
import scipy.stats
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_first_return_discrete
from recurtime import _backend
from recurtime.errors import DomainError, TooFewSamples
from recurtime.montecarlo import (
    IID,
    FirstReturnRecord,
    MCMCParams,
    candidate_times,
    cue_chain,
    empirical_candidate_gap,
    first_return_continuous,
    first_return_discrete,
    fit_exponential,
    iid_samples,
    log_density,
    mean_candidate_gap,
    resolve_threads,
    run_first_return,
    sample_cue,
    sample_iid,
)
from recurtime.windows import in_target

FAST = MCMCParams(burn_in_per_n=200, thin_per_n=5)


def test_samples_in_range_and_read_only():
    s = sample_cue(5, seed=3, params=FAST)
    assert s.thetas.shape == (5,) and np.all(np.abs(s.thetas) <= math.pi)
    with pytest.raises(ValueError):
        s.thetas[0] = 0.0
    assert 0.1 < s.acceptance < 0.9
    assert np.all(np.abs(sample_iid(7, seed=1).thetas) <= math.pi)


def test_chain_is_deterministic():
    a = cue_chain(4, 20, seed=99, params=FAST)
    b = cue_chain(4, 20, seed=99, params=FAST)
    assert all(np.array_equal(x.thetas, y.thetas) for x, y in zip(a, b))


def test_python_backend_gives_same_chain():
    a = cue_chain(3, 5, seed=5, params=FAST, kernels=_backend.kernels)
    b = cue_chain(3, 5, seed=5, params=FAST, kernels=_backend.python_kernels)
    assert all(np.array_equal(x.thetas, y.thetas) for x, y in zip(a, b))


def test_results_independent_of_thread_count():
    kw = dict(model=IID, seed=4, horizon_mult=10.0)
    one = run_first_return(3, 0.3, 40, threads=1, **kw)
    many = run_first_return(3, 0.3, 40, threads=3, **kw)
    assert one == many


def test_iid_streams_are_reproducible():
    a = iid_samples(4, 10, seed=8)
    b = iid_samples(4, 10, seed=8)
    assert all(np.array_equal(x.thetas, y.thetas) for x, y in zip(a, b))


def test_log_density_hand_value():
    assert log_density([0.0, math.pi]) == pytest.approx(0.0, abs=1e-15)
    assert log_density([0.0, math.pi / 2]) == pytest.approx(2 * math.log(math.sin(math.pi / 4)))


@given(st.lists(st.floats(-math.pi, math.pi).filter(lambda v: abs(v) > 0.05), min_size=1, max_size=3),
       st.floats(0.1, 0.5))
def test_continuous_return_is_a_return_and_not_too_early(theta, eps):
    th = np.array(theta)
    rec = first_return_continuous(th, eps, horizon=2e4)
    if rec.horizon_hit:
        return
    assert rec.tau >= 2 - eps - 1e-12
    assert all(in_target(rec.tau, v, eps) for v in th)


@pytest.mark.parametrize("seed", range(12))
def test_continuous_return_complete_for_two_angles(seed):
    rng = np.random.default_rng(seed)
    th = rng.uniform(-math.pi, math.pi, 2)
    eps = 0.4
    rec = first_return_continuous(th, eps, horizon=500.0)
    assert not rec.horizon_hit
    # the trivial stay near t = 0 ends when the fastest angle leaves the arc
    start = math.pi * eps / np.abs(th).max() + 1e-6
    grid = np.arange(start, rec.tau - 1e-6, 1e-3)
    x = grid[:, None] * th[None, :] / (2 * math.pi)
    inside = np.all(np.abs(x - np.round(x)) <= eps / 2, axis=1)
    assert not inside.any()


def test_discrete_matches_brute_force():
    rng = np.random.default_rng(31)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        eps = float(rng.uniform(0.2, 0.6))
        th = rng.uniform(-math.pi, math.pi, n)
        ref = brute_first_return_discrete(th, eps, 5000)
        rec = first_return_discrete(th, eps, horizon=5000)
        if ref is None:
            assert rec.horizon_hit
        else:
            assert rec.tau == ref and not rec.horizon_hit


def test_normalizations():
    th = np.array([math.pi / 2, -math.pi / 2])
    rec = first_return_continuous(th, 0.2)
    assert rec.normalized == pytest.approx(2 * rec.tau * 0.2 / 4)
    rec = first_return_discrete(np.array([0.3 * 2 * math.pi]), 0.2)
    assert rec.tau == 3 and rec.normalized == pytest.approx(0.6)


def test_candidate_times_sorted_and_complete():
    th = np.array([1.0, -2.0])
    c = candidate_times(th, 0.2, 20.0)
    ref = sorted((2 * math.pi * k - 0.2 * math.pi) / w for w in (1.0, 2.0) for k in range(1, 20)
                 if (2 * math.pi * k - 0.2 * math.pi) / w <= 20.0)
    assert np.allclose(c, ref)


def test_candidate_gap_matches_mean_spacing():
    samples = iid_samples(6, 200, seed=17)
    gap = empirical_candidate_gap(samples, 0.2, 2000.0)
    assert gap == pytest.approx(mean_candidate_gap(6), rel=0.1)
    assert mean_candidate_gap(6) == pytest.approx(2 / 3)


def test_cue_chain_trace_moments():
    chain = cue_chain(5, 3000, seed=21)
    z = np.array([np.exp(1j * s.thetas).sum() for s in chain])
    z2 = np.array([np.exp(2j * s.thetas).sum() for s in chain])
    assert np.mean(np.abs(z) ** 2) == pytest.approx(1.0, abs=0.12)
    assert np.mean(np.abs(z2) ** 2) == pytest.approx(2.0, abs=0.25)


def test_fit_exponential_on_exp_samples():
    v = np.random.default_rng(0).exponential(1.0, 5000)
    fit = fit_exponential(v)
    assert fit.lambda_hat == pytest.approx(1.0, abs=0.05)
    assert fit.ks_p_value > 0.01 and fit.n_samples == 5000


def test_fit_rejects_constant_data():
    fit = fit_exponential(np.full(500, 1.0))
    assert fit.lambda_hat == 1.0 and fit.ks_p_value < 1e-10


def test_fit_excludes_censored_records():
    recs = [FirstReturnRecord(1.0, float(v), 1, False) for v in np.linspace(0.01, 3, 50)]
    recs.append(FirstReturnRecord(9.0, 9.0, 1, True))
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        fit = fit_exponential(recs)
    assert fit.n_censored == 1 and fit.n_samples == 50 and w
    with pytest.raises(TooFewSamples):
        fit_exponential([1.0] * 5)


def test_kaplan_free_exponential_ks_matches_scipy():
    v = np.random.default_rng(2).exponential(0.5, 300)
    fit = fit_exponential(v)
    ks = scipy.stats.kstest(v, "expon")
    assert fit.ks_statistic == ks.statistic and fit.lambda_hat == pytest.approx(2.0, rel=0.15)


def test_thread_resolution(monkeypatch):
    monkeypatch.delenv("RECUR_THREADS", raising=False)
    assert resolve_threads(3) == 3
    monkeypatch.setenv("RECUR_THREADS", "2")
    assert resolve_threads(5) == 2
    monkeypatch.setenv("RECUR_THREADS", "x")
    with pytest.raises(DomainError):
        resolve_threads(1)


def test_argument_errors():
    with pytest.raises(DomainError):
        run_first_return(3, 0.2, 0)
    with pytest.raises(DomainError):
        run_first_return(3, 0.2, 5, model="gue")
    with pytest.raises(DomainError):
        run_first_return(3, 0.2, 5, model=IID, time="sometimes")
