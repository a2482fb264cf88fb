import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import clipped_window
from recurtime.errors import DomainError
from recurtime.windows import (
    RegimeKind,
    build_window,
    classify,
    contains,
    in_target,
    window_measure,
)

times = st.floats(min_value=0.01, max_value=40.0, allow_nan=False)
epss = st.floats(min_value=0.01, max_value=0.99, allow_nan=False)


@pytest.mark.parametrize("t, eps, kind, k", [
    (0.1, 0.2, RegimeKind.INITIAL, 0),
    (0.2, 0.2, RegimeKind.INITIAL, 0),
    (1.0, 0.2, RegimeKind.BULK, 0),
    (1.8, 0.2, RegimeKind.BOUNDARY, 1),
    (2.2, 0.2, RegimeKind.BOUNDARY, 1),
    (2.5, 0.2, RegimeKind.BULK, 1),
    (3.0, 0.2, RegimeKind.BULK, 1),
    (4.0, 0.2, RegimeKind.BOUNDARY, 2),
    (5.9, 0.2, RegimeKind.BOUNDARY, 3),
])
def test_classify_examples(t, eps, kind, k):
    r = classify(t, eps)
    assert r.kind is kind and r.k == k


def test_regime_str():
    assert str(classify(0.1, 0.2)) == "Initial"
    assert str(classify(1.0, 0.2)) == "Bulk(0)"
    assert str(classify(2.0, 0.2)) == "Boundary(1)"


def test_bulk_window_t1():
    w = build_window(1.0, 0.2)
    assert w.intervals == pytest.approx([(-0.2 * math.pi, 0.2 * math.pi)], abs=1e-15)


def test_boundary_window_t2():
    w = build_window(2.0, 0.2)
    lo = math.pi * 0.9
    expect = [(-math.pi, -lo), (-0.1 * math.pi, 0.1 * math.pi), (lo, math.pi)]
    for got, ref in zip(w.intervals, expect):
        assert got == pytest.approx(ref, abs=1e-15)


def test_initial_window_is_full_circle():
    w = build_window(0.1, 0.2)
    assert w.intervals == ((-math.pi, math.pi),)
    assert w.measure == pytest.approx(2 * math.pi)


@pytest.mark.parametrize("t, eps", [(0.0, 0.2), (-1.0, 0.2), (1.0, 0.0), (1.0, 1.0), (1.0, -0.1),
                                    (math.nan, 0.2), (1.0, math.nan)])
def test_invalid_arguments(t, eps):
    with pytest.raises(DomainError):
        build_window(t, eps)


@given(times, epss)
def test_measure_bounded_and_positive(t, eps):
    m = window_measure(build_window(t, eps))
    assert 0.0 < m <= 2 * math.pi + 1e-12


@given(times, epss)
def test_intervals_sorted_disjoint_inside_circle(t, eps):
    ivs = build_window(t, eps).intervals
    assert all(-math.pi <= lo <= hi <= math.pi for lo, hi in ivs)
    assert all(a[1] <= b[0] + 1e-12 for a, b in zip(ivs, ivs[1:]))


@given(times, epss)
def test_symmetric_under_reflection(t, eps):
    ivs = build_window(t, eps).intervals
    mirror = sorted((-hi, -lo) for lo, hi in ivs)
    for a, b in zip(ivs, mirror):
        assert a == pytest.approx(b, abs=1e-12)


@given(times, epss, epss)
def test_measure_monotone_in_eps(t, e1, e2):
    lo, hi = sorted((e1, e2))
    assert window_measure(build_window(t, lo)) <= window_measure(build_window(t, hi)) + 1e-12


@given(times, epss)
def test_matches_clipped_oracle(t, eps):
    w = build_window(t, eps)
    if w.regime.kind is RegimeKind.INITIAL:
        return
    ref = clipped_window(t, eps)
    assert window_measure(w) == pytest.approx(math.fsum(h - l for l, h in ref), abs=1e-12)


def test_membership_matches_direct_condition():
    rng = np.random.default_rng(2024)
    for _ in range(20_000):
        t = rng.uniform(0.05, 15.0)
        eps = rng.uniform(0.05, 0.6)
        th = rng.uniform(-math.pi, math.pi)
        assert contains(build_window(t, eps), th) == in_target(t, th, eps)


def test_membership_tie_counts_inside():
    # 3 * 0.3 = 0.9 is exactly eps/2 away from 1 in exact arithmetic
    assert in_target(3.0, 0.3 * 2 * math.pi, 0.2)
