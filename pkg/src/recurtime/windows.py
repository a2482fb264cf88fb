"""Return windows.

For a time ``t`` and half-width ``eps`` the window I(t) is the set of angles
theta in [-pi, pi] for which t*theta lies within pi*eps of a multiple of
2*pi.  All eigenangles of U must sit in I(t) for U^t to have its whole
spectrum in the target arc [-pi*eps, pi*eps].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from ._math import check_eps, check_positive

TOL = 1e-12


class RegimeKind(str, Enum):
    INITIAL = "initial"
    BULK = "bulk"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class Regime:
    """Time regime; ``k`` indexes the grid point 2k of the Bulk/Boundary bands."""

    kind: RegimeKind
    k: int = 0

    def __str__(self):
        if self.kind is RegimeKind.INITIAL:
            return "Initial"
        return f"{self.kind.value.capitalize()}({self.k})"


def classify(t: float, eps: float) -> Regime:
    """Regime of ``t``; exact boundary times 2k +/- eps go to Boundary(k)."""
    check_positive("t", t)
    check_eps(eps)
    if t <= eps + TOL:
        return Regime(RegimeKind.INITIAL)
    k = math.floor((t + eps + TOL) / 2.0)
    if k >= 1 and t <= 2 * k + eps + TOL:
        return Regime(RegimeKind.BOUNDARY, k)
    return Regime(RegimeKind.BULK, k)


@dataclass(frozen=True)
class ReturnWindow:
    t: float
    eps: float
    regime: Regime
    intervals: tuple[tuple[float, float], ...]

    @property
    def measure(self) -> float:
        return window_measure(self)


def build_window(t: float, eps: float) -> ReturnWindow:
    """Build I(t) as a sorted tuple of closed intervals in [-pi, pi]."""
    regime = classify(t, eps)
    pi = math.pi
    if regime.kind is RegimeKind.INITIAL:
        return ReturnWindow(t, eps, regime, ((-pi, pi),))

    half = pi * eps / t
    if regime.kind is RegimeKind.BULK:
        js = range(-regime.k, regime.k + 1)
        ivs = [(2 * pi * j / t - half, 2 * pi * j / t + half) for j in js]
    else:
        k = regime.k
        # the edge piece can collapse to [pi, pi] when t sits a hair
        # below 2k - eps but was classified Boundary by the tie rule
        lo = min((2 * pi * k - pi * eps) / t, pi)
        ivs = [(-pi, -lo)]
        ivs += [(2 * pi * j / t - half, 2 * pi * j / t + half) for j in range(-(k - 1), k)]
        ivs.append((lo, pi))
    return ReturnWindow(t, eps, regime, tuple(ivs))


def window_measure(w: ReturnWindow) -> float:
    """Total length of the window, at most 2*pi."""
    return math.fsum(hi - lo for lo, hi in w.intervals)


def contains(w: ReturnWindow, theta: float) -> bool:
    """Closed-interval membership test."""
    return any(lo <= theta <= hi for lo, hi in w.intervals)


def in_target(t: float, theta: float, eps: float) -> bool:
    """Direct test: is t*theta within pi*eps of a multiple of 2*pi?"""
    x = t * theta / (2.0 * math.pi)
    return abs(x - math.floor(x + 0.5)) <= 0.5 * eps + TOL
