"""Large-N expansions and the weak/real-part return estimates.

All log-probabilities carry the unitary normalization ln((2 pi)^N N!), so
they are directly comparable with ``toeplitz.log_prob_exact``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import scipy.special

from ._math import bisect, check_eps, check_positive, check_size, log_normalization, sinc
from .errors import DomainError, NoRoot
from .toeplitz import LogProb, Method
from .windows import TOL

# 3*zeta'(-1), the Barnes G constant in the classical arc asymptotics
_THREE_ZETA_PRIME = 3.0 * float(mpmath.zeta(-1, derivative=1))

THETA_OMITTED = "Siegel theta correction omitted; O(1/N^2) constant is incomplete"


@dataclass(frozen=True)
class OneCutCoefficients:
    """Leading coefficients of ln Z for one arc of length ``dtheta``.

    ``f_m2``, ``f_0`` and ``f_2`` multiply N^2, N^0 and N^-2.
    """

    eps0: float
    dtheta: float
    f_m2: float
    f_0: float
    f_2: float


def one_cut_coeffs(eps0: float, dtheta: float) -> OneCutCoefficients:
    """F coefficients for a fraction ``eps0`` of eigenvalues on one arc."""
    if not (0.0 < eps0 <= 1.0):
        raise DomainError(f"eps0 must lie in (0, 1], got {eps0!r}")
    if not (0.0 < dtheta < 2.0 * math.pi):
        raise DomainError(f"dtheta must lie in (0, 2 pi), got {dtheta!r}")
    q = dtheta / 4.0
    f_m2 = eps0**2 * math.log(math.sin(q))
    f_0 = (math.log(2.0) / 24.0 + math.log(eps0) / 12.0
           - math.log(math.tan(q)) / 24.0 + math.log(math.sin(2.0 * q)) / 8.0)
    f_2 = -(3.0 * math.cos(2.0 * q) - 1.0) / (128.0 * eps0**2 * math.cos(q) ** 2)
    return OneCutCoefficients(eps0, dtheta, f_m2, f_0, f_2)


def one_cut_applies(t: float, eps: float) -> bool:
    """True when eps <= t <= 2 - eps, where the window is a single arc."""
    return eps - TOL <= t <= 2.0 - eps + TOL


def widom_log_prob(n: int, t: float, eps: float, *, order: str = "full",
                   constant: str = "recursion") -> LogProb:
    """One-cut expansion of ln P_N(t) for eps <= t <= 2 - eps.

    ``order="leading"`` keeps only N^2 ln sin(pi eps / 2t).  With
    ``constant="recursion"`` the O(N), O(ln N) and O(1) terms follow the
    topological-recursion expression; ``constant="classical"`` swaps them for
    the classical arc constant -ln(N)/4 - ln cos(pi eps/2t)/4 + ln(2)/12 +
    3 zeta'(-1), keeping the same N^-2 correction.  See the README for how
    the two compare with exact determinants.
    """
    n = check_size(n)
    check_eps(eps)
    check_positive("t", t)
    if not one_cut_applies(t, eps):
        raise DomainError(f"one-cut expansion needs eps <= t <= 2 - eps, got t={t}")
    theta = math.pi * eps / t
    if theta >= math.pi:  # t == eps: the arc is the whole circle
        return LogProb(0.0, Method.ASYMPTOTIC, ("t = eps: probability one",))
    c = one_cut_coeffs(1.0, 2.0 * theta)
    N = float(n)
    lead = N * N * c.f_m2
    if order == "leading":
        return LogProb(lead, Method.ASYMPTOTIC)
    if order != "full":
        raise DomainError(f"unknown order {order!r}")
    if constant == "recursion":
        value = (lead + N * math.log(N) + 0.25 * math.log(N) + c.f_0 + c.f_2 / N**2
                 - log_normalization(n))
    elif constant == "classical":
        value = (lead - 0.25 * math.log(N) - 0.25 * math.log(math.cos(0.5 * theta))
                 + math.log(2.0) / 12.0 + _THREE_ZETA_PRIME + c.f_2 / N**2)
    else:
        raise DomainError(f"unknown constant {constant!r}")
    return LogProb(value, Method.ASYMPTOTIC)


def integer_time_log_prob(n: int, k: int, eps: float) -> LogProb:
    """Integer-time expansion of ln P_N(k) without its theta-function term."""
    n = check_size(n)
    check_eps(eps)
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"integer time must be a positive integer, got {k!r}")
    k = int(k)
    N = float(n)
    s = (math.log(math.sin(0.5 * math.pi * eps)) / k + math.log(N) / N
         + 0.25 * k * math.log(N) / N**2
         - k / (24.0 * N**2) * (2.0 * math.log(k) + math.log(4.0 * math.tan(0.5 * math.pi * eps))))
    return LogProb(N * N * s - log_normalization(n), Method.ASYMPTOTIC, (THETA_OMITTED,))


def _check_delta(delta):
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0, 1), got {delta!r}")


def weak_log_prob(n: int, t: float, delta: float) -> LogProb:
    """ln P(|Tr U^t| >= (1 - delta) N) to leading order."""
    n = check_size(n)
    check_positive("t", t)
    _check_delta(delta)
    t_eff = min(float(t), float(n))
    return LogProb(-((1.0 - delta) ** 2) * n * n / t_eff, Method.ASYMPTOTIC)


def real_log_prob(n: int, t: float, delta: float, *, method: str = "asymptotic") -> LogProb:
    """ln P(Re Tr U^t >= (1 - delta) N).

    ``method="asymptotic"`` uses the leading erfc tail; ``method="erfc"``
    evaluates ln(erfc(x)/2) itself through the scaled function erfcx.
    """
    weak = weak_log_prob(n, t, delta)
    t_eff = min(float(t), float(n))
    a = (1.0 - delta) * n
    if method == "asymptotic":
        pref = math.log(math.sqrt(t_eff) / (2.0 * a * math.sqrt(math.pi)))
        return LogProb(weak.log_value + pref, Method.ASYMPTOTIC)
    if method == "erfc":
        x = a / math.sqrt(t_eff)
        value = math.log(0.5) + math.log(scipy.special.erfcx(x)) - x * x
        return LogProb(value, Method.CLOSED_FORM)
    raise DomainError(f"unknown method {method!r}")


def _sinc_root(level, upper):
    """a in (0, upper) with sinc(a) = level; sinc is decreasing there."""
    if level >= 1.0:
        raise NoRoot("sinc(a) = 1 - delta needs delta > 0")
    if level <= 0.0:
        raise NoRoot("sinc(a) = 1 - delta needs delta < 1")
    return bisect(lambda a: sinc(a) - level, 0.0, upper, tol=1e-15)


def threshold_time(delta: float) -> float:
    """Smallest positive t with sin(pi t)/(pi t) = 1 - delta."""
    if not delta > 0.0:
        raise NoRoot("sinc(pi t) = 1 - delta needs delta > 0")
    _check_delta(delta)
    return _sinc_root(1.0 - delta, math.pi) / math.pi


def recurrence_estimate(n: int, delta: float) -> float:
    """Typical first weak-return time 4 a^{-(n-1)} / n with sinc(a) = 1 - delta."""
    n = check_size(n)
    if not delta > 0.0:
        raise NoRoot("sinc(a) = 1 - delta needs delta > 0")
    _check_delta(delta)
    a = _sinc_root(1.0 - delta, math.pi)
    return 4.0 * a ** (-(n - 1)) / n
