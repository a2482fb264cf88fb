"""Exact return probabilities as Toeplitz determinants.

P_N(t) = det[c_{j-i}]_{i,j<N} where c_m is the m-th Fourier coefficient of
the indicator of the window I(t), normalized by 2*pi.  The determinant is
exponentially small in N^2, and for N in the tens its smallest eigenvalues
sit far below double precision, so ``log_det`` escalates to mpmath whenever
the double-precision spectrum cannot certify every eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from types import SimpleNamespace

import mpmath
import numpy as np
import scipy.linalg

from ._math import check_eps, check_positive, check_size
from .errors import DimensionTooLarge, DomainError, NonPositiveDeterminant
from .windows import Regime, RegimeKind, classify

SINGULAR_TOL = 1e-9
MAX_DIM = 200
MAX_DPS = 3200
CLAMP_TOL = 1e-10

_FLOAT = SimpleNamespace(sin=math.sin, pi=math.pi, num=float)


class Method(str, Enum):
    EXACT_DET = "exact_det"
    ASYMPTOTIC = "asymptotic"
    ABIA = "abia"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class LogProb:
    """A probability carried as its logarithm."""

    log_value: float
    method: Method
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def prob(self) -> float:
        return math.exp(self.log_value)

    def to_dict(self) -> dict:
        return {
            "log_value": self.log_value,
            "prob": self.prob,
            "method": self.method.value,
            "diagnostics": list(self.diagnostics),
        }


@dataclass(frozen=True)
class ToeplitzSpec:
    n: int
    t: float
    eps: float
    regime: Regime
    first_row: tuple[float, ...]

    def matrix(self) -> np.ndarray:
        return scipy.linalg.toeplitz(self.first_row)


def entry_regime(t: float, eps: float, regime: Regime) -> Regime:
    """Regime whose entry formula is exact for ``t``.

    The tie rule can put a float ``t`` lying just below 2k - eps into
    Boundary(k).  In exact arithmetic the boundary pieces are then empty,
    so the Bulk(k-1) formula is the right one; the comparison is done with
    exact rationals to decide.
    """
    if regime.kind is RegimeKind.BOUNDARY and Fraction(t) < 2 * regime.k - Fraction(eps):
        return Regime(RegimeKind.BULK, regime.k - 1)
    return regime


def _row(n, t, eps, regime, lib):
    sin, pi = lib.sin, lib.pi
    t, eps = lib.num(t), lib.num(eps)
    if regime.kind is RegimeKind.INITIAL:
        return [lib.num(1)] + [lib.num(0)] * (n - 1)
    R = regime.k
    bulk = regime.kind is RegimeKind.BULK
    if bulk:
        row = [(2 * R + 1) * eps / t]
    else:
        row = [2 * R * eps / t + 1 - 2 * R / t]
    for m in range(1, n):
        s = sin(m * pi / t)
        if abs(s) < SINGULAR_TOL:
            if bulk:
                c = (2 * R + 1) * sin(m * pi * eps / t) / (pi * m)
            else:
                q = round(float(m / t))
                sign = -1 if q % 2 else 1
                c = -2 * R * sign * sin((1 - eps) * m * pi / t) / (pi * m)
        elif bulk:
            c = sin(m * (2 * R + 1) * pi / t) * sin(m * pi * eps / t) / (pi * m * s)
        else:
            c = -sin(2 * m * pi * R / t) * sin((1 - eps) * m * pi / t) / (pi * m * s)
        row.append(c)
    return row


def build_entries(n: int, t: float, eps: float) -> ToeplitzSpec:
    """First row c_0..c_{n-1} of the Toeplitz matrix in double precision."""
    n = check_size(n)
    check_positive("t", t)
    check_eps(eps)
    regime = classify(t, eps)
    row = _row(n, t, eps, entry_regime(t, eps, regime), _FLOAT)
    return ToeplitzSpec(n, float(t), float(eps), regime, tuple(float(c) for c in row))


def first_row_mp(spec: ToeplitzSpec, dps: int) -> list:
    """First row recomputed in mpmath at ``dps`` decimal digits."""
    with mpmath.workdps(dps):
        lib = SimpleNamespace(sin=mpmath.sin, pi=mpmath.pi, num=mpmath.mpf)
        reg = entry_regime(spec.t, spec.eps, spec.regime)
        return [+c for c in _row(spec.n, spec.t, spec.eps, reg, lib)]


def _mp_matrix(row):
    n = len(row)
    return mpmath.matrix([[row[abs(i - j)] for j in range(n)] for i in range(n)])


def _certified(eigs, err):
    """True when every eigenvalue is positive and known to relative 1e-12 in sum."""
    if min(eigs) <= 0:
        return False
    return sum(err / e for e in eigs) < 1e-12


def log_det(spec: ToeplitzSpec, *, max_dim: int = MAX_DIM) -> LogProb:
    """ln det T via a symmetric eigendecomposition.

    Double precision is tried first.  When the bound n * u / lambda_min on
    the eigenvalue error is not small, the entries and the eigenproblem are
    redone in mpmath with doubling precision until the bound holds.
    """
    n = spec.n
    if n > max_dim:
        raise DimensionTooLarge(f"n={n} exceeds the cap {max_dim}")
    if spec.regime.kind is RegimeKind.INITIAL:
        return LogProb(0.0, Method.EXACT_DET)

    w = np.linalg.eigvalsh(spec.matrix())
    if _certified(w, 16 * n * np.finfo(float).eps):
        return LogProb(math.fsum(np.log(w)), Method.EXACT_DET)

    dps = 40
    while True:
        row = first_row_mp(spec, dps)
        with mpmath.workdps(dps):
            eigs = mpmath.eigsy(_mp_matrix(row), eigvals_only=True)
            eigs = [eigs[i] for i in range(n)]
            err = n * mpmath.mpf(10) ** (3 - dps)
            if _certified(eigs, err):
                value = float(mpmath.fsum(mpmath.log(e) for e in eigs))
                return LogProb(value, Method.EXACT_DET, (f"extended precision dps={dps}",))
            if dps >= MAX_DPS:
                return _clamped(eigs, dps)
        dps *= 2


def _clamped(eigs, dps):
    low = min(eigs)
    if low < -CLAMP_TOL:
        raise NonPositiveDeterminant(f"eigenvalue {mpmath.nstr(low, 5)} at dps={dps}")
    fixed = [e if e > 0 else mpmath.mpf("1e-300") for e in eigs]
    value = float(mpmath.fsum(mpmath.log(e) for e in fixed))
    return LogProb(value, Method.EXACT_DET,
                   (f"eigenvalues clamped to 1e-300 at dps={dps}; result unreliable",))


def lu_log_det(spec: ToeplitzSpec, dps: int | None = None) -> float:
    """Cross-check: ln|det T| from LU with partial pivoting.

    With ``dps=None`` the factorization runs in double precision (scipy);
    otherwise in mpmath at the given precision.
    """
    if spec.regime.kind is RegimeKind.INITIAL:
        return 0.0
    if dps is None:
        lu, _ = scipy.linalg.lu_factor(spec.matrix())
        return math.fsum(np.log(np.abs(np.diag(lu))))
    row = first_row_mp(spec, dps)
    with mpmath.workdps(dps):
        lu, _ = mpmath.mp.LU_decomp(_mp_matrix(row))
        return float(mpmath.fsum(mpmath.log(abs(lu[i, i])) for i in range(spec.n)))


def _is_integer(t):
    return float(t).is_integer()


def log_prob_exact(n: int, t: float, eps: float, *, max_dim: int = MAX_DIM) -> LogProb:
    """ln P_{N,strong}(t), dispatching the closed-form cases first."""
    n = check_size(n)
    check_positive("t", t)
    check_eps(eps)
    regime = classify(t, eps)
    if regime.kind is RegimeKind.INITIAL:
        return LogProb(0.0, Method.CLOSED_FORM)
    if _is_integer(t) and t > n:
        # every off-diagonal entry vanishes: only multiples of t survive
        return LogProb(n * math.log(eps), Method.CLOSED_FORM)
    return log_det(build_entries(n, t, eps), max_dim=max_dim)


def large_t_estimate(n: int, t: float, eps: float) -> LogProb:
    """Leading-order estimate n*[ln eps + ln((2/t) floor(t/2))] for t > n."""
    n = check_size(n)
    check_eps(eps)
    if not t > n:
        raise DomainError(f"large-t estimate needs t > n, got t={t}, n={n}")
    ratio = 2.0 / t * math.floor(t / 2.0)
    if ratio == 0.0:
        return LogProb(-math.inf, Method.CLOSED_FORM, ("floor(t/2) = 0",))
    return LogProb(n * (math.log(eps) + math.log(ratio)), Method.CLOSED_FORM)
