"""Average Block Interaction Approximation (ABIA).

Beyond t = 2 - eps the window splits into several arcs.  ABIA assigns a
filling fraction to each arc, keeps the one-cut self energy inside every
arc and replaces the interaction between two arcs by that of their centres.
The leading order of ln P / N^2 is then the extremum of a quadratic form
under the constraint sum(fractions) = 1, found from one KKT (saddle point)
linear system A x = b with x = (fractions, lagrange multiplier).

Only the symmetric half of the fractions is kept as unknowns, since the
problem is invariant under theta -> -theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from ._math import check_eps, check_positive
from .errors import DomainError, NumericalError, SingularSystem
from .windows import TOL, RegimeKind, classify

LN2 = math.log(2.0)
AGREE_TOL = 1e-9
COND_MAX = 1e14


@dataclass(frozen=True)
class AbiaSystem:
    t: float
    eps: float
    k: int
    regime: RegimeKind  # BULK or BOUNDARY
    a_matrix: np.ndarray
    b_vector: np.ndarray


@dataclass(frozen=True)
class AbiaSolution:
    """Optimal fractions, listed from the arc at -theta to the arc at +theta.

    In the Boundary regime the last entry is the arc through theta = pi.
    """

    filling_fractions: tuple[float, ...]
    lagrange: float
    log_prob_over_n2: float
    valid: bool


def _lsin2(x):
    return 2.0 * math.log(abs(math.sin(x)))


def _bulk_matrix(t, eps, k):
    ls = math.log(math.sin(math.pi * eps / (2.0 * t)))
    A = np.zeros((k + 2, k + 2))
    last = k + 1
    A[0, 0] = 2.0 * ls
    A[0, last] = A[last, 0] = -1.0
    for j in range(1, k + 1):  # 0-based row j is arc pair +-j
        A[j, last] = A[last, j] = -2.0
        A[0, j] = A[j, 0] = 4.0 * LN2 + 2.0 * _lsin2(math.pi * j / t)
        A[j, j] = 4.0 * ls + 4.0 * LN2 + 2.0 * _lsin2(2.0 * math.pi * j / t)
        for i in range(1, k + 1):
            if i != j:
                A[i, j] = (8.0 * LN2 + 2.0 * _lsin2(math.pi * (j - i) / t)
                           + 2.0 * _lsin2(math.pi * (j + i) / t))
    return A


def _boundary_matrix(t, eps, k):
    ls = math.log(math.sin(math.pi * eps / (2.0 * t)))
    A = np.zeros((k + 2, k + 2))
    last, edge = k + 1, k
    A[0, 0] = 2.0 * ls
    A[0, last] = A[last, 0] = -1.0
    A[edge, last] = A[last, edge] = -1.0
    A[0, edge] = A[edge, 0] = 2.0 * LN2
    c = math.cos(math.pi * k / t - math.pi * eps / (2.0 * t))
    # c <= 0 only for a float t a hair below 2k - eps; solve() rejects it
    A[edge, edge] = 2.0 * math.log(c) if c > 0.0 else -math.inf
    for j in range(1, k):
        A[j, last] = A[last, j] = -2.0
        A[0, j] = A[j, 0] = 4.0 * LN2 + 2.0 * _lsin2(math.pi * j / t)
        A[j, j] = 4.0 * ls + 4.0 * LN2 + 2.0 * _lsin2(2.0 * math.pi * j / t)
        A[j, edge] = A[edge, j] = 4.0 * LN2 + 4.0 * math.log(abs(math.cos(math.pi * j / t)))
        for i in range(1, k):
            if i != j:
                A[i, j] = (8.0 * LN2 + 2.0 * _lsin2(math.pi * (j - i) / t)
                           + 2.0 * _lsin2(math.pi * (j + i) / t))
    return A


def _rhs(k):
    b = np.zeros(k + 2)
    b[-1] = -1.0
    return b


def build_system(t: float, eps: float) -> AbiaSystem:
    """KKT matrix and right-hand side for a multi-arc time t > 2 - eps."""
    check_positive("t", t)
    check_eps(eps)
    regime = classify(t, eps)
    if regime.kind is RegimeKind.INITIAL or (regime.kind is RegimeKind.BULK and regime.k == 0):
        raise DomainError(f"t={t} has a single arc; use the one-cut expansion")
    k = regime.k
    if regime.kind is RegimeKind.BULK:
        A = _bulk_matrix(t, eps, k)
    else:
        A = _boundary_matrix(t, eps, k)
    return AbiaSystem(float(t), float(eps), k, regime.kind, A, _rhs(k))


def _unfold(sys, x):
    k = sys.k
    half = [float(v) for v in x[: k + 1]]
    if sys.regime is RegimeKind.BULK:
        side = half[1:]
        return tuple(side[::-1] + [half[0]] + side)
    side = half[1:k]
    return tuple(side[::-1] + [half[0]] + side + [half[k]])


def solve(sys: AbiaSystem) -> AbiaSolution:
    """Extremum of the constrained quadratic form.

    The value -(A^-1)_{last,last}/2 is computed twice, from a pivoted LU
    solve and from the ratio of determinants det(A minus last row and
    column)/det(A); the two must agree to 1e-9.
    """
    A, b = sys.a_matrix, sys.b_vector
    if not np.all(np.isfinite(A)):
        raise SingularSystem(f"non-finite saddle matrix at t={sys.t}")
    if np.linalg.cond(A) > COND_MAX:
        raise SingularSystem(f"saddle matrix is numerically singular at t={sys.t}")
    lu = scipy.linalg.lu_factor(A)
    x = scipy.linalg.lu_solve(lu, b)
    value = 0.5 * x[-1]  # b = -e_last, so x_last = -(A^-1)_{last,last}

    s_full, l_full = np.linalg.slogdet(A)
    s_sub, l_sub = np.linalg.slogdet(A[:-1, :-1])
    ratio_value = -0.5 * s_full * s_sub * math.exp(l_sub - l_full)
    if abs(ratio_value - value) > AGREE_TOL * max(1.0, abs(value)):
        raise NumericalError(
            f"inverse entry {value!r} and determinant ratio {ratio_value!r} disagree at t={sys.t}")

    fractions = _unfold(sys, x)
    return AbiaSolution(
        filling_fractions=fractions,
        lagrange=float(x[-1]),
        log_prob_over_n2=float(value),
        valid=all(f >= -1e-9 for f in fractions),
    )


def determinant_ratio_value(sys: AbiaSystem) -> float:
    """-det(A~)/(2 det A) on its own, for callers that want the second route."""
    s_full, l_full = np.linalg.slogdet(sys.a_matrix)
    s_sub, l_sub = np.linalg.slogdet(sys.a_matrix[:-1, :-1])
    return -0.5 * s_full * s_sub * math.exp(l_sub - l_full)


def _edge_limit(t, eps, regime):
    """At t = 2k - eps (or a float hair below it) the arc through pi is empty.

    The edge self energy 2 ln cos(...) tends to -infinity there, which drives
    its fraction to zero; the limit is the Bulk(k-1) system at the same t.
    """
    if regime.kind is not RegimeKind.BOUNDARY:
        return False
    edge = 2 * regime.k - Fraction(eps)
    return Fraction(t) <= edge or abs(t - float(edge)) <= TOL


def abia_solution(t: float, eps: float) -> AbiaSolution:
    """Solve the ABIA problem at any t > eps, single-arc times included."""
    check_positive("t", t)
    check_eps(eps)
    regime = classify(t, eps)
    if regime.kind is RegimeKind.INITIAL:
        raise DomainError(f"t={t} <= eps: the return is certain, nothing to optimize")
    if regime.kind is RegimeKind.BULK:
        k = regime.k
        sys = AbiaSystem(float(t), float(eps), k, RegimeKind.BULK, _bulk_matrix(t, eps, k), _rhs(k))
    elif _edge_limit(t, eps, regime):
        k = regime.k - 1
        sys = AbiaSystem(float(t), float(eps), k, RegimeKind.BULK, _bulk_matrix(t, eps, k), _rhs(k))
    else:
        sys = build_system(t, eps)
    return solve(sys)


def abia_log_prob_over_n2(t: float, eps: float) -> float:
    """ABIA estimate of ln P_N(t) / N^2.

    For eps < t <= 2 - eps this is the one-cut leading term
    ln sin(pi eps / 2t), which is what the 2x2 system reduces to.
    """
    regime = classify(t, eps)
    if regime.kind is RegimeKind.BULK and regime.k == 0:
        return math.log(math.sin(math.pi * eps / (2.0 * t)))
    return abia_solution(t, eps).log_prob_over_n2
