"""Independent reference computations used by the test suite.

Nothing here calls into the package: windows are clipped from the defining
condition, integrals go through scipy quadrature and determinants through
explicit permutation sums.
"""

import itertools
import math

import numpy as np
from scipy import integrate


def clipped_window(t, eps):
    """Arcs {theta in [-pi, pi] : t theta within pi eps of 2 pi Z}, merged."""
    half = math.pi * eps / t
    jmax = int(math.ceil(t / 2.0)) + 1
    arcs = []
    for j in range(-jmax, jmax + 1):
        lo = max(2 * math.pi * j / t - half, -math.pi)
        hi = min(2 * math.pi * j / t + half, math.pi)
        if hi > lo:
            arcs.append([lo, hi])
    arcs.sort()
    merged = [arcs[0]]
    for lo, hi in arcs[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [tuple(a) for a in merged]


def vandermonde_sq(*theta):
    acc = 1.0
    for i in range(len(theta)):
        for j in range(i + 1, len(theta)):
            acc *= 4.0 * math.sin(0.5 * (theta[i] - theta[j])) ** 2
    return acc


def quadrature_prob(n, t, eps):
    """(1 / ((2 pi)^n n!)) times the integral of the squared Vandermonde over I(t)^n."""
    arcs = clipped_window(t, eps)
    total = 0.0
    for box in itertools.product(arcs, repeat=n):
        val, _ = integrate.nquad(vandermonde_sq, list(box), opts={"epsrel": 1e-10, "epsabs": 0.0})
        total += val
    return total / ((2 * math.pi) ** n * math.factorial(n))


def fourier_coeff(m, arcs):
    """(1 / 2 pi) int over arcs of cos(m theta), by quadrature."""
    return sum(integrate.quad(lambda x: math.cos(m * x), lo, hi, epsabs=1e-15, epsrel=1e-13)[0]
               for lo, hi in arcs) / (2 * math.pi)


def _sign(perm):
    s, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            s *= -1 if length % 2 == 0 else 1
    return s


def permutation_sum_prob(n, t, eps):
    """sum over sigma of sgn(sigma) prod_k c_{sigma(k) - k}, entries from quadrature."""
    arcs = clipped_window(t, eps)
    c = {m: fourier_coeff(m, arcs) for m in range(n)}
    total = 0.0
    for perm in itertools.permutations(range(n)):
        prod = float(_sign(perm))
        for k, s in enumerate(perm):
            prod *= c[abs(s - k)]
        total += prod
    return total


def haar_unitary(n, rng):
    """Haar unitary by QR of a complex Ginibre matrix with phase fix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def brute_first_return_discrete(theta, eps, horizon):
    """Smallest m with every m theta_i / 2 pi within eps/2 (+1e-12) of an integer."""
    x = np.asarray(theta) / (2 * math.pi)
    for m in range(1, horizon + 1):
        y = m * x
        if np.all(np.abs(y - np.round(y)) <= 0.5 * eps + 1e-12):
            return m
    return None
