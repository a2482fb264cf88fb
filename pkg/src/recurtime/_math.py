"""Small scalar helpers shared across modules."""

import math

from .errors import DomainError, NoRoot


def sinc(x):
    """sin(x)/x with a Taylor branch near zero."""
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def log_factorial(n):
    """ln n!: exact below 21, Stirling with the 1/(12n) term above."""
    if n < 0:
        raise DomainError("factorial of a negative integer")
    if n <= 20:
        return math.log(math.factorial(n))
    return n * math.log(n) - n + 0.5 * math.log(2.0 * math.pi * n) + 1.0 / (12.0 * n)


def log_normalization(n):
    """ln((2 pi)^n n!), the CUE partition function with unit weight."""
    return n * math.log(2.0 * math.pi) + log_factorial(n)


def bisect(f, lo, hi, tol=1e-12, maxiter=200):
    """Bisection for a sign change of ``f`` on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoRoot(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def check_eps(eps):
    if not (0.0 < eps < 1.0):
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")


def check_positive(name, value):
    if not (value > 0) or math.isinf(value):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


def check_size(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)
