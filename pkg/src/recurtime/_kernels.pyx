# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for the Monte Carlo experiments.

Every routine here has a line-for-line twin in ``_kernels_py.py``; the two
must produce bitwise identical results for identical inputs, so the order of
floating point operations is kept the same in both files.
"""

from libc.math cimport sin, log, fabs, floor, M_PI

cdef double TWO_PI = 2.0 * M_PI
# closed-window slack so exact ties such as ||3 * 0.3|| = 0.1 count as inside
cdef double TIE = 1e-12


cdef inline double _wrap(double x) nogil:
    return x - TWO_PI * floor((x + M_PI) / TWO_PI)


cdef inline double _pair_energy(const double[::1] th, Py_ssize_t i, double xi) nogil:
    cdef Py_ssize_t j
    cdef Py_ssize_t n = th.shape[0]
    cdef double acc = 0.0
    for j in range(n):
        if j != i:
            acc += log(fabs(sin(0.5 * (xi - th[j]))))
    return acc


def mcmc_sweeps(double[::1] theta, const double[:, ::1] steps, const double[:, ::1] log_u):
    """Run ``steps.shape[0]`` Metropolis sweeps in place; return accepted moves."""
    cdef Py_ssize_t s, i
    cdef Py_ssize_t n_sweeps = steps.shape[0]
    cdef Py_ssize_t n = theta.shape[0]
    cdef long accepted = 0
    cdef double old, new, delta
    with nogil:
        for s in range(n_sweeps):
            for i in range(n):
                old = theta[i]
                new = _wrap(old + steps[s, i])
                delta = 2.0 * (_pair_energy(theta, i, new) - _pair_energy(theta, i, old))
                if log_u[s, i] < delta:
                    theta[i] = new
                    accepted += 1
    return accepted


cdef inline bint _inside(double t, double th, double half) nogil:
    cdef double x = t * th / TWO_PI
    return fabs(x - floor(x + 0.5)) <= half + TIE


def first_return_continuous(const double[::1] theta, double eps, double horizon):
    """Earliest candidate re-entry time at which every angle is in the target arc.

    Returns ``(tau, candidates_checked, horizon_hit)``.
    """
    cdef Py_ssize_t n = theta.shape[0]
    cdef Py_ssize_t i, j, best
    cdef double half = 0.5 * eps
    cdef double[64] speed
    cdef double[64] nxt
    cdef long[64] k
    cdef long checked = 0
    cdef double t
    cdef double tau = horizon
    cdef bint ok
    cdef bint hit = True
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 angles")
    with nogil:
        for i in range(n):
            speed[i] = fabs(theta[i])
            k[i] = 1
            if speed[i] < 1e-12:
                nxt[i] = 1e308
            else:
                nxt[i] = (TWO_PI - M_PI * eps) / speed[i]
        while True:
            best = 0
            for i in range(1, n):
                if nxt[i] < nxt[best]:
                    best = i
            t = nxt[best]
            if t > horizon:
                break
            checked += 1
            ok = True
            for j in range(n):
                if j != best and speed[j] >= 1e-12 and not _inside(t, theta[j], half):
                    ok = False
                    break
            if ok:
                tau = t
                hit = False
                break
            k[best] += 1
            nxt[best] = (TWO_PI * k[best] - M_PI * eps) / speed[best]
    return tau, checked, hit


def first_return_discrete(const double[::1] x, double eps, long horizon):
    """Smallest integer m >= 1 with every ||m x_i|| <= eps/2.

    Returns ``(m, horizon_hit)``; on censoring ``m`` equals ``horizon``.
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef long m
    cdef long found = horizon
    cdef double half = 0.5 * eps
    cdef double y
    cdef bint ok
    cdef bint hit = True
    with nogil:
        for m in range(1, horizon + 1):
            ok = True
            for i in range(n):
                y = m * x[i]
                if fabs(y - floor(y + 0.5)) > half + TIE:
                    ok = False
                    break
            if ok:
                found = m
                hit = False
                break
    return found, hit
