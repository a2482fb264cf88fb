"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

The arithmetic mirrors the Cython source operation by operation so that both
backends return bitwise identical results; keep the two files in step.
"""

import heapq
from math import fabs, floor, log, pi, sin

TWO_PI = 2.0 * pi
# closed-window slack so exact ties such as ||3 * 0.3|| = 0.1 count as inside
TIE = 1e-12


def _wrap(x):
    return x - TWO_PI * floor((x + pi) / TWO_PI)


def _pair_energy(th, i, xi):
    acc = 0.0
    for j, tj in enumerate(th):
        if j != i:
            acc += log(fabs(sin(0.5 * (xi - tj))))
    return acc


def mcmc_sweeps(theta, steps, log_u):
    """Run ``steps.shape[0]`` Metropolis sweeps in place; return accepted moves."""
    th = [float(v) for v in theta]
    n = len(th)
    accepted = 0
    for row, urow in zip(steps.tolist(), log_u.tolist()):
        for i in range(n):
            old = th[i]
            new = _wrap(old + row[i])
            delta = 2.0 * (_pair_energy(th, i, new) - _pair_energy(th, i, old))
            if urow[i] < delta:
                th[i] = new
                accepted += 1
    theta[:] = th
    return accepted


def _inside(t, th, half):
    x = t * th / TWO_PI
    return fabs(x - floor(x + 0.5)) <= half + TIE


def first_return_continuous(theta, eps, horizon):
    """Earliest candidate re-entry time at which every angle is in the target arc.

    Candidate streams are merged with a heap; ties resolve to the lower index,
    which is also what the linear scan in the compiled kernel does.
    """
    th = [float(v) for v in theta]
    speed = [fabs(v) for v in th]
    half = 0.5 * eps
    heap = [((TWO_PI - pi * eps) / s, i, 1) for i, s in enumerate(speed) if s >= 1e-12]
    heapq.heapify(heap)
    checked = 0
    while heap:
        t, best, k = heap[0]
        if t > horizon:
            break
        checked += 1
        if all(_inside(t, th[j], half) for j in range(len(th))
               if j != best and speed[j] >= 1e-12):
            return t, checked, False
        k += 1
        heapq.heapreplace(heap, ((TWO_PI * k - pi * eps) / speed[best], best, k))
    return float(horizon), checked, True


def first_return_discrete(x, eps, horizon, block=1 << 15):
    """Smallest integer m >= 1 with every ||m x_i|| <= eps/2 (numpy blocks)."""
    import numpy as np

    x = np.asarray(x, dtype=np.float64)
    half = 0.5 * eps
    start = 1
    while start <= horizon:
        stop = min(start + block, horizon + 1)
        m = np.arange(start, stop, dtype=np.float64)[:, None]
        y = m * x[None, :]
        ok = np.all(np.abs(y - np.floor(y + 0.5)) <= half + TIE, axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return int(start + hits[0]), False
        start = stop
    return int(horizon), True
