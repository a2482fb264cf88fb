"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends receive identical inputs; the script also checks that they
return identical outputs before reporting timings.
"""

import argparse
import math
import time

import numpy as np

from recurtime import _backend
from recurtime.montecarlo import iid_samples


def best_of(fn, repeat):
    best, out = math.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def mcmc_case(kern, n=6, sweeps=2000, seed=0):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(-math.pi, math.pi, n)
    steps = (math.pi / math.sqrt(n)) * rng.standard_normal((sweeps, n))
    log_u = np.log(rng.random((sweeps, n)))

    def run():
        th = theta.copy()
        acc = kern.mcmc_sweeps(th, steps, log_u)
        return acc, th.tobytes()
    return run


def continuous_case(kern, n=5, eps=0.2, count=200):
    samples = [s.thetas for s in iid_samples(n, count, seed=1)]
    horizon = 1e3 * 4 * eps ** (-(n - 1)) / n
    return lambda: [kern.first_return_continuous(np.ascontiguousarray(s), eps, horizon) for s in samples]


def discrete_case(kern, n=6, eps=0.2, count=200):
    xs = [s.thetas / (2 * math.pi) for s in iid_samples(n, count, seed=2)]
    horizon = int(100 * eps ** (-n))
    return lambda: [tuple(kern.first_return_discrete(np.ascontiguousarray(x), eps, horizon)) for x in xs]


CASES = [
    ("mcmc_sweeps n=6, 2000 sweeps", mcmc_case),
    ("first_return_continuous n=5, 200 samples", continuous_case),
    ("first_return_discrete n=6, 200 samples", discrete_case),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _backend.COMPILED:
        print("compiled kernels unavailable; only the Python backend can be timed")
    print(f"{'kernel':<44}{'compiled [s]':>14}{'python [s]':>14}{'speedup':>10}")
    for name, make in CASES:
        t_py, out_py = best_of(make(_backend.python_kernels), args.repeat)
        if _backend.COMPILED:
            t_c, out_c = best_of(make(_backend.kernels), args.repeat)
            if out_c != out_py:
                raise SystemExit(f"backends disagree on {name}")
            print(f"{name:<44}{t_c:>14.4f}{t_py:>14.4f}{t_py / t_c:>9.1f}x")
        else:
            print(f"{name:<44}{'-':>14}{t_py:>14.4f}{'-':>10}")


if __name__ == "__main__":
    main()
