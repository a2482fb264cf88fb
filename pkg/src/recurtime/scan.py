"""Grid sweeps over t producing the series plotted against (1/N^2) ln P."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .abia import abia_log_prob_over_n2
from .asymptotics import integer_time_log_prob, one_cut_applies, widom_log_prob
from .errors import DomainError
from .toeplitz import log_prob_exact
from .windows import RegimeKind, classify

METHODS = ("exact", "abia", "asympt")


@dataclass(frozen=True)
class ScanRow:
    t: float
    log_prob: float
    log_prob_over_n2: float
    method: str

    def as_tuple(self):
        return (self.t, self.log_prob, self.log_prob_over_n2, self.method)


def t_grid(t_min: float, t_max: float, t_step: float) -> list[float]:
    """Inclusive grid t_min + i*t_step, rounded to 12 decimals to kill drift."""
    if not (t_step > 0 and t_max >= t_min > 0):
        raise DomainError("need 0 < t_min <= t_max and t_step > 0")
    count = int(math.floor((t_max - t_min) / t_step + 1e-9)) + 1
    return [round(t_min + i * t_step, 12) for i in range(count)]


def scan_point(n: int, eps: float, t: float, method: str) -> ScanRow | None:
    """One grid point; None when the method does not apply at this t."""
    n2 = float(n * n)
    if method == "exact":
        lp = log_prob_exact(n, t, eps).log_value
        return ScanRow(t, lp, lp / n2, method)
    regime = classify(t, eps)
    if regime.kind is RegimeKind.INITIAL:
        return ScanRow(t, 0.0, 0.0, method)
    if method == "abia":
        v = abia_log_prob_over_n2(t, eps)
        return ScanRow(t, v * n2, v, method)
    if method == "asympt":
        if one_cut_applies(t, eps):
            lp = widom_log_prob(n, t, eps).log_value
        elif float(t).is_integer():
            lp = integer_time_log_prob(n, int(t), eps).log_value
        else:
            return None
        return ScanRow(t, lp, lp / n2, method)
    raise DomainError(f"unknown scan method {method!r}")


def _point(args):
    return scan_point(*args)


def scan(n: int, eps: float, grid, methods=("exact",), threads: int = 1) -> list[ScanRow]:
    """Evaluate every method on every grid point; rows sorted by (t, method)."""
    for m in methods:
        if m not in METHODS:
            raise DomainError(f"unknown scan method {m!r}; choose from {', '.join(METHODS)}")
    jobs = [(n, eps, t, m) for t in grid for m in methods]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_point, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
    else:
        rows = [_point(j) for j in jobs]
    order = {m: i for i, m in enumerate(methods)}
    rows = [r for r in rows if r is not None]
    rows.sort(key=lambda r: (r.t, order[r.method]))
    return rows
