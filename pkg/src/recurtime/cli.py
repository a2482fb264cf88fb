"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 numerical failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import abia, asymptotics, montecarlo, scan as scanmod, toeplitz, windows
from .errors import DomainError, NumericalError
from .output import emit_csv, emit_json, fmt

EX_OK, EX_DOMAIN, EX_NUMERIC, EX_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EX_USAGE)


def _emit_logprob(res: toeplitz.LogProb, args):
    if getattr(args, "json", None):
        emit_json(res, args.json)
        return
    emit_csv([(res.log_value, res.prob, res.method.value)], None, ["log_prob", "prob", "method"])
    for d in res.diagnostics:
        print(f"warning: {d}", file=sys.stderr)


def cmd_windows(args):
    w = windows.build_window(args.t, args.eps)
    print(f"# regime: {w.regime}")
    print(f"# measure: {fmt(w.measure)}")
    emit_csv(w.intervals, None, ["lo", "hi"])


def cmd_exact(args):
    _emit_logprob(toeplitz.log_prob_exact(args.n, args.t, args.eps, max_dim=args.max_dim), args)


def cmd_asympt(args):
    if windows.classify(args.t, args.eps).kind is windows.RegimeKind.INITIAL:
        res = toeplitz.LogProb(0.0, toeplitz.Method.CLOSED_FORM, ("t <= eps: certain return",))
    elif asymptotics.one_cut_applies(args.t, args.eps):
        res = asymptotics.widom_log_prob(args.n, args.t, args.eps, order=args.order, constant=args.constant)
    elif float(args.t).is_integer():
        res = asymptotics.integer_time_log_prob(args.n, int(args.t), args.eps)
    else:
        raise DomainError("asymptotic expansions exist for eps <= t <= 2 - eps and integer t only")
    _emit_logprob(res, args)


def cmd_abia(args):
    if args.fractions:
        sol = abia.abia_solution(args.t, args.eps)
        if args.json:
            emit_json(sol, args.json)
            return
        print(f"log_prob_over_n2,{fmt(sol.log_prob_over_n2)}")
        print(f"valid,{fmt(sol.valid)}")
        print("fraction")
        for f in sol.filling_fractions:
            print(fmt(f))
        return
    value = abia.abia_log_prob_over_n2(args.t, args.eps)
    if args.json:
        emit_json({"log_prob_over_n2": value, "method": "abia"}, args.json)
        return
    emit_csv([(value, "abia")], None, ["log_prob_over_n2", "method"])


def cmd_weak(args):
    _emit_logprob(asymptotics.weak_log_prob(args.n, args.t, args.delta), args)


def cmd_real(args):
    _emit_logprob(asymptotics.real_log_prob(args.n, args.t, args.delta, method=args.method), args)


def cmd_threshold(args):
    emit_csv([(asymptotics.threshold_time(args.delta),)], None, ["t_c"])


def cmd_recurrence(args):
    emit_csv([(asymptotics.recurrence_estimate(args.n, args.delta),)], None, ["estimate"])


def cmd_scan(args):
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    grid = scanmod.t_grid(args.t_min, args.t_max, args.t_step)
    threads = montecarlo.resolve_threads(args.threads)
    rows = scanmod.scan(args.n, args.eps, grid, methods, threads)
    emit_csv(rows, args.out, ["t", "log_prob", "log_prob_over_n2", "method"])


def cmd_mc_first_return(args):
    recs = montecarlo.run_first_return(
        args.n, args.eps, args.samples, model=args.model, time=args.time, seed=args.seed,
        horizon_mult=args.horizon_mult, threads=args.threads)
    rows = [(i, r.tau, r.normalized, r.horizon_hit) for i, r in enumerate(recs)]
    emit_csv(rows, args.out, ["sample_id", "tau", "normalized", "horizon_hit"])


def read_records(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return [montecarlo.FirstReturnRecord(float(r["tau"]), float(r["normalized"]), 0,
                                             r["horizon_hit"].strip().lower() in ("true", "1"))
                for r in csv.DictReader(fh)]


def cmd_mc_fit(args):
    fit = montecarlo.fit_exponential(read_records(args.inp))
    emit_csv([(fit.lambda_hat, fit.ks_statistic, fit.ks_p_value, fit.n_samples, fit.n_censored)],
             None, ["lambda_hat", "ks_statistic", "ks_p_value", "n_samples", "n_censored"])


def cmd_validate(args):
    from .validate import run_checks

    results = run_checks(args.only)
    width = max(len(r.name) for r in results) if results else 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  error={r.error:.3e}  tol={r.tolerance:.1e}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed} passed, {failed} failed")
    return EX_OK if failed == 0 else EX_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="recurtime", description="Return probabilities of powers of Haar unitaries.")
    p.add_argument("--threads", type=int, default=None,
                   help="worker count (default: all CPUs; RECUR_THREADS overrides)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("windows", cmd_windows, "print the return window I(t)")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)

    sp = add("exact", cmd_exact, "exact log-probability from the Toeplitz determinant")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--max-dim", type=int, default=toeplitz.MAX_DIM)
    sp.add_argument("--json", metavar="PATH")

    sp = add("asympt", cmd_asympt, "large-N expansion (one cut or integer time)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--order", choices=("leading", "full"), default="full")
    sp.add_argument("--constant", choices=("recursion", "classical"), default="recursion")
    sp.add_argument("--json", metavar="PATH")

    sp = add("abia", cmd_abia, "average block interaction approximation of ln P / N^2")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--fractions", action="store_true")
    sp.add_argument("--json", metavar="PATH")

    for name, fn, what in (("weak", cmd_weak, "|Tr U^t|"), ("real", cmd_real, "Re Tr U^t")):
        sp = add(name, fn, f"return estimate for {what} >= (1 - delta) N")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--t", type=float, required=True)
        sp.add_argument("--delta", type=float, required=True)
        sp.add_argument("--json", metavar="PATH")
        if name == "real":
            sp.add_argument("--method", choices=("asymptotic", "erfc"), default="asymptotic")

    sp = add("threshold", cmd_threshold, "first t with sinc(pi t) = 1 - delta")
    sp.add_argument("--delta", type=float, required=True)

    sp = add("recurrence", cmd_recurrence, "typical first weak-return time")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--delta", type=float, required=True)

    sp = add("scan", cmd_scan, "evaluate methods on a t grid and write CSV")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--t-min", type=float, required=True)
    sp.add_argument("--t-max", type=float, required=True)
    sp.add_argument("--t-step", type=float, required=True)
    sp.add_argument("--method", default="exact", help="comma list of exact,abia,asympt")
    sp.add_argument("--out", default="-")

    sp = add("mc-first-return", cmd_mc_first_return, "first-return-time Monte Carlo")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--model", choices=(montecarlo.CUE, montecarlo.IID), default=montecarlo.CUE)
    sp.add_argument("--time", choices=("continuous", "discrete"), default="continuous")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--horizon-mult", type=float, default=None)
    sp.add_argument("--out", default="-")

    sp = add("mc-fit", cmd_mc_fit, "fit Exp(lambda) to a mc-first-return CSV")
    sp.add_argument("--in", dest="inp", required=True)

    sp = add("validate", cmd_validate, "run the built-in invariant checks")
    sp.add_argument("--only", nargs="*", default=None, help="substrings of check names to run")
    return p


def dispatch(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DOMAIN
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EX_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DOMAIN
    return EX_OK if code is None else code


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
