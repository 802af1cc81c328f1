"""Command-line front end: ``python -m jplab`` or the ``jplab`` script.

Exit codes: 0 all contracted checks pass, 1 some check fails (the report is
still written), 2 usage or domain error, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import asymptotics, jensen, kernels, transform
from ._parallel import parallel_iter, worker_count
from .characters import character, enumerate_fundamental_discriminants, functional_equation_residual
from .errors import AccuracyError, CapabilityError, DomainError, RangeError
from .report import CsvSink, plain, to_csv, to_json
from .verify import SUITES, run_all


class UsageError(Exception):
    pass


class Result:
    """What a subcommand produced: a JSON payload, CSV rows and an overall verdict."""

    def __init__(self, payload, rows, passed=True, columns=None, streamed=False):
        self.payload = payload
        self.rows = rows
        self.passed = passed
        self.columns = columns
        self.streamed = streamed


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _grid(text: str) -> np.ndarray:
    try:
        a, b, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:step, got {text!r}")
    if step <= 0 or b < a:
        raise argparse.ArgumentTypeError("grid needs a <= b and step > 0")
    count = int(np.floor((b - a) / step + 1e-9)) + 1
    return a + step * np.arange(count)


def _desc(args):
    return kernels.descriptor(getattr(args, "kind", "riemann"), getattr(args, "d", None))


# ------------------------------------------------------------------ xi


def cmd_xi_eval(args):
    desc = _desc(args)
    rows = []
    for z in args.z:
        res = transform.cosine_transform(desc, z, full_output=True)
        rows.append({"z": res.z, "value": res.value, "err_estimate": res.err_estimate})
    return Result({"kernel": desc.label, "results": rows}, rows)


def cmd_xi_zeros(args):
    desc = _desc(args)
    found = transform.find_real_zeros(desc, args.z_max, args.step, workers=args.workers)
    rows = [{"lo": b.lo, "hi": b.hi, "root": b.refined_root, "residual": b.residual} for b in found]
    return Result({"kernel": desc.label, "z_max": args.z_max, "step": args.step, "roots": rows}, rows,
                  columns=["lo", "hi", "root", "residual"])


# ------------------------------------------------------------------ phi


def cmd_phi_eval(args):
    desc = _desc(args)
    t = np.asarray(args.t)
    logabs, sign = kernels.log_abs_phi(desc, t)
    vals = kernels.phi(desc, t)
    rows = [{"t": float(a), "value": float(v), "log_abs": float(la), "sign": int(s)}
            for a, v, la, s in zip(t, vals, logabs, sign)]
    return Result({"kernel": desc.label, "results": rows}, rows)


_SCAN_COLUMNS = ["kernel", "t_max", "step", "n_points", "min_value", "min_log_abs", "min_sign", "argmin",
                 "sign_changes", "evenness_residual"]


def _scan_one(spec):
    d, t_max, step = spec
    desc = kernels.RIEMANN if d is None else kernels.character_kernel(d)
    rep = plain(kernels.positivity_scan(desc, t_max, step))
    grid = kernels.scan_grid(t_max, step)
    rep["evenness_residual"] = float(np.max(kernels.evenness_residual(desc, grid)))
    return rep


def cmd_phi_scan(args):
    if args.all_d is not None:
        ds = enumerate_fundamental_discriminants(args.all_d)
    else:
        ds = [_desc(args).character.discriminant if args.d is not None else None]
    tasks = [(d, args.t_max, args.step) for d in ds]
    stream = args.format == "csv" and args.all_d is not None
    rows = []
    sink = CsvSink(args.out_stream, _SCAN_COLUMNS) if stream else None
    for rep in parallel_iter(_scan_one, tasks, args.workers):
        rows.append(rep)
        if sink:
            sink.write(rep)
    payload = rows[0] if len(rows) == 1 and args.all_d is None else {"scans": rows}
    return Result(payload, rows, columns=_SCAN_COLUMNS, streamed=stream)


# ------------------------------------------------------------------ char


def cmd_char_list(args):
    rows = []
    for d in enumerate_fundamental_discriminants(args.bound):
        chi = character(d)
        rows.append({"discriminant": d, "modulus": chi.modulus, "parity": chi.parity_a})
    return Result({"bound": args.bound, "characters": rows}, rows)


def cmd_char_theta_check(args):
    chi = character(args.d)
    rows = []
    for x in args.x:
        r = functional_equation_residual(chi, x)
        rows.append({"d": chi.discriminant, "x": x, "residual": r, "pass": r <= args.tol})
    ok = all(r["pass"] for r in rows)
    return Result({"d": chi.discriminant, "tolerance": args.tol, "results": rows, "pass": ok}, rows, ok)


# ------------------------------------------------------------------ jensen


def cmd_jensen_fn(args):
    desc = _desc(args)
    spec = transform.QuadratureSpec(tolerance=args.tol)
    xs = args.x_grid
    if args.route == "reduced":
        vals, _ = jensen.f_n_reduced_grid(desc, xs, args.n, spec)
    elif args.route == "direct":
        vals = [jensen.f_n_direct(desc, x, args.n, spec) for x in xs]
    else:
        vals = [jensen.f_n_oracle(desc, x, args.n) for x in xs]
    floor = -10 * args.tol
    rows = [{"n": args.n, "x": float(x), "value": float(v), "pass": bool(v >= floor)} for x, v in zip(xs, vals)]
    ok = all(r["pass"] for r in rows)
    i = int(np.argmin(vals))
    payload = {"kernel": desc.label, "n": args.n, "route": args.route, "contract": f">= {floor:g}",
               "min": float(vals[i]), "argmin": float(xs[i]), "results": rows, "pass": ok}
    return Result(payload, rows, ok)


def cmd_jensen_surrogate(args):
    desc = _desc(args)
    if args.mode == "scaled":
        rows = []
        limit = jensen.f_n_reduced(desc, args.x, args.n) / 2
        for N in args.N_ladder:
            v = jensen.surrogate_scaled(desc, args.x, args.n, args.beta, N)
            rows.append({"N": N, "value": v, "limit": limit, "abs_diff": abs(v - limit)})
        return Result({"kernel": desc.label, "mode": "scaled", "beta": args.beta, "x": args.x, "n": args.n,
                       "results": rows}, rows)
    reps = jensen.surrogate_ladder(desc, args.x, args.n, args.beta, args.N_ladder)
    rows = [plain(r) for r in reps]
    for r in rows:
        r.pop("ladder", None)
    first = reps[0]
    checks = {
        "split": all(r.split_residual <= 1e-8 for r in reps),
        "I2_lower_bound": all(r.I2 >= r.I2_lower_bound - 1e-8 for r in reps),
        "I1_slope": bool(abs(first.fitted_slope + 0.5) <= 0.15),
        "N0_exists": first.N0_empirical is not None,
    }
    payload = {"kernel": desc.label, "mode": "literal", "beta": args.beta, "x": args.x, "n": args.n,
               "ladder": list(first.ladder), "fitted_slope": first.fitted_slope, "raw_slope": first.raw_slope,
               "majorant_slope": first.majorant_slope, "N0_empirical": first.N0_empirical,
               "checks": checks, "results": rows, "pass": all(checks.values())}
    return Result(payload, rows, all(checks.values()))


# ------------------------------------------------------------------ asymp


def _report_rows(rep):
    rows = []
    for i, n in enumerate(rep.n_ladder):
        row = {"check_id": rep.check_id, "n": n}
        if rep.sup_residual:
            row["sup_residual"] = rep.sup_residual[i]
        if rep.rung_constants:
            row["constant"] = rep.rung_constants[i]
        for key, val in rep.extra.items():
            if isinstance(val, list) and len(val) == len(rep.n_ladder):
                row[key] = val[i]
        rows.append(row)
    if not rows:
        rows.append({"check_id": rep.check_id, "constant": rep.empirical_constant, "pass": rep.passed})
    return rows


def cmd_asymp_limits(args):
    if args.bessel_alpha is not None:
        reps = [asymptotics.bessel_limit_check(args.bessel_alpha, args.beta, n_ladder=args.ladder)]
    else:
        reps = list(asymptotics.cosine_limit_check(args.beta, n_ladder=args.ladder))
    rows = [r for rep in reps for r in _report_rows(rep)]
    ok = all(rep.passed for rep in reps)
    return Result({"reports": [plain(r) for r in reps], "pass": ok}, rows, ok)


def cmd_asymp_bounds(args):
    which = args.which
    if which in ("growth", "growth-normalized"):
        reps = [asymptotics.growth_bound_check(args.lam, args.ladder or (64, 128, 256, 512, 1024), args.c,
                                               normalized=which == "growth-normalized")]
    elif which == "i-bound":
        reps = [asymptotics.i_bound_check(a) for a in args.alphas]
    elif which == "coefficient":
        reps = [asymptotics.coefficient_bound_check(args.alpha, args.beta, args.ladder or (10, 20, 40, 80, 160))]
    elif which == "polynomial":
        reps = [asymptotics.polynomial_bound_check(args.alpha, args.beta, n_ladder=args.ladder or (64, 128, 256, 512, 1024))]
    else:
        reps = [asymptotics.cosine_limit_check(args.beta, n_ladder=args.ladder or (64, 128, 256, 512))[1]]
    rows = []
    for rep in reps:
        if rep.check_id == "i-bound":
            rows.append({"check_id": rep.check_id, "alpha": rep.extra["alpha"], "constant": rep.empirical_constant,
                         "pass": rep.passed})
        else:
            rows.extend(_report_rows(rep))
    ok = all(rep.passed for rep in reps)
    return Result({"reports": [plain(r) for r in reps], "pass": ok}, rows, ok)


# ------------------------------------------------------------------ verify


def cmd_verify_all(args):
    checks = run_all(args.suite)
    rows = [c.row() for c in checks]
    ok = all(c.passed for c in checks)
    summary = {}
    for c in checks:
        summary.setdefault(c.suite, []).append(c.check_id)
    return Result({"pass": ok, "suites": summary, "checks": rows}, rows, ok,
                  columns=["suite", "check_id", "statement", "value", "contract", "pass"])


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default json)")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--workers", type=int, default=None, help="process count (default: $JPL_WORKERS or 1)")

    kern = argparse.ArgumentParser(add_help=False)
    kern.add_argument("--kind", choices=("riemann", "character"), default="riemann")
    kern.add_argument("--d", type=int, default=None, help="fundamental discriminant of a real primitive character")

    p = argparse.ArgumentParser(prog="jplab", description="Numerical checks around the Riemann Xi function and Jensen positivity.")
    sub = p.add_subparsers(dest="group", required=True)

    g = sub.add_parser("xi", help="Xi(z) = int_0^inf Phi(t) cos(z t) dt").add_subparsers(dest="action", required=True)
    s = g.add_parser("eval", parents=[common, kern], help="Xi(z), or Xi(z, chi) with --d, by cosine transform of the kernel")
    s.add_argument("--z", type=_floats, required=True, help="comma-separated arguments")
    s.set_defaults(func=cmd_xi_eval)
    s = g.add_parser("zeros", parents=[common, kern], help="real zeros of Xi by sign-change scan and bisection")
    s.add_argument("--z-max", type=float, required=True)
    s.add_argument("--step", type=float, default=0.1)
    s.set_defaults(func=cmd_xi_zeros)

    g = sub.add_parser("phi", help="theta kernels Phi(t) and Phi(t, chi|a)").add_subparsers(dest="action", required=True)
    s = g.add_parser("eval", parents=[common, kern], help="kernel values from the defining theta series")
    s.add_argument("--t", type=_floats, required=True)
    s.set_defaults(func=cmd_phi_eval)
    s = g.add_parser("scan", parents=[common, kern], help="minimum, argmin and sign changes of the kernel on [0, t_max]")
    s.add_argument("--t-max", type=float, required=True)
    s.add_argument("--step", type=float, required=True)
    s.add_argument("--all-d", type=int, default=None, metavar="BOUND",
                   help="scan every character kernel with |d| <= BOUND (CSV rows are flushed as they finish)")
    s.set_defaults(func=cmd_phi_scan)

    g = sub.add_parser("char", help="real primitive characters (Kronecker symbols)").add_subparsers(dest="action", required=True)
    s = g.add_parser("list", parents=[common], help="fundamental discriminants |d| <= bound with modulus and parity")
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(func=cmd_char_list)
    s = g.add_parser("theta-check", parents=[common],
                     help="residual of theta(chi, x) = x^(-1/2-a) theta(chi, 1/x)")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--x", type=_floats, default=[0.3, 0.5, 1.0, 2.0, 3.0])
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_char_theta_check)

    g = sub.add_parser("jensen", help="Jensen functionals f_n and the ultraspherical surrogate").add_subparsers(dest="action", required=True)
    s = g.add_parser("fn", parents=[common, kern],
                     help="f_n(x) = int int Psi(s) Psi(t) cos((s+t)x) (s-t)^2n ds dt on a grid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x-grid", type=_grid, required=True, metavar="A:B:STEP")
    s.add_argument("--route", choices=("reduced", "direct", "oracle"), default="reduced")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_jensen_fn)
    s = g.add_parser("surrogate", parents=[common, kern],
                     help="g_N(x) = int c_4N^(b+1/2)(u x) h_n(u) du split at u = 1/x into I1 + I2")
    s.add_argument("--beta", type=float, default=0.0)
    s.add_argument("--N-ladder", dest="N_ladder", type=_ints, default=[16, 32, 64, 128])
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=("literal", "scaled"), default="literal",
                   help="literal: argument u x; scaled: Gamma(b+1/2)(2N)^(1/2-b) C_4N(u x/4N), tends to f_n(x)/2")
    s.set_defaults(func=cmd_jensen_surrogate)

    g = sub.add_parser("asymp", help="polynomial limits and bounds along degree ladders").add_subparsers(dest="action", required=True)
    s = g.add_parser("limits", parents=[common],
                     help="(2n)^(1/2-b) Gamma(b+1/2) C_4n(z/4n) -> cos z; with --bessel-alpha, n^-a P_n(1-z^2/2n^2) -> (z/2)^-a J_a(z)")
    s.add_argument("--beta", type=float, default=0.0)
    s.add_argument("--ladder", type=_ints, default=[64, 128, 256, 512])
    s.add_argument("--bessel-alpha", type=float, default=None)
    s.set_defaults(func=cmd_asymp_limits)
    s = g.add_parser("bounds", parents=[common], help="empirical constants of the polynomial and Bessel bounds")
    s.add_argument("--which", required=True,
                   choices=("growth", "growth-normalized", "i-bound", "coefficient", "polynomial", "lemma"),
                   help="growth: C_n(cos t) growth in t and n; i-bound: |I_a(z)| <= e^|z|(|z|/2)^a/Gamma(a+1); "
                        "coefficient: series coefficients vs 1/(k! Gamma(a+k+1)); polynomial: n^-a P_n vs |z|^-a I_a(2|z|); "
                        "lemma: n^(1/2-b) C_4n(z/4n) vs D cosh(2|z|)")
    s.add_argument("--alpha", type=float, default=-0.5)
    s.add_argument("--alphas", type=_floats, default=[-0.4, 0.0, 0.5, 2.0])
    s.add_argument("--beta", type=float, default=0.0)
    s.add_argument("--lam", type=float, default=0.5)
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--ladder", type=_ints, default=None)
    s.set_defaults(func=cmd_asymp_bounds)

    g = sub.add_parser("verify", help="run the verification suites").add_subparsers(dest="action", required=True)
    s = g.add_parser("all", parents=[common], help="every suite, one row per check")
    s.add_argument("--suite", action="append", choices=tuple(SUITES), help="restrict to a suite (repeatable)")
    s.set_defaults(func=cmd_verify_all)
    return p


def _render(args, result: Result) -> str:
    if args.format == "json":
        return to_json(result.payload)
    return to_csv(result.rows, result.columns)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.workers = worker_count(args.workers)
    try:
        with contextlib.ExitStack() as stack:
            if args.output:
                try:
                    out = stack.enter_context(open(args.output, "w", encoding="utf-8", newline=""))
                except OSError as exc:
                    print(f"jplab: cannot open {args.output}: {exc}", file=sys.stderr)
                    return 3
            else:
                out = sys.stdout
            args.out_stream = out
            result = args.func(args)
            if not result.streamed:
                out.write(_render(args, result))
            out.flush()
    except (DomainError, CapabilityError, RangeError) as exc:
        print(f"jplab: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"jplab: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"jplab: I/O error: {exc}", file=sys.stderr)
        return 3
    return 0 if result.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
