"""Command-line front end.

Exit codes: 0 success or pass, 1 mathematical failure (no convergence,
bound violated, divergence, input not primitive), 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .collatz import collatz_solve
from .config import SolverConfig
from .errors import DocumentError, DualPerronError, NotIrreducibleError, PreconditionError
from .experiments import DUAL_MODES, generate_primitive, lemma_bound_check, power_decay
from .io import MatrixDocument, read_document, write_document, write_trace_csv
from .perron import perron_eigenpair
from .scalar import DualNumber
from .structure import check_primitive, shift_to_primitive

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _emit(obj):
    print(json.dumps({k: _jsonable(v) for k, v in obj.items()}, indent=2))


def _load(path):
    try:
        return read_document(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    except DocumentError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_x0(source, n):
    if source == "ones":
        return np.ones(n)
    try:
        values = json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read start vector {source}: {exc}") from None
    x0 = np.asarray(values, dtype=np.float64)
    if x0.shape != (n,):
        raise UsageError(f"start vector in {source} must be a JSON array of {n} numbers")
    return x0


def cmd_check(args):
    A = _load(args.file).to_matrix()
    _emit(check_primitive(A).as_dict())
    return EXIT_OK


def cmd_solve(args):
    A = _load(args.file).to_matrix()
    cfg = SolverConfig(tol_s=args.tol_s, tol_d=args.tol_d, max_iter=args.max_iter)
    x0 = _load_x0(args.x0, A.n)
    trace = collatz_solve(A, x0, cfg)
    oracle = perron_eigenpair(A, cfg)
    if args.trace:
        write_trace_csv(args.trace, trace)
    gap = trace.gap[-1]
    result = {
        "lambda_s": trace.final_lambda.s,
        "lambda_d": trace.final_lambda.d,
        "iterations": trace.iterations,
        "converged": trace.converged,
        "gap_s_final": float(gap[0]),
        "gap_d_final": float(gap[1]),
        "fitted_rate_s": trace.fitted_rate_s,
        "fitted_rate_d": trace.fitted_rate_d,
        "eta": trace.eta_theoretical,
        "oracle_lambda_s": oracle.lam.s,
        "oracle_lambda_d": oracle.lam.d,
        "residual_s": oracle.residual_s,
        "residual_d": oracle.residual_d,
    }
    if args.json:
        _emit(result)
    else:
        print(f"lambda        = {trace.final_lambda}")
        print(f"iterations    = {trace.iterations} ({'converged' if trace.converged else 'NOT converged'})")
        print(f"final gap     = ({gap[0]:.3e}, {gap[1]:.3e})")
        print(f"fitted rates  = s: {trace.fitted_rate_s:.6f}  d: {trace.fitted_rate_d:.6f}")
        print(f"eta = sqrt(sigma) = {trace.eta_theoretical:.6f}")
        print(f"direct lambda = {oracle.lam}")
        print(
            f"|difference|  = ({abs(trace.final_lambda.s - oracle.lam.s):.3e}, "
            f"{abs(trace.final_lambda.d - oracle.lam.d):.3e})"
        )
    return EXIT_OK if trace.converged else EXIT_MATH


def cmd_direct(args):
    A = _load(args.file).to_matrix()
    res = perron_eigenpair(A)
    out = {
        "lambda_s": res.lam.s,
        "lambda_d": res.lam.d,
        "x_s": res.x.s.tolist(),
        "x_d": res.x.d.tolist(),
        "residual_s": res.residual_s,
        "residual_d": res.residual_d,
    }
    if args.json:
        _emit(out)
    else:
        print(f"lambda     = {res.lam}")
        print(f"residuals  = ({res.residual_s:.3e}, {res.residual_d:.3e})")
    return EXIT_OK


def cmd_power(args):
    A = _load(args.file).to_matrix()
    report = power_decay(A, args.kmax, args.threshold)
    if args.json:
        _emit(report.as_dict())
    else:
        print(f"rho(A_s) = {report.rho_s:.6f}")
        print(f"k reached = {report.k_values[-1] if report.k_values else 0}")
        if report.k_values:
            print(f"max|A^k_s| = {report.s_maxabs[-1]:.3e}   max|A^k_d| = {report.d_maxabs[-1]:.3e}")
        print(f"verdict = {report.verdict}")
    return EXIT_OK if report.verdict == "converged" else EXIT_MATH


def cmd_lemma(args):
    lam = DualNumber(args.lambda_s, args.lambda_d)
    try:
        chk = lemma_bound_check(lam, args.gamma, args.L, args.eta, args.k, args.grid)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    _emit({"observed_s": chk.observed_s, "observed_d": chk.observed_d, "bound": chk.bound, "pass": chk.passed})
    return EXIT_OK if chk.passed else EXIT_MATH


def cmd_gen(args):
    try:
        A = generate_primitive(args.n, args.density, args.dual_mode, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = MatrixDocument.from_matrix(
        A,
        name=args.name or f"primitive-n{args.n}-s{args.seed}",
        generator="generate_primitive",
        seed=args.seed,
        density=args.density,
        dual_mode=args.dual_mode,
    )
    _write(args.out, doc)
    return EXIT_OK


def cmd_shift(args):
    doc = _load(args.file)
    try:
        B = shift_to_primitive(doc.to_matrix(), args.beta)
    except NotIrreducibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    meta = dict(doc.metadata, shifted_by=args.beta)
    _write(args.out, MatrixDocument.from_matrix(B, **meta))
    return EXIT_OK


def _write(path, doc):
    try:
        write_document(path, doc)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualperron", description="Perron eigenpairs of primitive dual number matrices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify the standard part (nonnegative/irreducible/primitive)")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="run the Collatz method and compare with the direct formula")
    s.add_argument("file")
    s.add_argument("--tol-s", type=float, default=1e-10)
    s.add_argument("--tol-d", type=float, default=1e-10)
    s.add_argument("--max-iter", type=int, default=5000)
    s.add_argument("--x0", default="ones", help="'ones' or a JSON file holding a positive array")
    s.add_argument("--trace", metavar="CSV", help="write the bracket history to this CSV file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("direct", help="closed-form Perron eigenpair")
    d.add_argument("file")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_direct)

    w = sub.add_parser("power", help="track A^k and report whether it tends to zero")
    w.add_argument("file")
    w.add_argument("--kmax", type=int, required=True)
    w.add_argument("--threshold", type=float, default=1e-10)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_power)

    m = sub.add_parser("lemma-check", help="brute-force check of the ratio-spread bound")
    m.add_argument("--lambda-s", type=float, required=True)
    m.add_argument("--lambda-d", type=float, default=0.0)
    m.add_argument("--gamma", type=float, required=True)
    m.add_argument("--L", type=float, required=True)
    m.add_argument("--eta", type=float, required=True)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--grid", type=int, default=7)
    m.set_defaults(func=cmd_lemma)

    g = sub.add_parser("gen", help="write a seeded random primitive matrix document")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--dual-mode", choices=DUAL_MODES, default="nonnegative")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--name")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("shift", help="add beta*I to the standard part of an irreducible matrix")
    h.add_argument("file")
    h.add_argument("--beta", type=float, default=1.0)
    h.add_argument("--out", required=True)
    h.set_defaults(func=cmd_shift)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DualPerronError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


run_cli = main

if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
