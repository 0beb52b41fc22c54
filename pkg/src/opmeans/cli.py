"""Command-line interface: evaluate, solve, chain, check, and sweep.

Exit codes: 0 = success (or a check that found nothing), 1 = a check ran and
found a refutation or violation (the witness is on stdout), 2 = usage or
input error (message on stderr). Every report starts with a "config" header
echoing the effective tolerance, trial count, seed, matrix size, and
condition cap so runs are reproducible; all numbers are printed with 17
significant digits.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import List, Optional

import numpy as np

from . import jsonio
from .errors import OpmeansError, UsageError
from .funcexpr import parse_function
from .hdensity import (SELF_ADJOINT, SYMMETRIC, HDensity, eval_selfadjoint_rep,
                       eval_symmetric_rep, selfadjoint_rep_derivative,
                       symmetric_rep_derivative)
from .means import (CLASS_BOTH, CLASS_SELF_ADJOINT, CLASS_SYMMETRIC,
                    MeanDescriptor, eval_mean, parse_mean_descriptor,
                    representing_function)
from .monocheck import MonoConfig, is_operator_monotone_sampled
from .orders import ka_condition_check, order_leq_sa, order_leq_sym, phi_profile
from .solvers import (build_monotone_chain, solve_geom_heinz_matrix,
                      solve_heinz_heron_matrix, solve_matrix_pair)
from .spd import SpdMatrix, matrix_from_json_dict, matrix_to_json_dict

DEFAULT_TOL = 1e-8
DEFAULT_TRIALS = 1000
DEFAULT_SEED = 42
DEFAULT_N = 3
DEFAULT_COND_CAP = 100.0


def _config_echo(args) -> dict:
    return {"tol": float(getattr(args, "tol", DEFAULT_TOL)),
            "trials": int(getattr(args, "trials", DEFAULT_TRIALS)),
            "seed": int(getattr(args, "seed", DEFAULT_SEED)),
            "n": int(getattr(args, "n", DEFAULT_N)),
            "cond_cap": float(getattr(args, "cond_cap", DEFAULT_COND_CAP))}


def _load_spd(path: str) -> np.ndarray:
    data = jsonio.load_file(path)
    return SpdMatrix(matrix_from_json_dict(data)).entries


def _parse_float_list(text: str) -> List[float]:
    try:
        values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad float list {text!r}") from None
    if not values:
        raise UsageError("no evaluation points given")
    return values


def _parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid spec must be lo:hi:count, got {spec!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"bad grid spec {spec!r}") from None
    if count < 0:
        raise UsageError("grid count must be non-negative")
    return np.linspace(lo, hi, count) if count else np.empty(0)


def _cmd_eval_mean(args) -> tuple:
    descriptor = parse_mean_descriptor(args.mean)
    value = eval_mean(_load_spd(args.a), _load_spd(args.b), descriptor)
    return ({"config": _config_echo(args),
             "mean": descriptor.describe(),
             "value": matrix_to_json_dict(value)}, 0)


def _cmd_rep_eval(args) -> tuple:
    if (args.density is None) == (args.constant is None):
        raise UsageError("pass exactly one of --density or --constant")
    if args.density is not None:
        h = HDensity.from_json_dict(jsonio.load_file(args.density))
    else:
        cls = SYMMETRIC if args.domain_class == "sym" else SELF_ADJOINT
        h = HDensity.constant(args.constant, cls)
    points = np.array(_parse_float_list(args.t))
    if h.domain_class == SYMMETRIC:
        values = eval_symmetric_rep(h, points)
        slopes = symmetric_rep_derivative(h, points)
    else:
        values = eval_selfadjoint_rep(h, points)
        slopes = selfadjoint_rep_derivative(h, points)
    return ({"config": _config_echo(args),
             "class": h.domain_class,
             "t": points.tolist(),
             "value": np.asarray(values).tolist(),
             "derivative": np.asarray(slopes).tolist()}, 0)


def _cmd_solve_pair(args) -> tuple:
    descriptor = parse_mean_descriptor(args.mean)
    witness = solve_matrix_pair(descriptor, _load_spd(args.x), _load_spd(args.y))
    payload = {"config": _config_echo(args), "mean": descriptor.describe()}
    payload.update(witness.to_json_dict())
    return payload, 0


def _cmd_solve_heinz_heron(args) -> tuple:
    if args.targets == "heinz-heron":
        witness = solve_heinz_heron_matrix(args.s, _load_spd(args.x),
                                           _load_spd(args.y))
    else:
        witness = solve_geom_heinz_matrix(args.s, _load_spd(args.x),
                                          _load_spd(args.y))
    payload = {"config": _config_echo(args), "s": float(args.s),
               "targets": args.targets}
    payload.update(witness.to_json_dict())
    return payload, 0


def _cmd_chain(args) -> tuple:
    descriptor = parse_mean_descriptor(args.mean)
    witness = build_monotone_chain(descriptor, _load_spd(args.x),
                                   _load_spd(args.y), gamma0=args.gamma0)
    payload = {"config": _config_echo(args), "mean": descriptor.describe()}
    payload.update(witness.to_json_dict())
    return payload, 0


def _cmd_check_monotone(args) -> tuple:
    fn = parse_function(args.fn)
    config = MonoConfig(trials=args.trials, seed=args.seed, tol=args.tol)
    verdict = is_operator_monotone_sampled(fn, None, config)
    payload = {"config": _config_echo(args), "fn": fn.source}
    payload.update(verdict.to_json_dict())
    return payload, (1 if verdict.refuted else 0)


def _infer_order_class(f, g) -> str:
    classes = {f.symmetry_class, g.symmetry_class}
    if classes <= {CLASS_SYMMETRIC, CLASS_BOTH}:
        return "sym"
    if classes <= {CLASS_SELF_ADJOINT, CLASS_BOTH}:
        return "sa"
    raise UsageError(
        "the two means live in different symmetry classes; no common order")


def _cmd_check_order(args) -> tuple:
    df = parse_mean_descriptor(args.f)
    dg = parse_mean_descriptor(args.g)
    ff = representing_function(df)
    gg = representing_function(dg)
    order_class = args.order_class
    if order_class == "auto":
        order_class = _infer_order_class(ff, gg)
    config = MonoConfig(trials=args.trials, seed=args.seed, tol=args.tol)
    if order_class == "sym":
        verdict = order_leq_sym(ff, gg, config)
    else:
        verdict = order_leq_sa(ff, gg, config)
    payload = {"config": _config_echo(args), "f": df.describe(),
               "g": dg.describe(), "order_class": order_class}
    payload.update(verdict.to_json_dict())
    return payload, (1 if verdict.refuted else 0)


def _cmd_ka_check(args) -> tuple:
    sigma = parse_mean_descriptor(args.sigma)
    tau = parse_mean_descriptor(args.tau)
    report = ka_condition_check(sigma, tau, trials=args.trials,
                                seed=args.seed, tol=args.tol, n=args.n)
    payload = {"config": _config_echo(args)}
    payload.update((k, v) for k, v in report.to_json_dict().items()
                   if k != "config")
    return payload, (0 if report.ok else 1)


_MARGIN_COLUMNS = ["s", "geometric", "heinz", "heron", "arithmetic",
                   "heinz_minus_geometric", "heron_minus_heinz",
                   "arithmetic_minus_heron"]
_GAMMA_COLUMNS = ["s", "gamma", "gamma_is_infinite"]


def _margin_rows(a: float, b: float, grid: np.ndarray) -> list:
    rows = []
    geo = math.sqrt(a * b)
    arith = 0.5 * (a + b)
    for s in grid:
        s = float(s)
        alpha2 = (2.0 * s - 1.0) ** 2
        heinz = 0.5 * (a ** s * b ** (1.0 - s) + a ** (1.0 - s) * b ** s)
        heron = alpha2 * arith + (1.0 - alpha2) * geo
        rows.append([s, geo, heinz, heron, arith,
                     heinz - geo, heron - heinz, arith - heron])
    return rows


def _gamma_rows(family: str, grid: np.ndarray) -> list:
    rows = []
    for s in grid:
        descriptor = MeanDescriptor(family, param=float(s))
        profile = phi_profile(representing_function(descriptor))
        rows.append([float(s), profile.gamma, math.isinf(profile.gamma)])
    return rows


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, float):
        return jsonio.format_float(value)
    return str(value)


def _cmd_sweep(args) -> tuple:
    grid = _parse_grid(args.grid)
    if args.kind == "margins":
        if args.a is None or args.b is None:
            raise UsageError("margins sweep needs --a and --b")
        if not (args.a > 0.0 and args.b > 0.0 and math.isfinite(args.a)
                and math.isfinite(args.b)):
            raise UsageError("--a and --b must be finite positive reals")
        columns = _MARGIN_COLUMNS
        rows = _margin_rows(args.a, args.b, grid)
    else:
        if args.family is None:
            raise UsageError("gamma sweep needs --family")
        columns = _GAMMA_COLUMNS
        rows = _gamma_rows(args.family, grid)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format_cell(v) for v in row])
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    return ({"config": _config_echo(args), "kind": args.kind,
             "rows": len(rows), "columns": columns, "out": args.out}, 0)


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad usage as an exception, not a process exit."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="opmeans",
                     description="Operator means on positive definite "
                                 "matrices: evaluation, inverse problems, "
                                 "chains, and monotonicity checks.")
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="numerical tolerance (default 1e-8)")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                        help="random trials (default 1000)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="RNG seed (default 42)")

    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    p = sub.add_parser("eval-mean", help="evaluate a mean of two SPD matrices")
    p.add_argument("--mean", required=True, help="mean spec, e.g. heinz:0.25")
    p.add_argument("--a", required=True, help="JSON file with matrix A")
    p.add_argument("--b", required=True, help="JSON file with matrix B")
    p.set_defaults(handler=_cmd_eval_mean)

    p = sub.add_parser("rep-eval",
                       help="evaluate a density-generated representing function")
    p.add_argument("--density", help="JSON file with a density")
    p.add_argument("--constant", type=float,
                   help="constant density value in [0, 1]")
    p.add_argument("--domain-class", choices=("sym", "sa"), default="sym",
                   help="density class when using --constant (default sym)")
    p.add_argument("--t", required=True, help="comma-separated points, all > 0")
    p.set_defaults(handler=_cmd_rep_eval)

    p = sub.add_parser("solve-pair", parents=[common],
                       help="find (A, B) with geometric mean X and sigma-mean Y")
    p.add_argument("--mean", required=True)
    p.add_argument("--x", required=True, help="JSON file with target X")
    p.add_argument("--y", required=True, help="JSON file with target Y")
    p.set_defaults(handler=_cmd_solve_pair)

    p = sub.add_parser("solve-heinz-heron", parents=[common],
                       help="find (A, B) hitting Heinz/Heron or "
                            "geometric/Heinz targets")
    p.add_argument("--s", type=float, required=True,
                   help="family parameter, s != 1/2")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--targets", choices=("heinz-heron", "geom-heinz"),
                   default="heinz-heron")
    p.set_defaults(handler=_cmd_solve_heinz_heron)

    p = sub.add_parser("chain", parents=[common],
                       help="connect X <= Y by a bounded-ratio monotone chain")
    p.add_argument("--mean", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--gamma0", type=float, default=None,
                   help="ratio bound; default sqrt(gamma), or 2 if gamma "
                        "is infinite")
    p.set_defaults(handler=_cmd_chain)

    p = sub.add_parser("check-monotone", parents=[common],
                       help="sampled operator-monotonicity check of an "
                            "expression in t")
    p.add_argument("--fn", required=True, help='expression, e.g. "sqrt(t)"')
    p.set_defaults(handler=_cmd_check_monotone)

    p = sub.add_parser("check-order", parents=[common],
                       help="sampled order comparison of two means")
    p.add_argument("--f", required=True, help="first mean spec")
    p.add_argument("--g", required=True, help="second mean spec")
    p.add_argument("--order-class", choices=("auto", "sym", "sa"),
                   default="auto")
    p.set_defaults(handler=_cmd_check_order)

    p = sub.add_parser("ka-check", parents=[common],
                       help="sampled mixing-condition check of sigma "
                            "against tau")
    p.add_argument("--sigma", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--n", type=int, default=DEFAULT_N,
                   help="matrix size (default 3)")
    p.set_defaults(handler=_cmd_ka_check)

    p = sub.add_parser("sweep", help="write a CSV over a parameter grid")
    p.add_argument("--kind", choices=("margins", "gamma"), required=True)
    p.add_argument("--grid", required=True, help="lo:hi:count")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--a", type=float, help="scalar a for margins sweep")
    p.add_argument("--b", type=float, help="scalar b for margins sweep")
    p.add_argument("--family", choices=("heron", "heinz", "wgeo"),
                   help="parametric family for gamma sweep")
    p.set_defaults(handler=_cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        payload, code = args.handler(args)
    except OpmeansError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(jsonio.dumps(payload))
    return code
