"""
Command-line module
===================

The ``kerovkit`` console script.

Subcommands:

- ``transition``: transition measure of a Young diagram or a zigzag (JSON or CSV),
- ``cdf``: cumulative function of a diagram at a point,
- ``metric``: distance between two diagrams,
- ``bound``: upper or lower bound for the cumulative function in an epsilon-ball,
- ``growth-check`` / ``growth-sample``: the Plancherel growth oracle,
- ``staircase-rate`` / ``metric-rate``: staircase to triangle rate tables,
- ``theorem-sweep``: random check of the bounds.

Diagrams are given either as registry names (see
:mod:`kerovkit.diagram_registry`) or as JSON files. Results go to stdout,
logs to stderr. Exit status is 0 on success, 1 when a check reports a
mismatch or a violation and 2 on invalid input.
"""

from __future__ import annotations

# --- Standard library ---
import argparse
import json
import logging
import sys
from dataclasses import asdict
from typing import List, Optional, Sequence

# --- Mandatory third-party dependencies ---
import pandas as pd

# --- Local dependencies ---
from .approximation import DEFAULT_N_MAX, approximate_measure, cdf_continual
from .diagram_registry import reference_law, resolve_diagram
from .diagrams import PiecewiseLinearDiagram, corners, is_zigzag, partition_profile
from .experiments import (
    DEFAULT_INTERVAL,
    metric_rate_table,
    rows_to_frame,
    staircase_rate_table,
    theorem_sweep,
)
from .metric import distance
from .oracle_rep import RNG_ALGORITHM, GrowthSampler, first_growth_mismatch
from .shift_bounds import lower_bound_cdf, upper_bound_cdf
from .transition import AtomicMeasure, cdf, cdf_left_limit, transition_measure
from .utils import (
    FLOAT_DIGITS,
    format_float,
    measure_to_json,
    parse_partition,
    parse_real,
    parse_real_list,
)

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = ["build_parser", "main"]

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s.%(funcName)s:%(lineno)d - %(message)s"
FLOAT_FORMAT = f"%.{FLOAT_DIGITS}g"

EPILOG = """\
CSV columns
-----------
transition --format csv : location, weight
staircase-rate          : N, n, sup_error, scaled_error, atom_floor
metric-rate             : N, distance, scaled_distance
theorem-sweep (--out)   : epsilon, sample, z0, k_left, k_value, lower, upper, violation
theorem-sweep (--envelope-out) :
                          epsilon, margin, scaled_margin, near, middle, tail
Floats are written with 17 significant digits.
"""


# ------------------------------------------------------------------------------
# HELPERS
# ------------------------------------------------------------------------------
def _configure_logging(level: str, log_file: Optional[str]) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8", mode="w"))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _emit_json(payload) -> None:
    print(json.dumps(payload, ensure_ascii=False))


def _emit_frame(frame: pd.DataFrame, out: Optional[str]) -> None:
    if out:
        frame.to_csv(out, index=False, float_format=FLOAT_FORMAT)
        logger.info(f"Wrote {len(frame)} rows to {out}.")
    else:
        frame.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)


def _measure_of(diagram: PiecewiseLinearDiagram, n_max: int) -> AtomicMeasure:
    if is_zigzag(diagram):
        return transition_measure(corners(diagram))
    logger.info(f"Not a zigzag; using the inner approximation at n={n_max}.")
    return approximate_measure(diagram, n_max)


def _reference_of(spec: str):
    try:
        return reference_law(spec)
    except KeyError:
        return None


# ------------------------------------------------------------------------------
# SUBCOMMANDS
# ------------------------------------------------------------------------------
def _cmd_transition(args: argparse.Namespace) -> int:
    if args.partition is not None:
        diagram = partition_profile(parse_partition(args.partition))
    else:
        diagram = resolve_diagram(args.diagram)
    measure = _measure_of(diagram, args.nmax)
    if args.format == "json":
        _emit_json(measure_to_json(measure))
    else:
        locations, weights = measure.as_arrays()
        _emit_frame(pd.DataFrame({"location": locations, "weight": weights}), None)
    return 0


def _cmd_cdf(args: argparse.Namespace) -> int:
    diagram = resolve_diagram(args.diagram)
    t = parse_real(args.t)
    if is_zigzag(diagram):
        measure = transition_measure(corners(diagram))
        payload = {
            "value": float(cdf(measure, t)),
            "left_limit": float(cdf_left_limit(measure, t)),
            "error_bound": 0.0,
            "resolution": None,
            "note": "exact",
        }
    else:
        estimate = cdf_continual(diagram, t, args.nmax)
        payload = {
            "value": estimate.value,
            "error_bound": estimate.error_bound,
            "resolution": estimate.resolution,
            "converging": estimate.converging,
            "note": estimate.note,
        }
    _emit_json(payload)
    return 0


def _cmd_metric(args: argparse.Namespace) -> int:
    value = distance(resolve_diagram(args.a), resolve_diagram(args.b))
    print(format_float(value))
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    Omega = resolve_diagram(args.omega)
    z0, epsilon = parse_real(args.z0), parse_real(args.eps)
    compute = upper_bound_cdf if args.side == "upper" else lower_bound_cdf
    report = compute(Omega, z0, epsilon, args.nmax, _reference_of(args.omega))
    if report is None:
        _emit_json({"side": args.side, "bound_value": None, "z_star": None})
        return 0
    payload = {
        key: (float(value) if key in ("z_star", "bound_value", "epsilon", "z0") else value)
        for key, value in asdict(report).items()
    }
    _emit_json(payload)
    return 0


def _cmd_growth_check(args: argparse.Namespace) -> int:
    mismatch = first_growth_mismatch(args.max_n)
    if mismatch is None:
        print("OK")
        return 0
    print(f"MISMATCH {mismatch}")
    return 1


def _cmd_growth_sample(args: argparse.Namespace) -> int:
    trajectory = GrowthSampler(args.seed).run(args.steps)
    for step, p in enumerate(trajectory):
        _emit_json({"step": step, "partition": list(p.rows), "rng": RNG_ALGORITHM, "seed": args.seed})
    return 0


def _n_list(args: argparse.Namespace) -> List[int]:
    if args.n_list:
        return [int(item) for item in args.n_list.split(",") if item.strip()]
    return list(range(1, args.nmax + 1))


def _cmd_staircase_rate(args: argparse.Namespace) -> int:
    rows = staircase_rate_table(_n_list(args), args.a0, args.b0, args.grid_points)
    _emit_frame(rows_to_frame(rows), args.out)
    return 0


def _cmd_metric_rate(args: argparse.Namespace) -> int:
    _emit_frame(rows_to_frame(metric_rate_table(_n_list(args))), args.out)
    return 0


def _cmd_theorem_sweep(args: argparse.Namespace) -> int:
    Omega = resolve_diagram(args.omega)
    result = theorem_sweep(
        Omega,
        args.samples,
        parse_real_list(args.eps),
        parse_real_list(args.z0),
        args.seed,
        interval=(parse_real(args.a), parse_real(args.b)),
        delta=args.delta,
        rho_max=args.rho_max,
        n_max=args.nmax,
        reference=_reference_of(args.omega),
        moves=args.moves,
    )
    _emit_frame(result.rows, args.out)
    if args.envelope_out:
        _emit_frame(result.envelope, args.envelope_out)
    logger.info(f"theorem-sweep: {result.violations} violations (delta={result.delta}).")
    return 1 if result.violations else 0


# ------------------------------------------------------------------------------
# PARSER
# ------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerovkit",
        description="Transition measures of Young and continual diagrams.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--log-file", default=None, help="Also write logs to this file.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transition", help="Transition measure of a diagram.")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--partition", help="Rows, e.g. 4,2,2,2.")
    source.add_argument("--diagram", help="Registry name or JSON file.")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--nmax", type=int, default=DEFAULT_N_MAX)
    p.set_defaults(func=_cmd_transition)

    p = sub.add_parser("cdf", help="Cumulative function at a point.")
    p.add_argument("--diagram", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--nmax", type=int, default=DEFAULT_N_MAX)
    p.set_defaults(func=_cmd_cdf)

    p = sub.add_parser("metric", help="Distance between two diagrams.")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_metric)

    p = sub.add_parser("bound", help="Bound for the cumulative function in an epsilon-ball.")
    p.add_argument("--omega", required=True)
    p.add_argument("--z0", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--side", choices=["upper", "lower"], default="upper")
    p.add_argument("--nmax", type=int, default=DEFAULT_N_MAX)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("growth-check", help="Compare growth probabilities with residues.")
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=_cmd_growth_check)

    p = sub.add_parser("growth-sample", help="Sample a Plancherel growth trajectory.")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_growth_sample)

    for name, func, text in (
        ("staircase-rate", _cmd_staircase_rate, "Staircase to arcsine rate table."),
        ("metric-rate", _cmd_metric_rate, "Staircase to triangle distance table."),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--nmax", type=int, default=200, help="Use N = 1..nmax.")
        p.add_argument("--n-list", default=None, help="Explicit N values, e.g. 10,20,40.")
        p.add_argument("--out", default=None, help="CSV file (stdout when omitted).")
        if name == "staircase-rate":
            p.add_argument("--a0", type=float, default=DEFAULT_INTERVAL[0])
            p.add_argument("--b0", type=float, default=DEFAULT_INTERVAL[1])
            p.add_argument("--grid-points", type=int, default=1000)
        p.set_defaults(func=func)

    p = sub.add_parser("theorem-sweep", help="Random check of the cumulative bounds.")
    p.add_argument("--omega", required=True)
    p.add_argument("--eps", required=True, help="Comma-separated radii.")
    p.add_argument("--z0", default="-0.5,0,0.5", help="Comma-separated points; write --z0=-0.5,0 for lists starting with a minus sign.")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", default=str(DEFAULT_INTERVAL[0]))
    p.add_argument("--b", default=str(DEFAULT_INTERVAL[1]))
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--rho-max", type=float, default=None)
    p.add_argument("--moves", type=int, default=20)
    p.add_argument("--nmax", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--out", default=None)
    p.add_argument("--envelope-out", default=None)
    p.set_defaults(func=_cmd_theorem_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.log_level, args.log_file)
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
