"""
Experiments module
==================

Desk-scale experiments around the staircase / triangle pair and the bounds of
:mod:`kerovkit.shift_bounds`.

The staircase ``(N, N-1, ..., 1)`` rescaled by ``1/sqrt(n)``,
``n = N(N+1)/2``, converges to the triangle diagram; its transition measure
(a rescaled Feller measure) converges to the arcsine law, with
``sup |K_n - K| = O(1/N)`` on compact subintervals of ``(-sqrt2, sqrt2)``.

This module provides:

- ``staircase_rate_table`` (:class:`ExperimentRow`) and ``metric_rate_table``
  (:class:`MetricRow`), with ``rows_to_frame`` for CSV output,
- ``random_ball_partition``, random zigzags in an epsilon-ball,
- ``theorem_sweep`` (:class:`SweepResult`), checking the upper and lower
  bounds against exact cumulative functions of sampled diagrams and
  reporting the ``eps log(1/eps)`` envelope of the bound margin,
- ``random_tilted_pair`` and ``monotonicity_sweep``, checking that a diagram
  tilted towards the right around ``z0`` has a larger cumulative function.

Notes
-----
All random draws use ``numpy.random.Generator(numpy.random.Philox(seed))``;
tables are reproducible given the seed and the parameters.
"""

from __future__ import annotations

# --- Standard library ---
import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

# --- Mandatory third-party dependencies ---
import numpy as np
import pandas as pd

# --- Local dependencies ---
from .approximation import DEFAULT_N_MAX, inner_partition
from .diagrams import (
    Number,
    Partition,
    PiecewiseLinearDiagram,
    content,
    corners,
    partition_profile,
    profile_of_partition,
    rescale,
    staircase,
    triangle_diagram,
)
from .metric import distance
from .oracle_rep import RNG_ALGORITHM
from .shift_bounds import (
    Reference,
    bound_terms,
    contraction_constant,
    lower_bound_cdf,
    upper_bound_cdf,
)
from .transition import (
    SQRT2,
    arcsine_cdf,
    cdf,
    cdf_left_limit,
    feller_measure,
    transition_measure,
)

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "DEFAULT_INTERVAL",
    "ExperimentRow",
    "MetricRow",
    "SweepResult",
    "staircase_rate_table",
    "metric_rate_table",
    "rows_to_frame",
    "random_ball_partition",
    "theorem_sweep",
    "random_tilted_pair",
    "monotonicity_sweep",
]

DEFAULT_INTERVAL: Tuple[float, float] = (-1.0, 1.0)
# Slack when float bounds are compared with exact cumulative functions.
COMPARISON_TOL = 1e-9


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


# ------------------------------------------------------------------------------
# RATE TABLES
# ------------------------------------------------------------------------------
@dataclass(frozen=True)
class ExperimentRow:
    """
    One line of the staircase rate table.

    ``sup_error`` is ``sup |K_{omega_n} - K_arcsine|`` over the grid,
    ``scaled_error = N * sup_error`` and ``atom_floor`` is half the largest
    atom inside the interval, a lower bound for the true supremum.
    """

    N: int
    n: int
    sup_error: float
    scaled_error: float
    atom_floor: float

    def __post_init__(self) -> None:
        if self.n != self.N * (self.N + 1) // 2:
            raise ValueError(f"n={self.n} is not the size of the staircase N={self.N}.")
        if not 0.0 <= self.sup_error <= 1.0:
            raise ValueError(f"sup_error={self.sup_error} is outside [0, 1].")


@dataclass(frozen=True)
class MetricRow:
    """Distance between the rescaled staircase and the triangle."""

    N: int
    distance: float
    scaled_distance: float


def _check_interval(a0: float, b0: float) -> None:
    if not -SQRT2 < a0 < b0 < SQRT2:
        raise ValueError(
            f"[a0, b0] = [{a0}, {b0}] must be a proper subinterval of (-sqrt2, sqrt2)."
        )


def staircase_rate_table(
    N_list: Iterable[int],
    a0: float = DEFAULT_INTERVAL[0],
    b0: float = DEFAULT_INTERVAL[1],
    grid_points: int = 1000,
) -> List[ExperimentRow]:
    """
    Sup distance between the cumulative functions of the rescaled staircase and the arcsine law.

    The supremum over ``[a0, b0]`` is taken on a uniform grid together with
    every atom of the rescaled Feller measure inside the interval; at each
    point both the value and the left limit of the step function are
    compared.

    Parameters
    ----------
    N_list : iterable of int
        Staircase sizes, each ``>= 1``.
    a0, b0 : float
        Interval, strictly inside ``(-sqrt2, sqrt2)``.
    grid_points : int
        At least 100.

    Returns
    -------
    list of ExperimentRow
        Ordered as ``N_list``.

    Raises
    ------
    ValueError
        For an interval outside ``(-sqrt2, sqrt2)``, ``grid_points < 100`` or
        ``N < 1``.
    """
    _check_interval(a0, b0)
    if grid_points < 100:
        raise ValueError(f"grid_points must be at least 100, got {grid_points}.")

    rows = []
    for N in N_list:
        if N < 1:
            raise ValueError(f"Staircase sizes must be positive, got {N}.")
        n = N * (N + 1) // 2
        locations, weights = feller_measure(N).as_arrays()
        locations = locations / math.sqrt(n)
        cumulative = np.concatenate(([0.0], np.cumsum(weights)))

        inside = (locations >= a0) & (locations <= b0)
        grid = np.union1d(np.linspace(a0, b0, grid_points), locations[inside])
        right = cumulative[np.searchsorted(locations, grid, side="right")]
        left = cumulative[np.searchsorted(locations, grid, side="left")]
        target = arcsine_cdf(grid)
        sup_error = float(max(np.max(np.abs(right - target)), np.max(np.abs(left - target))))

        strict = (locations > a0) & (locations < b0)
        atom_floor = 0.5 * float(weights[strict].max()) if strict.any() else 0.0
        row = ExperimentRow(N, n, min(sup_error, 1.0), N * sup_error, atom_floor)
        logger.info(f"N={N}: sup error {sup_error:.6g}, N * error {row.scaled_error:.6g}")
        rows.append(row)
    return rows


def metric_rate_table(N_list: Iterable[int]) -> List[MetricRow]:
    """
    Distance between ``rescale(staircase N, 1/sqrt(n))`` and the triangle diagram.

    The distance decays like ``1/N``; ``scaled_distance = N * distance`` stays
    bounded.
    """
    triangle = triangle_diagram()
    rows = []
    for N in N_list:
        if N < 1:
            raise ValueError(f"Staircase sizes must be positive, got {N}.")
        n = N * (N + 1) // 2
        shape = rescale(partition_profile(staircase(N)), 1 / math.sqrt(n))
        value = float(distance(shape, triangle))
        logger.info(f"N={N}: distance to the triangle {value:.6g}")
        rows.append(MetricRow(N, value, N * value))
    return rows


def rows_to_frame(rows: Sequence) -> pd.DataFrame:
    """Table of dataclass rows, one column per field."""
    return pd.DataFrame([asdict(row) for row in rows])


# ------------------------------------------------------------------------------
# RANDOM DIAGRAMS IN A BALL
# ------------------------------------------------------------------------------
def _neighbours(p: Partition) -> List[Tuple[str, int]]:
    moves = [("add", row) for row, _ in p.addable_cells()]
    moves += [("remove", row) for row, _ in p.removable_cells()]
    return moves


def _apply(p: Partition, move: Tuple[str, int]) -> Partition:
    kind, row = move
    return p.add_box(row) if kind == "add" else p.remove_box(row)


def random_ball_partition(
    Omega: PiecewiseLinearDiagram,
    epsilon: Number,
    rng: np.random.Generator,
    moves: int = 20,
) -> PiecewiseLinearDiagram:
    """
    Random zigzag ``omega`` with ``distance(Omega, omega) <= epsilon``.

    Starts from the inner approximation of ``Omega`` with boxes of side
    ``1/m``, ``m = ceil(3 / epsilon)``, and applies ``moves`` random box
    additions or removals; a move that leaves the ball is reverted.

    Returns
    -------
    PiecewiseLinearDiagram
        A zigzag with rational corners (multiples of ``1/m``).
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}.")
    m = math.ceil(3 / epsilon)
    p = inner_partition(Omega, m)
    while distance(Omega, rescale(partition_profile(p), Fraction(1, m))) > epsilon:
        m *= 2
        logger.warning(f"Inner approximation is outside the ball; refining to m={m}.")
        p = inner_partition(Omega, m)

    rejected = 0
    for _ in range(moves):
        options = _neighbours(p)
        candidate = _apply(p, options[int(rng.integers(len(options)))])
        shape = rescale(partition_profile(candidate), Fraction(1, m))
        if distance(Omega, shape) <= epsilon:
            p = candidate
        else:
            rejected += 1
    logger.debug(f"Ball sample at m={m}: {p.size} boxes, {rejected} moves reverted.")
    return rescale(partition_profile(p), Fraction(1, m))


@dataclass(frozen=True)
class SweepResult:
    """
    Outcome of :func:`theorem_sweep`.

    Attributes
    ----------
    violations : int
        Number of (sample, z0) pairs where a bound fails.
    rows : pandas.DataFrame
        One row per (epsilon, sample, z0): ``epsilon, sample, z0, k_left,
        k_value, lower, upper, violation``.
    envelope : pandas.DataFrame
        One row per epsilon: ``epsilon, margin, scaled_margin, near, middle,
        tail`` (maxima over ``z0``).
    delta, rho_max, eps0 : float or None
        Contraction constant, declared density cap and the radius below which
        the near-term estimate applies.
    """

    violations: int
    rows: pd.DataFrame
    envelope: pd.DataFrame
    delta: Optional[float] = None
    rho_max: Optional[float] = None
    eps0: Optional[float] = None


def theorem_sweep(
    Omega: PiecewiseLinearDiagram,
    ball_samples: int,
    epsilon_list: Sequence[Number],
    z0_grid: Sequence[Number],
    seed: int,
    *,
    interval: Tuple[Number, Number] = DEFAULT_INTERVAL,
    delta: Optional[float] = None,
    rho_max: Optional[float] = None,
    n_max: int = DEFAULT_N_MAX,
    reference: Optional[Reference] = None,
    moves: int = 20,
) -> SweepResult:
    """
    Check the upper and lower bounds on random diagrams of each epsilon-ball.

    For every ``epsilon`` and every sampled ``omega`` in the ball around
    ``Omega``, and every ``z0``, the sweep asserts

        lower_bound_cdf(Omega, z0, eps) <= K_omega(z0),
        K_omega(z0-) <= upper_bound_cdf(Omega, z0, eps),

    with exact cumulative functions of ``omega``. The envelope table reports
    the margin ``upper - K_Omega(z0)``, its ratio to ``eps log(1/eps)`` and
    the near / middle / tail terms of :func:`~kerovkit.shift_bounds.bound_terms`.

    Parameters
    ----------
    Omega : PiecewiseLinearDiagram
    ball_samples : int
        Samples per epsilon.
    epsilon_list, z0_grid : sequences of numbers
    seed : int
    interval : (a, b)
        Interval on which ``Omega`` is declared to contract.
    delta : float, optional
        Declared contraction constant; checked against ``1 - max |Omega'|``.
    rho_max : float, optional
        Declared density cap, echoed in the result.
    n_max : int
        Resolution for the measure of ``Omega`` when it is not a zigzag.
    reference : AtomicMeasure or ContinuousLaw, optional
        Known transition measure of ``Omega``.
    moves : int
        Random box moves per sample.

    Raises
    ------
    ValueError
        If ``Omega`` does not contract on ``interval`` with the declared
        ``delta``.
    """
    a, b = interval
    computed_delta = contraction_constant(Omega, a, b)
    if delta is not None and (computed_delta <= 0 or computed_delta < delta):
        raise ValueError(
            f"Omega does not contract on [{a}, {b}] with delta={delta}: "
            f"max |Omega'| = {1 - computed_delta}."
        )
    eps0 = None
    if computed_delta > 0 and z0_grid:
        a0, b0 = min(z0_grid), max(z0_grid)
        eps0 = float(min((b - b0) * computed_delta / 2, a0 - a))

    rng = _generator(seed)
    records: List[Dict] = []
    envelope: List[Dict] = []
    violations = 0
    for epsilon in epsilon_list:
        if eps0 is not None and epsilon > eps0:
            logger.warning(f"eps={epsilon} exceeds eps0={eps0:.6g}; the envelope may not apply.")
        bounds = {
            z0: (
                lower_bound_cdf(Omega, z0, epsilon, n_max, reference),
                upper_bound_cdf(Omega, z0, epsilon, n_max, reference),
            )
            for z0 in z0_grid
        }
        for sample in range(ball_samples):
            omega = random_ball_partition(Omega, epsilon, rng, moves)
            measure = transition_measure(corners(omega))
            for z0 in z0_grid:
                lower, upper = bounds[z0]
                k_left = cdf_left_limit(measure, z0)
                k_value = cdf(measure, z0)
                failed = False
                if upper is not None and k_left > upper.bound_value + COMPARISON_TOL:
                    failed = True
                if lower is not None and lower.bound_value > k_value + COMPARISON_TOL:
                    failed = True
                if failed:
                    violations += 1
                    logger.warning(f"Bound violated: eps={epsilon}, sample={sample}, z0={z0}.")
                records.append(
                    {
                        "epsilon": float(epsilon),
                        "sample": sample,
                        "z0": float(z0),
                        "k_left": float(k_left),
                        "k_value": float(k_value),
                        "lower": None if lower is None else float(lower.bound_value),
                        "upper": None if upper is None else float(upper.bound_value),
                        "violation": failed,
                    }
                )
        envelope.append(_envelope_row(Omega, epsilon, z0_grid, bounds, b, n_max, reference))
        logger.info(f"eps={epsilon}: {ball_samples} samples checked, {violations} violations so far.")

    return SweepResult(
        violations=violations,
        rows=pd.DataFrame(records),
        envelope=pd.DataFrame(envelope),
        delta=float(computed_delta),
        rho_max=rho_max,
        eps0=eps0,
    )


def _envelope_row(
    Omega: PiecewiseLinearDiagram,
    epsilon: Number,
    z0_grid: Sequence[Number],
    bounds: Dict,
    b: Number,
    n_max: int,
    reference: Optional[Reference],
) -> Dict:
    margin = near = middle = tail = 0.0
    for z0 in z0_grid:
        upper = bounds[z0][1]
        if upper is None:
            continue
        terms = bound_terms(Omega, z0, epsilon, b, n_max, reference)
        # upper - K_Omega(z0) is the sum of the three terms
        margin = max(margin, float(terms.total))
        near = max(near, float(terms.near))
        middle = max(middle, float(terms.middle))
        tail = max(tail, float(terms.tail))
    scale = float(epsilon) * math.log(1 / float(epsilon)) if epsilon < 1 else float("nan")
    return {
        "epsilon": float(epsilon),
        "margin": margin,
        "scaled_margin": margin / scale if scale > 0 else float("nan"),
        "near": near,
        "middle": middle,
        "tail": tail,
    }


# ------------------------------------------------------------------------------
# MONOTONICITY
# ------------------------------------------------------------------------------
def random_tilted_pair(
    p: Partition, z0: Number, moves: int, rng: np.random.Generator
) -> Tuple[Partition, Partition]:
    """
    A pair ``(p, q)`` with ``omega_p >= omega_q`` left of ``z0`` and ``omega_p <= omega_q`` right of it.

    ``q`` is obtained from ``p`` by adding boxes of content ``>= z0 + 1`` and
    removing boxes of content ``<= z0 - 1``.
    """
    q = p
    for _ in range(moves):
        options = [("add", row) for row, col in q.addable_cells() if content((row, col)) >= z0 + 1]
        options += [
            ("remove", row) for row, col in q.removable_cells() if content((row, col)) <= z0 - 1
        ]
        if not options:
            break
        q = _apply(q, options[int(rng.integers(len(options)))])
    return p, q


def _random_partition(size: int, rng: np.random.Generator) -> Partition:
    p = Partition()
    for _ in range(size):
        cells = p.addable_cells()
        p = p.add_box(cells[int(rng.integers(len(cells)))][0])
    return p


def monotonicity_sweep(
    samples: int, seed: int, size: int = 12, moves: int = 8
) -> int:
    """
    Count pairs violating ``K_p(z0) <= K_q(z0)`` for random tilted pairs.

    Partitions of ``size`` boxes are grown with uniform random box additions;
    ``z0`` is a random half-integer in ``[-size, size]``. The comparison is
    exact.

    Returns
    -------
    int
        Number of violations, expected to be zero.
    """
    rng = _generator(seed)
    violations = 0
    for _ in range(samples):
        p = _random_partition(size, rng)
        z0 = Fraction(int(rng.integers(-2 * size, 2 * size + 1)), 2)
        first, second = random_tilted_pair(p, z0, moves, rng)
        k_first = cdf(transition_measure(profile_of_partition(first)), z0)
        k_second = cdf(transition_measure(profile_of_partition(second)), z0)
        if k_first > k_second:
            violations += 1
            logger.warning(f"Monotonicity fails for {first} -> {second} at z0={z0}.")
    logger.info(f"Monotonicity sweep ({RNG_ALGORITHM}, seed {seed}): {violations} violations.")
    return violations
