"""
Approximation module
====================

Inner Young-diagram approximations of continual diagrams and the evaluation of
the cumulative function of a continual diagram as a weak limit.

The transition measure of a continual diagram that is not a zigzag has no
finite closed form. It is recovered here as the limit of the (exact, atomic)
transition measures of the largest Young diagrams with boxes of side ``1/n``
fitting under the profile.

This module provides:

- ``inner_partition``: the largest Young diagram ``lambda`` with
  ``omega_{lambda/n} <= d``,
- ``approximate_measure``: its transition measure, rescaled to the scale of
  ``d``,
- ``cdf_continual``: the cumulative function evaluated on a resolution
  ladder ``n_max/4, n_max/2, n_max`` with an error estimate
  (:class:`CdfEstimate`).

Notes
-----
The reported error bound is an engineering estimate (spread of the ladder
plus ``2 / n_max``), not a proven bound.
"""

from __future__ import annotations

# --- Standard library ---
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

# --- Local dependencies ---
from .diagrams import (
    BREAKPOINT_TOL,
    Number,
    Partition,
    PiecewiseLinearDiagram,
    evaluate,
    profile_of_partition,
    support_radius,
)
from .transition import AtomicMeasure, cdf, transition_measure

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "DEFAULT_N_MAX",
    "CdfEstimate",
    "inner_partition",
    "approximate_measure",
    "cdf_continual",
]

DEFAULT_N_MAX = 256


@dataclass(frozen=True)
class CdfEstimate:
    """
    Value of a cumulative function with a resolution-derived error estimate.

    Attributes
    ----------
    value : float
        Value at the finest resolution.
    error_bound : float
        Spread of the resolution ladder plus ``2 / resolution``, clipped so
        that ``[value - error_bound, value + error_bound]`` stays in ``[0, 1]``.
    resolution : int
        Finest grid parameter ``n``.
    converging : bool
        False when the successive differences of the ladder increase.
    ladder : tuple of (n, value)
        Per-resolution values.
    note : str
    """

    value: float
    error_bound: float
    resolution: int
    converging: bool = True
    ladder: Tuple[Tuple[int, float], ...] = ()
    note: str = "engineering estimate"

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 1:
            raise ValueError(f"A cumulative value must lie in [0, 1], got {self.value}.")
        if self.error_bound < 0:
            raise ValueError(f"Negative error bound {self.error_bound}.")


def _row_length(d: PiecewiseLinearDiagram, n: int, row: int, upper: int) -> int:
    # g(i) = d((i - row)/n) - (i + row)/n is nonincreasing in i
    def fits(i: int) -> bool:
        return evaluate(d, Fraction(i - row, n)) >= Fraction(i + row, n) - BREAKPOINT_TOL

    lo, hi = 0, upper
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def inner_partition(d: PiecewiseLinearDiagram, n: int) -> Partition:
    """
    Largest Young diagram whose profile, drawn with boxes of side ``1/n``, lies
    under ``d``.

    The box in row ``j`` and column ``i`` (1-indexed) is kept iff its top
    vertex lies under the profile, ``d((i - j)/n) >= (i + j)/n``. Since ``d``
    is 1-Lipschitz this is equivalent to the whole box fitting.

    Parameters
    ----------
    d : PiecewiseLinearDiagram
    n : int
        Resolution, ``n >= 1``.

    Returns
    -------
    Partition
        Empty when ``d`` is ``|u|``.

    Raises
    ------
    ValueError
        If ``n < 1``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"The resolution must be a positive integer, got {n}.")
    n = int(n)
    reach = math.ceil(float(support_radius(d)) * n) + 1
    rows: List[int] = []
    row = 1
    while row <= reach:
        length = _row_length(d, n, row, row + reach)
        if length == 0:
            break
        rows.append(length)
        row += 1
    return Partition(tuple(rows))


def approximate_measure(d: PiecewiseLinearDiagram, n: int) -> AtomicMeasure:
    """Transition measure of ``inner_partition(d, n)`` dilated by ``1/n`` (exact)."""
    p = inner_partition(d, n)
    return transition_measure(profile_of_partition(p)).dilate(Fraction(1, n))


def cdf_continual(
    d: PiecewiseLinearDiagram, t: Number, n_max: int = DEFAULT_N_MAX
) -> CdfEstimate:
    """
    Cumulative function of a continual diagram at ``t``.

    The cumulative function of ``inner_partition(d, n)`` is evaluated exactly
    for ``n = n_max/4, n_max/2, n_max``; the finest value is returned.

    Parameters
    ----------
    d : PiecewiseLinearDiagram
    t : float
    n_max : int
        Finest resolution, at least 4. Powers of two keep the three grids
        nested.

    Returns
    -------
    CdfEstimate
        The error bound is clipped to ``min(value, 1 - value)``, so near 0 or
        1 it can be much smaller than the ladder spread; read it as the
        largest deviation compatible with a value in ``[0, 1]``, not as the
        accuracy of the approximation.

    Raises
    ------
    ValueError
        If ``n_max < 4``.

    Examples
    --------
    >>> from kerovkit.diagrams import triangle_diagram
    >>> est = cdf_continual(triangle_diagram(), 1.0, n_max=256)
    >>> abs(est.value - 0.75) <= est.error_bound
    True
    """
    if int(n_max) != n_max or n_max < 4:
        raise ValueError(f"n_max must be an integer >= 4, got {n_max}.")
    n_max = int(n_max)
    lo, hi = d.support
    if t < lo:
        return CdfEstimate(0.0, 0.0, n_max)
    if t >= hi:
        return CdfEstimate(1.0, 0.0, n_max)

    ladder = []
    for n in (n_max // 4, n_max // 2, n_max):
        measure = transition_measure(profile_of_partition(inner_partition(d, n)))
        value = float(cdf(measure, n * t))
        logger.debug(f"resolution {n}: K({t}) = {value:.12g}")
        ladder.append((n, value))

    values = [v for _, v in ladder]
    diffs = [abs(b - a) for a, b in zip(values, values[1:])]
    converging = diffs[1] <= diffs[0] + BREAKPOINT_TOL
    if not converging:
        logger.warning(
            f"Resolution ladder for K({t}) does not contract: differences {diffs}."
        )
    value = values[-1]
    error = max(diffs) + 2.0 / n_max
    # keeps [value - error, value + error] inside [0, 1]
    error = min(error, value, 1.0 - value)
    return CdfEstimate(
        value=value,
        error_bound=max(error, 0.0),
        resolution=n_max,
        converging=converging,
        ladder=tuple(ladder),
    )
