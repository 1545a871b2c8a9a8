"""
Metric module
=============

The metric ``d`` on continual diagrams, built from Hausdorff distances between
projections of the profiles drawn in French coordinates.

For a diagram ``omega`` and ``x >= 0`` the y-projection ``Pi_Y(x)`` is the set
of heights ``y`` such that ``(x, y)`` lies on the profile curve; the
x-projection ``Pi_X(y)`` is defined symmetrically. Then

    d_Y = sup_x  d_H(Pi_Y^1(x), Pi_Y^2(x)),
    d_X = sup_y  d_H(Pi_X^1(y), Pi_X^2(y)),
    d   = max(d_X, d_Y).

This module provides ``project_y``, ``project_x``, ``hausdorff``, ``d_x``,
``d_y``, ``distance`` and ``envelope_check``.

Notes
-----
Along the profile curve the French coordinate ``x`` is nondecreasing and ``y``
is nonincreasing, so each projection is a single closed interval (a point or
a vertical / horizontal stretch). The rays along the axes are capped at
``cap``, by default the support radius plus one; beyond the support both
diagrams share the same ray, so the cap does not change the distance.

Between consecutive breakpoint abscissae of the two diagrams both
projections are single points moving linearly, so the supremum is attained
at a breakpoint abscissa (or at 0). This makes ``distance`` exact for
piecewise linear inputs; with rational breakpoints it returns a ``Fraction``.
"""

from __future__ import annotations

# --- Standard library ---
import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

# --- Local dependencies ---
from .diagrams import (
    BREAKPOINT_TOL,
    Number,
    PiecewiseLinearDiagram,
    evaluate,
    ratio,
    support_radius,
    transpose,
)

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "ProjectionSet",
    "project_y",
    "project_x",
    "hausdorff",
    "d_y",
    "d_x",
    "distance",
    "envelope_check",
]


@dataclass(frozen=True)
class ProjectionSet:
    """Ordered, disjoint closed intervals ``[lo, hi]`` of non-negative reals."""

    intervals: Tuple[Tuple[Number, Number], ...]

    def __post_init__(self) -> None:
        intervals = tuple((lo, hi) for lo, hi in self.intervals)
        if not intervals:
            raise ValueError("A projection set is never empty.")
        for lo, hi in intervals:
            if lo > hi:
                raise ValueError(f"Interval [{lo}, {hi}] is reversed.")
        for (_, hi), (lo, _) in zip(intervals, intervals[1:]):
            if not hi < lo:
                raise ValueError("Intervals must be sorted and disjoint.")
        object.__setattr__(self, "intervals", intervals)

    @classmethod
    def point(cls, y: Number) -> "ProjectionSet":
        return cls(((y, y),))

    def distance_to(self, p: Number) -> Number:
        """Distance from the point ``p`` to the set."""
        return min(max(lo - p, p - hi, 0) for lo, hi in self.intervals)


def _default_cap(d: PiecewiseLinearDiagram) -> Number:
    return support_radius(d) + 1


def project_y(
    d: PiecewiseLinearDiagram, x: Number, cap: Optional[Number] = None
) -> ProjectionSet:
    """
    Heights at which the vertical line ``X = x`` meets the profile.

    Parameters
    ----------
    d : PiecewiseLinearDiagram
    x : number
        French abscissa, ``x >= 0``.
    cap : number, optional
        Upper end used for the y-axis ray at ``x = 0``. Defaults to the
        support radius plus one.

    Returns
    -------
    ProjectionSet

    Raises
    ------
    ValueError
        If ``x < 0``.

    Examples
    --------
    >>> from kerovkit.diagrams import Partition, partition_profile
    >>> [tuple(map(int, iv)) for iv in project_y(partition_profile(Partition((1,))), 1).intervals]
    [(0, 1)]
    """
    if x < 0:
        raise ValueError(f"Projections are defined for x >= 0, got {x}.")
    if cap is None:
        cap = _default_cap(d)
    xs, ys = d.french_x, d.french_y

    lo = bisect_left(xs, x - BREAKPOINT_TOL)
    hi = bisect_right(xs, x + BREAKPOINT_TOL)
    if lo < hi:
        top = cap if lo == 0 else ys[lo]
        return ProjectionSet(((ys[hi - 1], max(top, ys[hi - 1])),))
    if lo >= len(xs):
        # right of the last breakpoint only the x-axis ray remains
        return ProjectionSet.point(0)
    k = lo - 1
    y = ys[k] + ratio((ys[k + 1] - ys[k]) * (x - xs[k]), xs[k + 1] - xs[k])
    return ProjectionSet.point(y)


def project_x(
    d: PiecewiseLinearDiagram, y: Number, cap: Optional[Number] = None
) -> ProjectionSet:
    """Abscissae at which the horizontal line ``Y = y`` meets the profile."""
    return project_y(transpose(d), y, cap)


def hausdorff(a: ProjectionSet, b: ProjectionSet) -> Number:
    """
    Hausdorff distance between two finite unions of closed intervals.

    ``x -> dist(x, B)`` is piecewise linear on each interval of ``A`` with
    maxima at interval ends or at midpoints of the gaps of ``B``, so the
    supremum is evaluated on those points only.
    """
    if not a.intervals or not b.intervals:
        raise ValueError("Hausdorff distance needs non-empty sets.")

    def one_sided(src: ProjectionSet, dst: ProjectionSet) -> Number:
        candidates = [end for interval in src.intervals for end in interval]
        for (_, gap_lo), (gap_hi, _) in zip(dst.intervals, dst.intervals[1:]):
            mid = ratio(gap_lo + gap_hi, 2)
            if any(lo <= mid <= hi for lo, hi in src.intervals):
                candidates.append(mid)
        return max(dst.distance_to(p) for p in candidates)

    return max(one_sided(a, b), one_sided(b, a))


def _sweep(
    d1: PiecewiseLinearDiagram, d2: PiecewiseLinearDiagram, cap: Number
) -> Number:
    critical = sorted(set([0]) | set(d1.french_x) | set(d2.french_x))
    return max(
        hausdorff(project_y(d1, x, cap), project_y(d2, x, cap)) for x in critical
    )


def d_y(d1: PiecewiseLinearDiagram, d2: PiecewiseLinearDiagram) -> Number:
    """Supremum over ``x`` of the Hausdorff distance between y-projections."""
    cap = max(_default_cap(d1), _default_cap(d2))
    return _sweep(d1, d2, cap)


def d_x(d1: PiecewiseLinearDiagram, d2: PiecewiseLinearDiagram) -> Number:
    """Supremum over ``y`` of the Hausdorff distance between x-projections."""
    cap = max(_default_cap(d1), _default_cap(d2))
    return _sweep(transpose(d1), transpose(d2), cap)


def distance(d1: PiecewiseLinearDiagram, d2: PiecewiseLinearDiagram) -> Number:
    """
    The metric ``d = max(d_X, d_Y)``.

    Examples
    --------
    >>> from kerovkit.diagrams import Partition, partition_profile
    >>> float(distance(partition_profile(Partition()), partition_profile(Partition((1,)))))
    1.0
    """
    value = max(d_x(d1, d2), d_y(d1, d2))
    logger.debug(f"distance = {value}")
    return value


def envelope_check(
    d1: PiecewiseLinearDiagram,
    d2: PiecewiseLinearDiagram,
    epsilon: Number,
    points: Iterable[Number],
) -> Number:
    """
    Largest violation of the red / blue envelopes at the given points.

    When ``distance(d1, d2) <= epsilon`` the profile of ``d2`` lies between
    ``d1(z - eps) - eps`` and ``d1(z - eps) + eps``; the returned value is
    then ``<= 0`` up to round-off.
    """
    worst: Number = float("-inf")
    for z in points:
        reference = evaluate(d1, z - epsilon)
        value = evaluate(d2, z)
        worst = max(worst, value - (reference + epsilon), (reference - epsilon) - value)
    return worst
