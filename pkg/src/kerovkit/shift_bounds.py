"""
Shift bounds module
===================

The epsilon-shift of a continual diagram along a slope-1 line, and the upper
and lower bounds for the cumulative function of every diagram within distance
``epsilon`` of a reference diagram ``Omega``.

Given ``epsilon > 0`` and the line ``f(z) = z + b``, the *blue* curve
``Omega(z - eps) - eps`` and the *red* curve ``Omega(z - eps) + eps`` enclose
every diagram in the epsilon-ball of ``Omega``. The shifted diagram follows
the blue curve up to ``z_-``, the line between ``z_-`` and ``z_+`` and the red
curve after ``z_+``:

    shifted(z) = min(max(Omega(z - eps) - eps, f(z)), Omega(z - eps) + eps).

This module provides:

- ``intersections``, ``shifted_diagram`` (:class:`ShiftReport`),
- the corner bookkeeping of a shifted zigzag: ``corner_indices``,
  ``shift_factor`` (the rational factor relating the two Cauchy
  transforms), ``p_min``, ``tail_lower_bound``, ``shifted_tail``,
- the extreme roots ``z_plus_max`` / ``z_minus_min``,
- ``upper_bound_cdf`` / ``lower_bound_cdf`` (:class:`BoundReport`),
- ``steepest_reference``, ``contraction_constant`` and ``bound_terms``
  (the near / middle / tail split of the upper-bound margin).

Notes
-----
All root finding is a deterministic scan over the breakpoints of ``Omega``
shifted by ``epsilon``. Every equation solved here has the form ``h(z) = 0``
with ``h`` piecewise linear and nondecreasing, of slope 2 left of the
breakpoints and constant right of them, so the zero set is a closed interval
located exactly from the values of ``h`` at the breakpoints. When a whole
segment solves the equation, the minimal root is its left end and the
maximal root its right end. With rational inputs all results are exact.
"""

from __future__ import annotations

# --- Standard library ---
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

# --- Local dependencies ---
from .approximation import DEFAULT_N_MAX, approximate_measure
from .diagrams import (
    BREAKPOINT_TOL,
    AffineLine,
    Number,
    PiecewiseLinearDiagram,
    Zigzag,
    corners,
    evaluate,
    is_zigzag,
    ratio,
    slope_bound,
    transpose,
    zigzag_to_piecewise,
)
from .metric import distance
from .transition import (
    AtomicMeasure,
    ContinuousLaw,
    cdf,
    expectation,
    transition_measure,
)

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "NoIntersectionError",
    "ShiftReport",
    "BoundReport",
    "BoundTerms",
    "intersections",
    "shifted_diagram",
    "corner_indices",
    "shift_factor",
    "p_min",
    "tail_lower_bound",
    "shifted_tail",
    "z_plus_max",
    "z_minus_min",
    "upper_bound_cdf",
    "lower_bound_cdf",
    "steepest_reference",
    "contraction_constant",
    "bound_terms",
]

ROOT_TOL = BREAKPOINT_TOL
# Intercepts below this are reported as poorly conditioned.
CONDITIONING_TOL = 1e-9

Reference = Union[AtomicMeasure, ContinuousLaw]


class NoIntersectionError(ValueError):
    """Raised when the line does not meet the blue or the red curve."""


# ------------------------------------------------------------------------------
# REPORTS
# ------------------------------------------------------------------------------
@dataclass(frozen=True)
class ShiftReport:
    """The shifted diagram together with the data it was built from."""

    z_minus: Number
    z_plus: Number
    shifted: PiecewiseLinearDiagram
    epsilon: Number
    line: AffineLine


@dataclass(frozen=True)
class BoundReport:
    """
    Evaluated bound for the cumulative function at ``z0``.

    Attributes
    ----------
    z_star : number
        ``z_+^max`` for the upper bound, ``z_-^min`` for the lower bound.
    bound_value : number
        The bound, in ``[0, 1]``.
    side : str
        ``"upper"`` (bounds the left limit ``K(z0-)``) or ``"lower"`` (bounds
        ``K(z0)``).
    epsilon, z0 : number
    reference : str
        Which law of ``Omega`` was integrated: ``"exact"``, the name of a
        continuous law, or ``"inner-<n>"`` for an inner approximation.
    resolution : int or None
        Resolution of the inner approximation, when one was used.
    """

    z_star: Number
    bound_value: Number
    side: str
    epsilon: Number
    z0: Number
    reference: str = "exact"
    resolution: Optional[int] = None

    def __post_init__(self) -> None:
        if self.side not in ("upper", "lower"):
            raise ValueError(f"side must be 'upper' or 'lower', got {self.side!r}.")
        if not 0 <= self.bound_value <= 1:
            raise ValueError(f"Bound {self.bound_value} is outside [0, 1].")


@dataclass(frozen=True)
class BoundTerms:
    """Split of ``upper_bound - K_Omega(z0)`` into near, middle and tail terms."""

    z_star: Number
    near: Number
    middle: Number
    tail: Number

    @property
    def total(self) -> Number:
        return self.near + self.middle + self.tail


# ------------------------------------------------------------------------------
# ROOT SCAN
# ------------------------------------------------------------------------------
def _zero_set(
    knots: Sequence[Number], values: Sequence[Number], left_slope: Number = 2
) -> Optional[Tuple[Number, Number]]:
    """
    Zero set ``[lo, hi]`` of a nondecreasing piecewise linear function.

    The function takes ``values`` at ``knots``, has slope ``left_slope`` left
    of the first knot and is constant right of the last one. Returns None when
    it stays negative; ``hi`` is ``math.inf`` when it vanishes on the right
    ray.
    """
    vals: List[Number] = [0 if abs(v) <= ROOT_TOL else v for v in values]
    if vals[-1] < 0:
        return None

    if vals[0] >= 0:
        lo = knots[0] - ratio(vals[0], left_slope)
    else:
        k = next(k for k, v in enumerate(vals) if v >= 0)
        lo = knots[k - 1] + ratio(
            (knots[k] - knots[k - 1]) * (-vals[k - 1]), vals[k] - vals[k - 1]
        )

    if vals[-1] == 0:
        return lo, math.inf
    nonpositive = [k for k, v in enumerate(vals) if v <= 0]
    if not nonpositive:
        hi = knots[0] - ratio(vals[0], left_slope)
    else:
        k = nonpositive[-1]
        hi = knots[k] + ratio((knots[k + 1] - knots[k]) * (-vals[k]), vals[k + 1] - vals[k])
    return lo, hi


def _check_epsilon(epsilon: Number) -> None:
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}.")


# ------------------------------------------------------------------------------
# SHIFTED DIAGRAM
# ------------------------------------------------------------------------------
def intersections(
    Omega: PiecewiseLinearDiagram, epsilon: Number, line: AffineLine
) -> Tuple[Number, Number]:
    """
    Where the line leaves the blue curve and where it meets the red curve.

    ``z_minus`` is the minimal root of ``f(z) = Omega(z - eps) - eps`` and
    ``z_plus`` the maximal root of ``f(z) = Omega(z - eps) + eps``. They
    satisfy ``z_plus - z_minus >= eps``.

    Raises
    ------
    ValueError
        If ``epsilon <= 0``.
    NoIntersectionError
        If one of the equations has no root.

    Examples
    --------
    >>> from kerovkit.diagrams import Partition, partition_profile
    >>> Omega = partition_profile(Partition((3, 3, 1)))
    >>> intersections(Omega, 1, AffineLine(2))
    (Fraction(0, 1), Fraction(3, 1))
    """
    _check_epsilon(epsilon)
    b = line.intercept
    if 0 < b < CONDITIONING_TOL:
        logger.warning(f"Intercept b={b} is tiny; the shift is poorly conditioned.")
    knots = [u + epsilon for u in Omega.us]
    blue = _zero_set(knots, [t + b - v + epsilon for t, v in zip(knots, Omega.vs)])
    red = _zero_set(knots, [t + b - v - epsilon for t, v in zip(knots, Omega.vs)])
    if blue is None:
        raise NoIntersectionError(f"The line z + {b} never meets the blue curve.")
    if red is None or red[1] == math.inf:
        raise NoIntersectionError(f"The line z + {b} has no last crossing with the red curve.")
    z_minus, z_plus = blue[0], red[1]
    logger.debug(f"eps={epsilon}, b={b}: z_minus={z_minus}, z_plus={z_plus}")
    return z_minus, z_plus


def shifted_diagram(
    Omega: PiecewiseLinearDiagram, epsilon: Number, line: AffineLine
) -> ShiftReport:
    """
    Shift ``Omega`` by ``epsilon`` along ``line``.

    The result coincides with the blue curve on ``(-inf, z_minus]``, with the
    line on ``[z_minus, z_plus]`` and with the red curve on ``[z_plus, inf)``.
    It is again a continual diagram; for a Young diagram, integer ``epsilon``
    and integer intercept it is again a Young diagram.
    """
    z_minus, z_plus = intersections(Omega, epsilon, line)
    b = line.intercept

    def value(z: Number) -> Number:
        if z <= z_minus:
            return evaluate(Omega, z - epsilon) - epsilon
        if z <= z_plus:
            return z + b
        return evaluate(Omega, z - epsilon) + epsilon

    knots = [u + epsilon for u in Omega.us]
    left = min(knots[0], z_minus) - 1
    right = max(knots[-1], z_plus) + 1
    zs = sorted({left, right, z_minus, z_plus, *knots})
    shifted = PiecewiseLinearDiagram(tuple((z, value(z)) for z in zs))
    return ShiftReport(z_minus, z_plus, shifted, epsilon, line)


def corner_indices(
    omega: Zigzag, epsilon: Number, z_minus: Number, z_plus: Number
) -> Tuple[int, int]:
    """
    Indices ``(i, j)`` of the corners swallowed by the line.

    The shifted concave corners ``x_k + eps`` with ``i <= k < j`` and the
    shifted convex corners ``y_{k+1} + eps`` with ``i <= k < j`` lie between
    ``z_minus`` and ``z_plus`` and disappear from the shifted zigzag.
    """
    i = sum(1 for x in omega.concave if x + epsilon < z_minus)
    j = sum(1 for x in omega.concave if x + epsilon < z_plus)
    return i, j


def shift_factor(
    omega: Zigzag, epsilon: Number, z_minus: Number, z_plus: Number, point
):
    """
    The factor ``P`` with ``G_shifted(z) = G_omega(z - eps) P(z)``:

        P(z) = (z - z_+)/(z - z_-) * prod_{i<=k<j} (z - x_k - eps)/(z - y_{k+1} - eps).
    """
    i, j = corner_indices(omega, epsilon, z_minus, z_plus)
    value = ratio(point - z_plus, point - z_minus)
    for k in range(i, j):
        value = value * ratio(
            point - (omega.concave[k] + epsilon), point - (omega.convex[k] + epsilon)
        )
    return value


def p_min(z_plus: Number, epsilon: Number, z: Number) -> Number:
    """
    Lower bound ``(z - z_+)/(z + eps - z_+)`` for the shift factor, 0 left of ``z_+``.

    Nondecreasing in ``z``, nonincreasing in ``z_plus``, with values in ``[0, 1)``.
    """
    _check_epsilon(epsilon)
    if z < z_plus:
        return 0
    return ratio(z - z_plus, z + epsilon - z_plus)


def tail_lower_bound(omega: Zigzag, epsilon: Number, line: AffineLine) -> Number:
    """
    ``int p_min(z_+, eps, z + eps) d mu_omega(z)``.

    This is a lower bound for :func:`shifted_tail`, the mass the shifted
    diagram puts on ``(z_+, inf)``.
    """
    _, z_plus = intersections(zigzag_to_piecewise(omega), epsilon, line)
    measure = transition_measure(omega)
    return expectation(measure, lambda z: p_min(z_plus, epsilon, z + epsilon))


def shifted_tail(omega: Zigzag, epsilon: Number, line: AffineLine) -> Number:
    """Mass of the transition measure of the shifted zigzag on ``(z_+, inf)``."""
    report = shifted_diagram(zigzag_to_piecewise(omega), epsilon, line)
    measure = transition_measure(corners(report.shifted))
    return 1 - cdf(measure, report.z_plus)


# ------------------------------------------------------------------------------
# BOUNDS FOR THE CUMULATIVE FUNCTION
# ------------------------------------------------------------------------------
def z_plus_max(
    Omega: PiecewiseLinearDiagram, z0: Number, epsilon: Number
) -> Optional[Number]:
    """
    Maximal solution of ``Omega(z - eps) - Omega(z0 - eps) = z - z0 - 2 eps``.

    Returns
    -------
    number or None
        None when the equation has no solution or when its solutions are
        unbounded from above. A returned value is ``>= z0 + eps``.
    """
    _check_epsilon(epsilon)
    base = evaluate(Omega, z0 - epsilon)
    knots = [u + epsilon for u in Omega.us]
    values = [t + base - z0 - 2 * epsilon - v for t, v in zip(knots, Omega.vs)]
    roots = _zero_set(knots, values)
    if roots is None or roots[1] == math.inf:
        logger.info(f"No bounded maximal root for z0={z0}, eps={epsilon}.")
        return None
    return roots[1]


def z_minus_min(
    Omega: PiecewiseLinearDiagram, z0: Number, epsilon: Number
) -> Optional[Number]:
    """
    Minimal solution of ``Omega(z + eps) - Omega(z0 + eps) = z0 - z - 2 eps``.

    Obtained from :func:`z_plus_max` on the transposed diagram.
    """
    mirrored = z_plus_max(transpose(Omega), -z0, epsilon)
    return None if mirrored is None else -mirrored


def _resolve_reference(
    Omega: PiecewiseLinearDiagram, n_max: int, reference: Optional[Reference]
) -> Tuple[Reference, str, Optional[int]]:
    if reference is not None:
        return reference, getattr(reference, "name", "measure"), None
    if is_zigzag(Omega):
        return transition_measure(corners(Omega)), "exact", None
    logger.info(f"Omega is not a zigzag; integrating its inner approximation at n={n_max}.")
    return approximate_measure(Omega, n_max), f"inner-{n_max}", n_max


def _clip_unit(x: Number) -> Number:
    return max(0, min(1, x))


def upper_bound_cdf(
    Omega: PiecewiseLinearDiagram,
    z0: Number,
    epsilon: Number,
    n_max: int = DEFAULT_N_MAX,
    reference: Optional[Reference] = None,
) -> Optional[BoundReport]:
    """
    Upper bound for ``K_omega(z0-)`` over all ``omega`` with ``d(Omega, omega) <= eps``.

    The bound is

        1 - int_{[z* - eps, inf)} [1 - eps / (z + 2 eps - z*)] d mu_Omega(z),

    with ``z* = z_plus_max(Omega, z0, eps)``.

    Parameters
    ----------
    Omega : PiecewiseLinearDiagram
    z0 : number
    epsilon : number
        Radius of the ball, positive.
    n_max : int
        Resolution of the inner approximation of ``mu_Omega`` when ``Omega``
        is not a zigzag and no ``reference`` is given.
    reference : AtomicMeasure or ContinuousLaw, optional
        The transition measure of ``Omega`` when known in closed form (for
        instance the arcsine law of the triangle).

    Returns
    -------
    BoundReport or None
        None when ``z_plus_max`` does not exist; no bound is claimed then.
    """
    z_star = z_plus_max(Omega, z0, epsilon)
    if z_star is None:
        return None
    law, label, resolution = _resolve_reference(Omega, n_max, reference)
    integral = expectation(
        law, lambda z: 1 - ratio(epsilon, z + 2 * epsilon - z_star), lower=z_star - epsilon
    )
    return BoundReport(
        z_star=z_star,
        bound_value=_clip_unit(1 - integral),
        side="upper",
        epsilon=epsilon,
        z0=z0,
        reference=label,
        resolution=resolution,
    )


def lower_bound_cdf(
    Omega: PiecewiseLinearDiagram,
    z0: Number,
    epsilon: Number,
    n_max: int = DEFAULT_N_MAX,
    reference: Optional[Reference] = None,
) -> Optional[BoundReport]:
    """
    Lower bound for ``K_omega(z0)`` over all ``omega`` with ``d(Omega, omega) <= eps``.

    Computed as ``1 - upper_bound_cdf(Omega^T, -z0, eps)`` with the reflected
    transition measure, which equals

        int_{(-inf, z_- + eps]} [1 - eps / (z_- + 2 eps - z)] d mu_Omega(z),

    ``z_- = z_minus_min(Omega, z0, eps)``.
    """
    law, label, resolution = _resolve_reference(Omega, n_max, reference)
    mirrored = upper_bound_cdf(transpose(Omega), -z0, epsilon, n_max, reference=law.reflect())
    if mirrored is None:
        return None
    return BoundReport(
        z_star=-mirrored.z_star,
        bound_value=_clip_unit(1 - mirrored.bound_value),
        side="lower",
        epsilon=epsilon,
        z0=z0,
        reference=label,
        resolution=resolution,
    )


def steepest_reference(
    Omega: PiecewiseLinearDiagram,
    omega: PiecewiseLinearDiagram,
    z0: Number,
    epsilon: Number,
) -> ShiftReport:
    """
    Shift of ``Omega`` along the line through ``(z0, omega(z0))``.

    For ``epsilon >= distance(Omega, omega)`` the shifted diagram dominates
    ``omega`` at ``z0``: ``K_omega(z0-) <= K_shifted(z0)``.

    Raises
    ------
    ValueError
        If ``omega`` lies outside the ``epsilon``-ball around ``Omega``, or if
        ``omega(z0) == z0`` (the line would not have a positive intercept).
    """
    gap = distance(Omega, omega)
    if gap > epsilon + BREAKPOINT_TOL:
        raise ValueError(f"omega is at distance {gap} from Omega, beyond eps={epsilon}.")
    height = evaluate(omega, z0)
    if not height > z0:
        raise ValueError(f"omega(z0) = z0 at z0={z0}; the steepest line is degenerate.")
    return shifted_diagram(Omega, epsilon, AffineLine(height - z0))


def contraction_constant(Omega: PiecewiseLinearDiagram, a: Number, b: Number) -> Number:
    """``delta = 1 - max |Omega'|`` on ``[a, b]``; positive when ``Omega`` contracts there."""
    return 1 - slope_bound(Omega, a, b)


def bound_terms(
    Omega: PiecewiseLinearDiagram,
    z0: Number,
    epsilon: Number,
    b: Number,
    n_max: int = DEFAULT_N_MAX,
    reference: Optional[Reference] = None,
) -> Optional[BoundTerms]:
    """
    Decompose ``upper_bound_cdf - K_Omega(z0)`` into three terms.

    With ``c = z* - eps`` and ``w(z) = eps / (z + 2 eps - z*)``:

    - near: ``mu_Omega((z0, c))``, small because ``z* - z0 <= 2 eps / delta``,
    - middle: ``int_{[c, b]} w d mu_Omega``, of order ``eps log(1/eps)``,
    - tail: ``int_{(b, inf)} w d mu_Omega``, of order ``eps``.
    """
    z_star = z_plus_max(Omega, z0, epsilon)
    if z_star is None:
        return None
    law, _, _ = _resolve_reference(Omega, n_max, reference)
    cut = z_star - epsilon
    right = max(b, cut)

    def weight(z: Number) -> Number:
        return ratio(epsilon, z + 2 * epsilon - z_star)

    near = expectation(
        law, lambda z: 1, lower=z0, upper=cut, lower_closed=False, upper_closed=False
    )
    middle = expectation(law, weight, lower=cut, upper=right)
    tail = expectation(law, weight, lower=right, lower_closed=False)
    return BoundTerms(z_star=z_star, near=near, middle=middle, tail=tail)
