"""
Transition module
=================

Cauchy transforms and transition measures of continual diagrams.

For a zigzag with concave corners ``x_i`` and convex corners ``y_j`` the
Cauchy transform is the rational function

    G(z) = prod_j (z - y_j) / prod_i (z - x_i),

and the transition measure is the atomic measure of its partial fraction
decomposition. For a general piecewise linear profile the Cauchy transform is
available in closed form through ``log(z G(z))``.

This module provides:

- :class:`AtomicMeasure`, a finite probability measure (exact or float),
- ``cauchy_transform`` / ``transition_measure`` for zigzags, with exact
  residues when the corners are rational,
- ``cdf`` and ``cdf_left_limit`` (right-continuous distribution function and
  its left limit),
- ``log_cauchy_piecewise``, ``cauchy_transform_piecewise`` and
  ``stieltjes_density`` for piecewise linear diagrams,
- the staircase / triangle pair: ``feller_measure``, ``arcsine_cdf``,
  ``arcsine_density`` and the continuous law ``arcsine_law``,
- ``expectation``, integrating a function against either kind of law.
"""

from __future__ import annotations

# --- Standard library ---
import logging
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Callable, Optional, Tuple, Union

# --- Mandatory third-party dependencies ---
import numpy as np
from scipy import integrate

# --- Local dependencies ---
from .diagrams import (
    Number,
    PiecewiseLinearDiagram,
    Zigzag,
    as_number,
    ratio,
)

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "MASS_TOL",
    "AtomicMeasure",
    "ContinuousLaw",
    "CauchyPoleError",
    "cauchy_transform",
    "measure_cauchy_transform",
    "transition_measure",
    "cdf",
    "cdf_left_limit",
    "log_cauchy_piecewise",
    "cauchy_transform_piecewise",
    "stieltjes_density",
    "arcsine_cdf",
    "arcsine_density",
    "arcsine_law",
    "feller_measure",
    "expectation",
]

# Total mass of a float measure may deviate from 1 by this much.
MASS_TOL = 1e-10

SQRT2 = math.sqrt(2)


class CauchyPoleError(ZeroDivisionError):
    """Raised when a Cauchy transform is evaluated at a concave corner."""


# ------------------------------------------------------------------------------
# MEASURES
# ------------------------------------------------------------------------------
@dataclass(frozen=True)
class AtomicMeasure:
    """
    Finite probability measure ``sum_k w_k delta_{a_k}``.

    Parameters
    ----------
    atoms : sequence of (location, weight)
        Locations strictly increasing, weights positive and summing to one
        (exactly when all weights are rational, within :data:`MASS_TOL`
        otherwise).
    """

    atoms: Tuple[Tuple[Number, Number], ...]

    def __post_init__(self) -> None:
        atoms = tuple((as_number(a), as_number(w)) for a, w in self.atoms)
        if not atoms:
            raise ValueError("A probability measure needs at least one atom.")
        for (a, _), (b, _) in zip(atoms, atoms[1:]):
            if not a < b:
                raise ValueError(f"Atom locations must increase strictly: {a}, {b}.")
        for a, w in atoms:
            if not w > 0:
                raise ValueError(f"Atom at {a} has non-positive weight {w}.")
        total = sum(w for _, w in atoms)
        if all(isinstance(w, Rational) for _, w in atoms):
            if total != 1:
                raise ValueError(f"Weights sum to {total}, not 1.")
        elif abs(total - 1) > MASS_TOL:
            raise ValueError(f"Weights sum to {total}, not 1.")
        object.__setattr__(self, "atoms", atoms)

    @cached_property
    def locations(self) -> Tuple[Number, ...]:
        return tuple(a for a, _ in self.atoms)

    @cached_property
    def weights(self) -> Tuple[Number, ...]:
        return tuple(w for _, w in self.atoms)

    @cached_property
    def _cumulative(self) -> Tuple[Number, ...]:
        running: Number = 0
        out = [running]
        for w in self.weights:
            running = running + w
            out.append(running)
        return tuple(out)

    @property
    def is_exact(self) -> bool:
        """True when every location and weight is rational."""
        return all(
            isinstance(a, Rational) and isinstance(w, Rational) for a, w in self.atoms
        )

    def mean(self) -> Number:
        return sum(a * w for a, w in self.atoms)

    def dilate(self, c: Number) -> "AtomicMeasure":
        """Push-forward under ``z -> c z`` (``c > 0``)."""
        if not c > 0:
            raise ValueError(f"Dilation factor must be positive, got {c}.")
        return AtomicMeasure(tuple((c * a, w) for a, w in self.atoms))

    def reflect(self) -> "AtomicMeasure":
        """Push-forward under ``z -> -z``; the measure of the transposed diagram."""
        return AtomicMeasure(tuple((-a, w) for a, w in reversed(self.atoms)))

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """Float copies of locations and weights."""
        return (
            np.array([float(a) for a in self.locations]),
            np.array([float(w) for w in self.weights]),
        )


@dataclass(frozen=True)
class ContinuousLaw:
    """
    Atomless law on the real line described by its distribution function.

    The quantile function is used for integration, which removes integrable
    singularities of the density at the edges of the support.
    """

    name: str
    cdf: Callable[[float], float] = field(repr=False)
    quantile: Callable[[float], float] = field(repr=False)
    support: Tuple[float, float] = (-math.inf, math.inf)
    density: Optional[Callable[[float], float]] = field(default=None, repr=False)

    def reflect(self) -> "ContinuousLaw":
        """Push-forward under ``z -> -z``."""
        lo, hi = self.support
        density = self.density
        return ContinuousLaw(
            name=f"{self.name}-reflected",
            cdf=lambda t: 1.0 - self.cdf(-t),
            quantile=lambda p: -self.quantile(1.0 - p),
            support=(-hi, -lo),
            density=None if density is None else (lambda t: density(-t)),
        )


Law = Union[AtomicMeasure, ContinuousLaw]


def cdf(m: Law, t: Number) -> Number:
    """
    Distribution function ``m((-inf, t])``.

    Examples
    --------
    >>> cdf(feller_measure(2), -2)
    Fraction(3, 8)
    """
    if isinstance(m, ContinuousLaw):
        return m.cdf(t)
    return m._cumulative[bisect_right(m.locations, t)]


def cdf_left_limit(m: Law, t: Number) -> Number:
    """Left limit ``m((-inf, t))`` of the distribution function."""
    if isinstance(m, ContinuousLaw):
        return m.cdf(t)
    return m._cumulative[bisect_left(m.locations, t)]


# ------------------------------------------------------------------------------
# ZIGZAGS: CAUCHY TRANSFORM AND RESIDUES
# ------------------------------------------------------------------------------
def cauchy_transform(z: Zigzag, point):
    """
    Evaluate ``G(point) = prod (point - y_j) / prod (point - x_i)``.

    ``point`` may be a complex number, a float or a :class:`~fractions.Fraction`;
    rational points on a rational zigzag give an exact result.

    Raises
    ------
    CauchyPoleError
        If ``point`` is one of the concave corners.
    """
    numerator = 1
    denominator = 1
    for y in z.convex:
        numerator = numerator * (point - y)
    for x in z.concave:
        factor = point - x
        if factor == 0:
            raise CauchyPoleError(f"{point} is a concave corner (pole of G).")
        denominator = denominator * factor
    return ratio(numerator, denominator)


def measure_cauchy_transform(m: AtomicMeasure, point):
    """``sum_k w_k / (point - a_k)``, the Cauchy transform of an atomic measure."""
    total = 0
    for a, w in m.atoms:
        if point - a == 0:
            raise CauchyPoleError(f"{point} is an atom of the measure.")
        total = total + ratio(w, point - a)
    return total


def transition_measure(z: Zigzag) -> AtomicMeasure:
    """
    Transition measure of a zigzag.

    The atom at ``x_i`` is the residue of the Cauchy transform there,

        p_i = prod_j (x_i - y_j) / prod_{k != i} (x_i - x_k),

    computed from the product formula. For integer or rational corners the
    weights are exact fractions summing to one.

    Examples
    --------
    >>> from kerovkit.diagrams import Partition, profile_of_partition
    >>> transition_measure(profile_of_partition(Partition((1,)))).atoms
    ((-1, Fraction(1, 2)), (1, Fraction(1, 2)))
    """
    atoms = []
    for i, x in enumerate(z.concave):
        numerator = 1
        for y in z.convex:
            numerator = numerator * (x - y)
        denominator = 1
        for k, other in enumerate(z.concave):
            if k != i:
                denominator = denominator * (x - other)
        atoms.append((x, ratio(numerator, denominator)))
    return AtomicMeasure(tuple(atoms))


# ------------------------------------------------------------------------------
# PIECEWISE LINEAR DIAGRAMS: CLOSED-FORM CAUCHY TRANSFORM
# ------------------------------------------------------------------------------
def _segment_data(d: PiecewiseLinearDiagram) -> Tuple[np.ndarray, np.ndarray]:
    # knots split at 0 so that sign(w) is constant on each piece
    knots = [float(u) for u in d.us]
    lo, hi = knots[0], knots[-1]
    if lo < 0 < hi and 0.0 not in knots:
        knots.append(0.0)
        knots.sort()
    knots_arr = np.array(knots)
    if len(knots) < 2:
        return knots_arr, np.zeros(0)
    values = np.array([float(v) for v in d.vs])
    us = np.array([float(u) for u in d.us])
    heights = np.interp(knots_arr, us, values)
    slopes = np.diff(heights) / np.diff(knots_arr)
    midpoints = 0.5 * (knots_arr[:-1] + knots_arr[1:])
    sigma = 0.5 * (slopes - np.sign(midpoints))
    return knots_arr, sigma


def log_cauchy_piecewise(d: PiecewiseLinearDiagram, point):
    """
    Closed form of ``log(point * G(point))`` for a piecewise linear profile.

    With ``sigma = (omega' - sign)/2`` constant on each segment
    ``[w_k, w_{k+1}]`` (segments are split at 0),

        log(z G(z)) = -sum_k sigma_k [log(z - w_k) - log(z - w_{k+1})].

    Parameters
    ----------
    d : PiecewiseLinearDiagram
    point : complex or array of complex
        Evaluation point(s), strictly off the real axis.

    Returns
    -------
    complex or numpy.ndarray

    Raises
    ------
    ValueError
        If a point lies on the real axis.

    Notes
    -----
    ``Im(point - w)`` has a constant sign along each segment, so the
    principal branch of the logarithm never crosses its cut.
    """
    z = np.asarray(point, dtype=complex)
    if np.any(z.imag == 0):
        raise ValueError("log_cauchy_piecewise needs points off the real axis.")
    knots, sigma = _segment_data(d)
    if sigma.size == 0:
        result = np.zeros_like(z)
    else:
        logs = np.log(z[..., None] - knots)
        result = -np.sum(sigma * (logs[..., :-1] - logs[..., 1:]), axis=-1)
    if result.ndim == 0:
        return complex(result)
    return result


def cauchy_transform_piecewise(d: PiecewiseLinearDiagram, point):
    """``G(point) = exp(log(point G(point))) / point``."""
    z = np.asarray(point, dtype=complex)
    result = np.exp(log_cauchy_piecewise(d, z)) / z
    if np.ndim(result) == 0:
        return complex(result)
    return result


def stieltjes_density(d: PiecewiseLinearDiagram, x, eta: float):
    """
    Poisson-smoothed density ``-Im G(x + i eta) / pi`` of the transition measure.

    Parameters
    ----------
    d : PiecewiseLinearDiagram
    x : float or array of float
    eta : float
        Smoothing width, must be positive. The result is the convolution of
        the transition measure with the Cauchy kernel of width ``eta``.

    Raises
    ------
    ValueError
        If ``eta <= 0``.
    """
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}.")
    xs = np.asarray(x, dtype=float)
    g = cauchy_transform_piecewise(d, xs + 1j * eta)
    density = -np.imag(g) / np.pi
    if np.ndim(density) == 0:
        return float(density)
    return density


# ------------------------------------------------------------------------------
# STAIRCASE AND TRIANGLE
# ------------------------------------------------------------------------------
def feller_measure(N: int) -> AtomicMeasure:
    """
    Transition measure of the staircase ``(N, N-1, ..., 1)``.

    Atoms at ``2k - N`` (``k = 0..N``) with exact weights
    ``C(2k, k) C(2N - 2k, N - k) / 4**N``.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}.")
    scale = 4**N
    return AtomicMeasure(
        tuple(
            (2 * k - N, Fraction(math.comb(2 * k, k) * math.comb(2 * N - 2 * k, N - k), scale))
            for k in range(N + 1)
        )
    )


def arcsine_cdf(t):
    """
    Distribution function of the arcsine law on ``[-sqrt(2), sqrt(2)]``.

    ``1/2 + arcsin(t / sqrt(2)) / pi`` inside the support, 0 and 1 outside.
    """
    value = 0.5 + np.arcsin(np.clip(np.asarray(t, dtype=float) / SQRT2, -1.0, 1.0)) / np.pi
    if np.ndim(value) == 0:
        return float(value)
    return value


def arcsine_density(t):
    """Density ``1 / (pi sqrt(2 - t^2))`` inside ``(-sqrt(2), sqrt(2))``, 0 outside."""
    x = np.asarray(t, dtype=float)
    inside = np.abs(x) < SQRT2
    safe = np.where(inside, 2.0 - x**2, 1.0)
    value = np.where(inside, 1.0 / (np.pi * np.sqrt(safe)), 0.0)
    if np.ndim(value) == 0:
        return float(value)
    return value


def _arcsine_quantile(p: float) -> float:
    return SQRT2 * math.sin(math.pi * (p - 0.5))


def arcsine_law() -> ContinuousLaw:
    """The arcsine law, transition measure of :func:`~kerovkit.diagrams.triangle_diagram`."""
    return ContinuousLaw(
        name="arcsine",
        cdf=arcsine_cdf,
        quantile=_arcsine_quantile,
        support=(-SQRT2, SQRT2),
        density=arcsine_density,
    )


# ------------------------------------------------------------------------------
# INTEGRATION
# ------------------------------------------------------------------------------
def expectation(
    law: Law,
    func: Callable[[Number], Number],
    lower: Optional[Number] = None,
    upper: Optional[Number] = None,
    *,
    lower_closed: bool = True,
    upper_closed: bool = True,
) -> Number:
    """
    Integrate ``func`` against ``law`` over an interval.

    Parameters
    ----------
    law : AtomicMeasure or ContinuousLaw
    func : callable
        Integrand. For exact atomic measures it is called with the exact
        locations, so a rational integrand gives an exact result.
    lower, upper : number, optional
        Interval ends; ``None`` means unbounded.
    lower_closed, upper_closed : bool
        Whether atoms sitting exactly on an end are included.

    Returns
    -------
    number
        Exact for exact atomic measures, float otherwise.

    Notes
    -----
    Continuous laws are integrated in the probability variable,
    ``int_{F(lower)}^{F(upper)} func(Q(p)) dp``, with
    :func:`scipy.integrate.quad`.
    """
    if isinstance(law, ContinuousLaw):
        p_lo = 0.0 if lower is None else float(law.cdf(float(lower)))
        p_hi = 1.0 if upper is None else float(law.cdf(float(upper)))
        if p_hi <= p_lo:
            return 0.0
        value, abserr = integrate.quad(
            lambda p: float(func(law.quantile(p))), p_lo, p_hi, limit=200
        )
        logger.debug(f"quad over [{p_lo:.6g}, {p_hi:.6g}] for {law.name}: abserr={abserr:.2e}")
        return value

    total: Number = 0
    for a, w in law.atoms:
        if lower is not None and (a < lower or (a == lower and not lower_closed)):
            continue
        if upper is not None and (a > upper or (a == upper and not upper_closed)):
            continue
        total = total + w * func(a)
    return total
