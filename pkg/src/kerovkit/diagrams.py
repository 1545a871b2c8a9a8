"""
Diagrams module
===============

Young diagrams and continual diagrams, with the coordinate conventions used
throughout kerovkit.

A Young diagram is drawn in the French convention (rows along the x-axis) and
read in the Russian convention ``u = x - y``, ``v = x + y``. Its boundary is
then the graph of a 1-Lipschitz function ``v = omega(u)`` equal to ``|u|``
far away, the *profile*. General continual diagrams are stored as piecewise
linear profiles.

This module provides:

- :class:`Partition`, an integer Young diagram given by its rows,
- :class:`Zigzag`, the interlacing concave / convex corners of a profile
  with slopes +-1 (``profile_of_partition``, ``zigzag_to_piecewise``,
  ``corners``),
- :class:`PiecewiseLinearDiagram`, a continual diagram given by its
  breakpoints (``evaluate``, ``rescale``, ``transpose``),
- :class:`AffineLine`, the slope-1 line ``z + b`` used by the shift
  construction,
- the two reference shapes ``staircase`` and ``triangle_diagram``.

Notes
-----
Coordinates are kept in whatever numeric type they were given in. Integer and
:class:`fractions.Fraction` breakpoints therefore flow through every
operation exactly (see :func:`ratio`), floats flow through as floats.
"""

from __future__ import annotations

# --- Standard library ---
import logging
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Integral, Rational, Real
from typing import Iterable, List, Sequence, Tuple, Union

# --- Mandatory third-party dependencies ---
import numpy as np

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "BREAKPOINT_TOL",
    "Number",
    "Partition",
    "Zigzag",
    "PiecewiseLinearDiagram",
    "AffineLine",
    "ratio",
    "as_number",
    "content",
    "profile_of_partition",
    "partition_profile",
    "zigzag_to_piecewise",
    "corners",
    "is_zigzag",
    "evaluate",
    "evaluate_many",
    "rescale",
    "transpose",
    "support_radius",
    "slope_bound",
    "french_points",
    "staircase",
    "triangle_diagram",
]

Number = Union[int, Fraction, float]

# Absolute tolerance for merging breakpoints and for float comparisons.
BREAKPOINT_TOL = 1e-12
# Slopes may exceed 1 in absolute value by this much (float round-off).
SLOPE_TOL = 1e-9
CENTERING_TOL = 1e-9


# ------------------------------------------------------------------------------
# NUMERIC HELPERS
# ------------------------------------------------------------------------------
def ratio(a: Number, b: Number) -> Number:
    """
    Divide ``a`` by ``b``, exactly when both are rational.

    ``3 / 4`` is a float in Python; ``ratio(3, 4)`` is ``Fraction(3, 4)``.
    As soon as one operand is a float the result is a float.
    """
    if isinstance(a, Rational) and isinstance(b, Rational):
        return Fraction(a) / Fraction(b)
    return a / b


def as_number(x) -> Number:
    """Normalise a real to ``int``, ``Fraction`` or finite ``float``."""
    if isinstance(x, bool):
        raise TypeError("Booleans are not valid coordinates.")
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, Real):
        value = float(x)
        if not math.isfinite(value):
            raise ValueError(f"Coordinates must be finite, got {x!r}.")
        return value
    raise TypeError(f"Unsupported coordinate type {type(x).__name__}.")


def _slope(p: Tuple[Number, Number], q: Tuple[Number, Number]) -> Number:
    return ratio(q[1] - p[1], q[0] - p[0])


# ------------------------------------------------------------------------------
# YOUNG DIAGRAMS
# ------------------------------------------------------------------------------
def content(cell: Tuple[int, int]) -> int:
    """Content ``column - row`` of a 1-indexed ``(row, column)`` cell."""
    row, column = cell
    return column - row


@dataclass(frozen=True)
class Partition:
    """
    Integer Young diagram given by its weakly decreasing row lengths.

    Parameters
    ----------
    rows : tuple of int
        ``(lambda_1, ..., lambda_l)`` with ``lambda_1 >= ... >= lambda_l >= 1``.
        The empty tuple is the empty diagram.

    Notes
    -----
    Cells are addressed as 1-indexed ``(row, column)`` pairs. The content of
    a cell, ``column - row``, is its u-coordinate in the Russian convention.
    """

    rows: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        for r in rows:
            if isinstance(r, bool) or not isinstance(r, Integral):
                raise TypeError(f"Row lengths must be integers, got {r!r}.")
        rows = tuple(int(r) for r in rows)
        if any(r < 1 for r in rows):
            raise ValueError(f"Row lengths must be positive: {rows}.")
        if any(rows[k] < rows[k + 1] for k in range(len(rows) - 1)):
            raise ValueError(f"Row lengths must be weakly decreasing: {rows}.")
        object.__setattr__(self, "rows", rows)

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.rows) + ")"

    @property
    def size(self) -> int:
        """Number of boxes."""
        return sum(self.rows)

    @property
    def length(self) -> int:
        """Number of non-empty rows."""
        return len(self.rows)

    def conjugate(self) -> "Partition":
        """Transposed diagram (rows and columns exchanged)."""
        if not self.rows:
            return Partition()
        return Partition(
            tuple(sum(1 for r in self.rows if r > c) for c in range(self.rows[0]))
        )

    def addable_cells(self) -> List[Tuple[int, int]]:
        """Cells which can be added, ordered from the first row down."""
        padded = self.rows + (0,)
        return [
            (r, length + 1)
            for r, length in enumerate(padded, start=1)
            if r == 1 or padded[r - 2] > length
        ]

    def removable_cells(self) -> List[Tuple[int, int]]:
        """Cells which can be removed, ordered from the first row down."""
        padded = self.rows + (0,)
        return [
            (r, padded[r - 1])
            for r in range(1, len(self.rows) + 1)
            if padded[r - 1] > padded[r]
        ]

    def add_box(self, row: int) -> "Partition":
        """Return the diagram with one box appended to ``row`` (1-indexed)."""
        if row not in {r for r, _ in self.addable_cells()}:
            raise ValueError(f"No addable box in row {row} of {self}.")
        rows = list(self.rows) + [0]
        rows[row - 1] += 1
        return Partition(tuple(r for r in rows if r > 0))

    def remove_box(self, row: int) -> "Partition":
        """Return the diagram with the last box of ``row`` (1-indexed) removed."""
        if row not in {r for r, _ in self.removable_cells()}:
            raise ValueError(f"No removable box in row {row} of {self}.")
        rows = list(self.rows)
        rows[row - 1] -= 1
        return Partition(tuple(r for r in rows if r > 0))


def staircase(N: int) -> Partition:
    """
    Staircase diagram ``(N, N-1, ..., 1)`` with ``N(N+1)/2`` boxes.

    ``N = 0`` gives the empty diagram.
    """
    if isinstance(N, bool) or not isinstance(N, Integral):
        raise TypeError(f"N must be an integer, got {N!r}.")
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}.")
    return Partition(tuple(range(int(N), 0, -1)))


# ------------------------------------------------------------------------------
# ZIGZAGS
# ------------------------------------------------------------------------------
@dataclass(frozen=True)
class Zigzag:
    """
    Corners of a profile whose slopes are all +-1.

    Parameters
    ----------
    concave : tuple
        u-coordinates ``x_0 < ... < x_L`` of the local minima.
    convex : tuple
        u-coordinates ``y_1 < ... < y_L`` of the local maxima.

    Raises
    ------
    ValueError
        If the corners do not interlace strictly or if the diagram is not
        centered (``sum(concave) != sum(convex)``).
    """

    concave: Tuple[Number, ...]
    convex: Tuple[Number, ...] = ()

    def __post_init__(self) -> None:
        concave = tuple(as_number(x) for x in self.concave)
        convex = tuple(as_number(y) for y in self.convex)
        if len(concave) != len(convex) + 1:
            raise ValueError(
                f"A zigzag has one more concave than convex corner, got "
                f"{len(concave)} and {len(convex)}."
            )
        for k, y in enumerate(convex):
            if not concave[k] < y < concave[k + 1]:
                raise ValueError(
                    f"Corners do not interlace at position {k}: "
                    f"{concave[k]} < {y} < {concave[k + 1]} fails."
                )
        gap = sum(concave) - sum(convex)
        if all(isinstance(c, Rational) for c in concave + convex):
            if gap != 0:
                raise ValueError(f"Zigzag is not centered (sum x - sum y = {gap}).")
        else:
            scale = max(1.0, max(abs(float(c)) for c in concave))
            if abs(gap) > CENTERING_TOL * scale * len(concave):
                raise ValueError(f"Zigzag is not centered (sum x - sum y = {gap}).")
        object.__setattr__(self, "concave", concave)
        object.__setattr__(self, "convex", convex)

    @property
    def corner_count(self) -> int:
        """The number ``L`` of convex corners."""
        return len(self.convex)


def profile_of_partition(p: Partition) -> Zigzag:
    """
    Corners of the profile of a Young diagram.

    Concave corners sit at the contents of the addable boxes, convex corners
    at the contents of the removable boxes.

    Examples
    --------
    >>> profile_of_partition(Partition((2, 1)))
    Zigzag(concave=(-2, 0, 2), convex=(-1, 1))
    """
    concave = sorted(content(cell) for cell in p.addable_cells())
    convex = sorted(content(cell) for cell in p.removable_cells())
    return Zigzag(tuple(concave), tuple(convex))


# ------------------------------------------------------------------------------
# CONTINUAL DIAGRAMS
# ------------------------------------------------------------------------------
def _normalise_breakpoints(points: Iterable) -> Tuple[Tuple[Number, Number], ...]:
    pts: List[Tuple[Number, Number]] = []
    for point in points:
        u, v = point
        u, v = as_number(u), as_number(v)
        if pts and u < pts[-1][0] - BREAKPOINT_TOL:
            raise ValueError(
                f"Breakpoints must be ordered by u: {u} follows {pts[-1][0]}."
            )
        if pts and abs(u - pts[-1][0]) <= BREAKPOINT_TOL:
            if abs(v - pts[-1][1]) > BREAKPOINT_TOL:
                raise ValueError(f"Two different heights at u = {u}.")
            continue
        pts.append((u, v))

    if not pts:
        return ((0, 0),)

    for u, v in pts:
        if v < abs(u) - BREAKPOINT_TOL:
            raise ValueError(f"Breakpoint ({u}, {v}) lies below |u|.")
    for idx in (0, -1):
        u, v = pts[idx]
        if abs(v - abs(u)) > BREAKPOINT_TOL:
            raise ValueError(
                f"End breakpoint ({u}, {v}) must lie on v = |u| so that the "
                "diagram continues as |u|."
            )
        pts[idx] = (u, abs(u))

    for p, q in zip(pts, pts[1:]):
        if abs(_slope(p, q)) > 1 + SLOPE_TOL:
            raise ValueError(f"Slope between {p} and {q} exceeds 1 in absolute value.")

    merged = [pts[0]]
    for k in range(1, len(pts) - 1):
        s_in = _slope(merged[-1], pts[k])
        s_out = _slope(pts[k], pts[k + 1])
        if abs(s_in - s_out) > BREAKPOINT_TOL:
            merged.append(pts[k])
    if len(pts) > 1:
        merged.append(pts[-1])

    def on_abs(p: Tuple[Number, Number]) -> bool:
        return abs(p[1] - abs(p[0])) <= BREAKPOINT_TOL

    def on_tail(p: Tuple[Number, Number], q: Tuple[Number, Number]) -> bool:
        return on_abs(p) and on_abs(q) and p[0] * q[0] >= 0

    while len(merged) >= 2 and on_tail(merged[0], merged[1]):
        merged.pop(0)
    while len(merged) >= 2 and on_tail(merged[-2], merged[-1]):
        merged.pop()
    if len(merged) == 1:
        return ((0, 0),)
    return tuple(merged)


@dataclass(frozen=True)
class PiecewiseLinearDiagram:
    """
    Continual diagram given by the breakpoints of its profile.

    Parameters
    ----------
    breakpoints : sequence of (u, v)
        Breakpoints in Russian coordinates, ordered by ``u``. Outside
        ``[u_first, u_last]`` the profile is ``|u|``.

    Raises
    ------
    ValueError
        If a slope leaves ``[-1, 1]``, a breakpoint lies below ``|u|`` or the
        end breakpoints are not on ``|u|``.

    Notes
    -----
    The breakpoints are normalised on construction: duplicates and collinear
    neighbours (within :data:`BREAKPOINT_TOL`) are merged and stretches lying
    on ``|u|`` at either end are trimmed. The profile ``|u|`` itself is stored
    as the single breakpoint ``(0, 0)``. Segments of slope exactly +-1 inside
    the support are kept.
    """

    breakpoints: Tuple[Tuple[Number, Number], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "breakpoints", _normalise_breakpoints(self.breakpoints)
        )

    @cached_property
    def us(self) -> Tuple[Number, ...]:
        return tuple(u for u, _ in self.breakpoints)

    @cached_property
    def vs(self) -> Tuple[Number, ...]:
        return tuple(v for _, v in self.breakpoints)

    @cached_property
    def slopes(self) -> Tuple[Number, ...]:
        return tuple(_slope(p, q) for p, q in zip(self.breakpoints, self.breakpoints[1:]))

    @property
    def support(self) -> Tuple[Number, Number]:
        """The interval ``[u_first, u_last]`` outside of which the profile is ``|u|``."""
        return self.us[0], self.us[-1]

    @property
    def is_empty(self) -> bool:
        return len(self.breakpoints) == 1

    @cached_property
    def french_x(self) -> Tuple[Number, ...]:
        """x-coordinates ``(u + v) / 2`` of the breakpoints (nondecreasing)."""
        return tuple(ratio(u + v, 2) for u, v in self.breakpoints)

    @cached_property
    def french_y(self) -> Tuple[Number, ...]:
        """y-coordinates ``(v - u) / 2`` of the breakpoints (nonincreasing)."""
        return tuple(ratio(v - u, 2) for u, v in self.breakpoints)


def zigzag_to_piecewise(z: Zigzag) -> PiecewiseLinearDiagram:
    """
    Profile of a zigzag: slope -1 left of each concave corner, +1 right of it.

    Examples
    --------
    >>> zigzag_to_piecewise(Zigzag((-1, 1), (0,))).breakpoints
    ((-1, 1), (0, 2), (1, 1))
    """
    u_prev = z.concave[0]
    v = abs(u_prev)
    points = [(u_prev, v)]
    for y, x in zip(z.convex, z.concave[1:]):
        v = v + (y - u_prev)
        points.append((y, v))
        v = v - (x - y)
        points.append((x, v))
        u_prev = x
    return PiecewiseLinearDiagram(tuple(points))


def partition_profile(p: Partition) -> PiecewiseLinearDiagram:
    """Profile of a Young diagram as a :class:`PiecewiseLinearDiagram`."""
    return zigzag_to_piecewise(profile_of_partition(p))


def corners(d: PiecewiseLinearDiagram) -> Zigzag:
    """
    Extract the corners of a diagram whose slopes are all +-1.

    Raises
    ------
    ValueError
        If some segment has a slope other than +-1.
    """
    if d.is_empty:
        return Zigzag((0,), ())
    full = (-1,) + d.slopes + (1,)
    for s in d.slopes:
        if abs(abs(s) - 1) > SLOPE_TOL:
            raise ValueError(f"Not a zigzag: the diagram has a segment of slope {s}.")
    concave, convex = [], []
    for k, u in enumerate(d.us):
        if full[k] < 0 < full[k + 1]:
            concave.append(u)
        elif full[k] > 0 > full[k + 1]:
            convex.append(u)
    return Zigzag(tuple(concave), tuple(convex))


def is_zigzag(d: PiecewiseLinearDiagram) -> bool:
    """True when every segment of ``d`` has slope +-1."""
    return all(abs(abs(s) - 1) <= SLOPE_TOL for s in d.slopes)


def evaluate(d: PiecewiseLinearDiagram, u: Number) -> Number:
    """
    Value of the profile at ``u``.

    Linear interpolation between breakpoints, ``|u|`` outside the support.
    """
    us = d.us
    if len(us) == 1 or u <= us[0] or u >= us[-1]:
        return abs(u)
    k = bisect_right(us, u) - 1
    if u == us[k]:
        return d.vs[k]
    return d.vs[k] + d.slopes[k] * (u - us[k])


def evaluate_many(d: PiecewiseLinearDiagram, u: Sequence[float]) -> np.ndarray:
    """Vectorised float evaluation of the profile."""
    x = np.asarray(u, dtype=float)
    us = np.array([float(a) for a in d.us])
    vs = np.array([float(b) for b in d.vs])
    values = np.interp(x, us, vs)
    outside = (x <= us[0]) | (x >= us[-1])
    return np.where(outside, np.abs(x), values)


def rescale(d: PiecewiseLinearDiagram, c: Number) -> PiecewiseLinearDiagram:
    """
    Homothety of a diagram by the factor ``c > 0``.

    The result is the profile of the diagram scaled by ``c``:
    ``result(u) = c * d(u / c)``. Rescaling the profile of a Young diagram by
    ``1/n`` draws its boxes with side ``1/n``. The transition measure of the
    result is the dilation of the original one by ``c``.

    Raises
    ------
    ValueError
        If ``c <= 0``.
    """
    if not c > 0:
        raise ValueError(f"The scale factor must be positive, got {c}.")
    return PiecewiseLinearDiagram(tuple((c * u, c * v) for u, v in d.breakpoints))


def transpose(d: PiecewiseLinearDiagram) -> PiecewiseLinearDiagram:
    """Mirror image ``u -> -u``; for Young diagrams, the conjugate diagram."""
    return PiecewiseLinearDiagram(tuple((-u, v) for u, v in reversed(d.breakpoints)))


def support_radius(d: PiecewiseLinearDiagram) -> Number:
    """Smallest ``C`` with ``d(u) = |u|`` for ``|u| >= C``."""
    return max(abs(d.us[0]), abs(d.us[-1]))


def slope_bound(d: PiecewiseLinearDiagram, a: Number, b: Number) -> Number:
    """
    Largest absolute slope of ``d`` on the open interval ``(a, b)``.

    The contraction constant of ``d`` on ``[a, b]`` is ``1 - slope_bound``.
    """
    if not a < b:
        raise ValueError(f"Empty interval ({a}, {b}).")
    us = d.us
    if a < us[0] or b > us[-1]:
        return 1
    bound: Number = 0
    for k, s in enumerate(d.slopes):
        if us[k] < b and us[k + 1] > a:
            bound = max(bound, abs(s))
    return bound


def french_points(d: PiecewiseLinearDiagram) -> List[Tuple[Number, Number]]:
    """Breakpoints in French coordinates ``(x, y)``."""
    return list(zip(d.french_x, d.french_y))


# ------------------------------------------------------------------------------
# REFERENCE SHAPES
# ------------------------------------------------------------------------------
def triangle_diagram() -> PiecewiseLinearDiagram:
    """The limit shape of rescaled staircases: ``sqrt(2)`` on ``[-sqrt(2), sqrt(2)]``."""
    s = math.sqrt(2)
    return PiecewiseLinearDiagram(((-s, s), (s, s)))


@dataclass(frozen=True)
class AffineLine:
    """The line ``f(z) = z + b`` in Russian coordinates, with ``b > 0``."""

    intercept: Number

    def __post_init__(self) -> None:
        b = as_number(self.intercept)
        if not b > 0:
            raise ValueError(f"The intercept of the line must be positive, got {b}.")
        object.__setattr__(self, "intercept", b)

    def __call__(self, z: Number) -> Number:
        return z + self.intercept
