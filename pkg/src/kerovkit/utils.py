"""
Utils module
============

Helpers shared by the command-line front end, the registry and the
experiments.

This module provides:

- Loading of diagram files in either supported JSON format
  (``load_diagram``),
- JSON encoders for partitions, diagrams and measures (``partition_to_json``,
  ``diagram_to_json``, ``measure_to_json``),
- Parsing of command-line values into exact numbers (``parse_partition``,
  ``parse_real``, ``parse_real_list``),
- Printing floats with 17 significant digits (``format_float``).

Two JSON layouts describe a diagram:

- ``{"partition": [4, 2, 2, 2]}`` for a Young diagram,
- ``{"breakpoints": [[u, v], ...]}`` for a continual diagram. Coordinates
  may be JSON numbers or strings such as ``"3/2"``; strings are read as
  exact fractions.
"""

from __future__ import annotations

# --- Standard library ---
import json
import logging
from fractions import Fraction
from numbers import Integral, Rational
from pathlib import Path
from typing import Callable, Dict, List, Tuple

# --- Local dependencies ---
from .diagrams import Number, Partition, PiecewiseLinearDiagram, partition_profile
from .transition import AtomicMeasure

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "FLOAT_DIGITS",
    "load_diagram",
    "diagram_from_json",
    "diagram_to_json",
    "partition_to_json",
    "measure_to_json",
    "parse_partition",
    "parse_real",
    "parse_real_list",
    "format_float",
]

FLOAT_DIGITS = 17


# ------------------------------------------------------------------------------
# NUMBERS
# ------------------------------------------------------------------------------
def _to_json_number(x: Number):
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Rational):
        x = Fraction(x)
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(x)


def _from_json_number(x) -> Number:
    if isinstance(x, bool):
        raise TypeError("Booleans are not valid coordinates.")
    if isinstance(x, str):
        return Fraction(x)
    return x


def parse_real(text: str) -> Fraction:
    """
    Parse ``"0.3"`` or ``"3/10"`` into an exact fraction.

    Examples
    --------
    >>> parse_real("0.3")
    Fraction(3, 10)
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a real number: {text!r}.") from exc


def parse_real_list(text: str) -> List[Fraction]:
    """Parse a comma-separated list such as ``"0.05,0.025"``."""
    return [parse_real(item) for item in text.split(",") if item.strip()]


def parse_partition(text: str) -> Partition:
    """
    Parse ``"4,2,2,2"`` into a :class:`Partition`; an empty string is the empty diagram.

    Raises
    ------
    ValueError
        If an entry is not an integer or the rows are not a partition.
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    try:
        rows = tuple(int(item) for item in items)
    except ValueError as exc:
        raise ValueError(f"Not a partition: {text!r}.") from exc
    return Partition(rows)


def format_float(x: Number) -> str:
    """Render ``x`` as a float with :data:`FLOAT_DIGITS` significant digits."""
    return f"{float(x):.{FLOAT_DIGITS}g}"


# ------------------------------------------------------------------------------
# JSON ENCODING
# ------------------------------------------------------------------------------
def partition_to_json(p: Partition) -> Dict:
    return {"partition": list(p.rows)}


def diagram_to_json(d: PiecewiseLinearDiagram) -> Dict:
    """``{"breakpoints": [[u, v], ...]}``; non-integer fractions are written as strings."""
    return {"breakpoints": [[_to_json_number(u), _to_json_number(v)] for u, v in d.breakpoints]}


def measure_to_json(m: AtomicMeasure) -> Dict:
    """
    JSON form of an atomic measure.

    Exact measures are written as ``[location, weight_numerator,
    weight_denominator]`` triples, float measures as ``[location, weight]``
    pairs.
    """
    if m.is_exact:
        atoms = [
            [_to_json_number(a), Fraction(w).numerator, Fraction(w).denominator]
            for a, w in m.atoms
        ]
        return {"exact": True, "atoms": atoms}
    return {"exact": False, "atoms": [[float(a), float(w)] for a, w in m.atoms]}


# ------------------------------------------------------------------------------
# DIAGRAM FILES
# ------------------------------------------------------------------------------
def _read_partition(data: Dict) -> PiecewiseLinearDiagram:
    return partition_profile(Partition(tuple(data["partition"])))


def _read_breakpoints(data: Dict) -> PiecewiseLinearDiagram:
    points: List[Tuple[Number, Number]] = [
        (_from_json_number(u), _from_json_number(v)) for u, v in data["breakpoints"]
    ]
    return PiecewiseLinearDiagram(tuple(points))


_READERS: Tuple[Tuple[str, Callable[[Dict], PiecewiseLinearDiagram]], ...] = (
    ("partition", _read_partition),
    ("breakpoints", _read_breakpoints),
)


def diagram_from_json(data: Dict, source: str = "<json>") -> PiecewiseLinearDiagram:
    """
    Build a diagram from a decoded JSON object.

    The known layouts are tried in order (partition, then breakpoints); the
    first one that succeeds is used.

    Raises
    ------
    ValueError
        If no layout matches, with the reason each one failed.
    """
    failures = []
    for name, reader in _READERS:
        if name not in data:
            failures.append(f"{name}: key missing")
            continue
        try:
            diagram = reader(data)
            logger.info(f"Read {source} as a {name} diagram.")
            return diagram
        except (TypeError, ValueError) as e:
            logger.warning(f"Failed to read {source} as a {name} diagram: {e}")
            failures.append(f"{name}: {e}")
    raise ValueError(f"Could not read a diagram from {source} ({'; '.join(failures)}).")


def load_diagram(path: str | Path) -> PiecewiseLinearDiagram:
    """
    Load a diagram from a JSON file.

    Parameters
    ----------
    path : str or Path

    Returns
    -------
    PiecewiseLinearDiagram
        The profile of the partition, or the continual diagram given by the
        breakpoints.

    Raises
    ------
    FileNotFoundError
        If the file does not exist.
    ValueError
        If the file holds neither layout.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Diagram file {path} does not exist.")
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path} must hold a JSON object.")
    return diagram_from_json(data, str(path))
