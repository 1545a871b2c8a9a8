"""
Diagram Registry
================

This module provides a lightweight registry of named reference diagrams used
by the command-line front end and the experiments. It is designed to:

- Record diagram information (name, description, rows or breakpoints, and
  the name of a closed-form transition law when one is known),
- Store this registry as a JSON file inside the package ``data/`` directory,
- Reload the registry to reconstruct :class:`RegisteredDiagram` objects,
- Resolve a registry name or a diagram file into a
  :class:`~kerovkit.diagrams.PiecewiseLinearDiagram`.

Notes
-----
- No code is executed when the module is imported.
- The shipped entries are ``empty``, ``single-box``, ``staircase-4`` and
  ``triangle`` (with the arcsine law).
- The JSON file is stored at ``src/kerovkit/data/diagrams.json``.
"""

# --- Standard library ---
import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional

# --- Local dependencies ---
from .diagrams import PiecewiseLinearDiagram
from .transition import ContinuousLaw, arcsine_law
from .utils import diagram_from_json, load_diagram

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "REGISTRY_PATH",
    "DIAGRAMS",
    "RegisteredDiagram",
    "load_registry",
    "save_registry",
    "register_diagram",
    "get_diagram",
    "reference_law",
    "resolve_diagram",
]

# ---------------------------------------------------------------------------
# Path to registry file
# ---------------------------------------------------------------------------
REGISTRY_PATH = Path(__file__).resolve().parent / "data" / "diagrams.json"

LAWS = {"arcsine": arcsine_law}


# ---------------------------------------------------------------------------
# Diagram dataclass
# ---------------------------------------------------------------------------
@dataclass
class RegisteredDiagram:
    """
    A named reference diagram.

    Parameters
    ----------
    name : str
        Registry key (e.g. ``"staircase-4"``).
    description : str
        Short description.
    partition : list of int, optional
        Rows of a Young diagram.
    breakpoints : list of [u, v], optional
        Breakpoints of a continual diagram; used when ``partition`` is None.
    law : str
        Name of the closed-form transition law (``"arcsine"``), or ``""``.
    """

    name: str
    description: str = ""
    partition: Optional[List[int]] = None
    breakpoints: Optional[List[List[float]]] = None
    law: str = ""

    def to_diagram(self) -> PiecewiseLinearDiagram:
        if self.partition is not None:
            return diagram_from_json({"partition": self.partition}, self.name)
        if self.breakpoints is not None:
            return diagram_from_json({"breakpoints": self.breakpoints}, self.name)
        raise ValueError(f"Registry entry {self.name!r} has neither rows nor breakpoints.")


DIAGRAMS: Dict[str, RegisteredDiagram] = {}


def _record(entry: RegisteredDiagram) -> Dict:
    # the key carries the name; unset fields are left out of the file
    return {k: v for k, v in asdict(entry).items() if k != "name" and v not in (None, "")}


def load_registry() -> None:
    """
    Rebuild :data:`DIAGRAMS` from the JSON file.

    A missing file gives an empty registry. Entries whose rows or breakpoints
    do not describe a diagram are skipped with a warning, so a bad record
    cannot hide the others.
    """
    DIAGRAMS.clear()
    try:
        records = json.loads(REGISTRY_PATH.read_text(encoding="utf-8"))
    except FileNotFoundError:
        logger.info(f"No diagram registry at {REGISTRY_PATH}; starting empty.")
        return
    for name, record in records.items():
        entry = RegisteredDiagram(**{**record, "name": name})
        try:
            entry.to_diagram()
        except ValueError as e:
            logger.warning(f"Skipping registry entry {name!r}: {e}")
            continue
        DIAGRAMS[name] = entry
    logger.info(f"Diagram registry loaded: {', '.join(sorted(DIAGRAMS)) or 'no entries'}.")


def save_registry() -> None:
    """Write :data:`DIAGRAMS` to the JSON file, sorted by name."""
    records = {name: _record(DIAGRAMS[name]) for name in sorted(DIAGRAMS)}
    REGISTRY_PATH.parent.mkdir(parents=True, exist_ok=True)
    REGISTRY_PATH.write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Diagram registry saved ({len(records)} entries) to {REGISTRY_PATH}.")


# ---------------------------------------------------------------------------
# Main API
# ---------------------------------------------------------------------------
def register_diagram(entry: RegisteredDiagram) -> None:
    """
    Add or update a diagram in the registry and save to disk.

    The entry is validated by building its diagram first.
    """
    entry.to_diagram()
    load_registry()
    DIAGRAMS[entry.name] = entry
    save_registry()


def _entry(name: str) -> RegisteredDiagram:
    if not DIAGRAMS:
        load_registry()
    try:
        return DIAGRAMS[name]
    except KeyError:
        known = ", ".join(sorted(DIAGRAMS))
        raise KeyError(f"Unknown diagram {name!r}; known diagrams: {known}.") from None


def get_diagram(name: str) -> PiecewiseLinearDiagram:
    """
    Diagram registered under ``name``.

    Raises
    ------
    KeyError
        For an unknown name; the message lists the registered ones.
    """
    return _entry(name).to_diagram()


def reference_law(name: str) -> Optional[ContinuousLaw]:
    """Closed-form transition law of a registered diagram, if it has one."""
    law = _entry(name).law
    if not law:
        return None
    if law not in LAWS:
        raise ValueError(f"Unknown law {law!r} for diagram {name!r}.")
    return LAWS[law]()


def resolve_diagram(spec: str) -> PiecewiseLinearDiagram:
    """
    Diagram named ``spec`` in the registry, or loaded from the file ``spec``.

    Raises
    ------
    FileNotFoundError
        If ``spec`` is neither a registered name nor an existing file.
    """
    if not DIAGRAMS:
        load_registry()
    if spec in DIAGRAMS:
        return get_diagram(spec)
    return load_diagram(spec)
