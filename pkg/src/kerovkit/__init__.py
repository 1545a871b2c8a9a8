"""
kerovkit: Transition measures of Young diagrams and continual diagrams.

Modules:
- diagrams: Partitions, zigzags and piecewise linear continual diagrams
- transition: Cauchy transforms, transition measures and cumulative functions
- approximation: Inner Young-diagram approximations of continual diagrams
- metric: The projection Hausdorff metric between diagrams
- shift_bounds: Epsilon-shifted diagrams and bounds for cumulative functions
- oracle_rep: Hook-length dimensions and the Plancherel growth process
- experiments: Staircase / triangle rate tables and random bound sweeps
- diagram_registry: Register and load named reference diagrams
- utils: Diagram files, JSON encoders and number parsing
- cli: The ``kerovkit`` console script
"""

from importlib.metadata import PackageNotFoundError, version

__all__ = [
    "diagrams",
    "transition",
    "approximation",
    "metric",
    "shift_bounds",
    "oracle_rep",
    "experiments",
    "diagram_registry",
    "utils",
    "cli",
]

try:
    __version__ = version("kerovkit")
except PackageNotFoundError:
    __version__ = "0.0.0"
