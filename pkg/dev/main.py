"""
Developer playground for kerovkit.

This script is NOT part of the official package.
Use it to try features locally without polluting the library API.
"""

import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from kerovkit.diagram_registry import get_diagram, load_registry, reference_law
from kerovkit.diagrams import corners
from kerovkit.experiments import rows_to_frame, staircase_rate_table
from kerovkit.shift_bounds import bound_terms, lower_bound_cdf, upper_bound_cdf
from kerovkit.transition import cdf, transition_measure

# ---------------------------------------------------------------------------
# Logging configuration
# ---------------------------------------------------------------------------
LOG_FILE = Path(__file__).with_suffix(".log")
script_name = os.path.basename(__file__)
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(name)s.%(funcName)s:%(lineno)d - %(message)s",
    handlers=[
        logging.FileHandler(LOG_FILE, encoding="utf-8", mode="w"),
        logging.StreamHandler(sys.stdout),
    ],
    force=True,
)
logger = logging.getLogger(Path(__file__).stem)
logger.info(">>> Dev script started.")

load_registry()

# ===============================================================
# Exact bounds around the staircase (4,3,2,1)
# ===============================================================
Omega = get_diagram("staircase-4")
measure = transition_measure(corners(Omega))
eps = Fraction(3, 10)

for z0 in (-1, 0, 1):
    upper = upper_bound_cdf(Omega, z0, eps)
    lower = lower_bound_cdf(Omega, z0, eps)
    logger.info(
        f"z0={z0}: K={float(cdf(measure, z0)):.6f}, "
        f"lower={None if lower is None else float(lower.bound_value)}, "
        f"upper={None if upper is None else float(upper.bound_value)}"
    )

terms = bound_terms(Omega, 0, eps, 2)
logger.info(f"near={float(terms.near)}, middle={float(terms.middle)}, tail={float(terms.tail)}")

# ===============================================================
# Triangle with its arcsine law
# ===============================================================
triangle = get_diagram("triangle")
law = reference_law("triangle")
for eps in (0.1, 0.05, 0.025):
    report = upper_bound_cdf(triangle, 0.0, eps, reference=law)
    logger.info(f"eps={eps}: z*={report.z_star:.6f}, upper bound={report.bound_value:.6f}")

# ===============================================================
# Staircase to arcsine rate
# ===============================================================
frame = rows_to_frame(staircase_rate_table([10, 20, 40, 80]))
print(frame.to_string(index=False))

logger.info(f">>> {script_name} finished.")
