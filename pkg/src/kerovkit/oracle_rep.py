"""
Representation oracle module
============================

Independent, representation-theoretic description of transition measures of
Young diagrams.

The Plancherel growth process adds one box at a time; from a diagram
``lambda`` with ``n`` boxes it moves to ``mu = lambda + box`` with probability

    f^mu / ((n + 1) f^lambda),

where ``f^lambda`` is the number of standard tableaux of shape ``lambda``
(the dimension of the corresponding irreducible representation of the
symmetric group). Indexed by the content of the added box, these
probabilities are exactly the atoms of the transition measure computed from
residues, which makes this module an oracle for :mod:`kerovkit.transition`.

This module provides:

- ``dimension`` (hook-length formula) and ``count_standard_tableaux``
  (brute-force recursion over removable boxes),
- ``growth_probabilities``,
- ``partitions``, all partitions of ``n``,
- :class:`GrowthSampler` and ``sample_growth`` for trajectories of the
  growth process,
- ``first_growth_mismatch``, the exhaustive comparison against residues.

Notes
-----
All arithmetic is exact (``int`` and ``Fraction``). Trajectories are drawn
with NumPy's counter-based Philox generator (:data:`RNG_ALGORITHM`), which is
reproducible across platforms for a given seed.
"""

from __future__ import annotations

# --- Standard library ---
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional

# --- Mandatory third-party dependencies ---
import numpy as np

# --- Local dependencies ---
from .diagrams import Partition, content, profile_of_partition
from .transition import AtomicMeasure, transition_measure

# --- Logger ---
logger = logging.getLogger(__name__)

# --- Public API ---------------------------------------------------------------
__all__ = [
    "RNG_ALGORITHM",
    "dimension",
    "count_standard_tableaux",
    "growth_probabilities",
    "partitions",
    "GrowthSampler",
    "sample_growth",
    "first_growth_mismatch",
]

RNG_ALGORITHM = "philox4x64-10"


def dimension(p: Partition) -> int:
    """
    Number of standard tableaux of shape ``p``, by the hook-length formula.

    Examples
    --------
    >>> dimension(Partition((3, 2, 1)))
    16
    """
    conjugate = p.conjugate()
    hooks = 1
    for i, row in enumerate(p.rows, start=1):
        for j in range(1, row + 1):
            arm = row - j
            leg = conjugate.rows[j - 1] - i
            hooks *= arm + leg + 1
    return math.factorial(p.size) // hooks


@lru_cache(maxsize=None)
def _count_by_removal(rows: tuple) -> int:
    if not rows:
        return 1
    p = Partition(rows)
    return sum(_count_by_removal(p.remove_box(r).rows) for r, _ in p.removable_cells())


def count_standard_tableaux(p: Partition) -> int:
    """Number of standard tableaux of shape ``p``, counted by removing the largest entry."""
    return _count_by_removal(p.rows)


def growth_probabilities(p: Partition) -> AtomicMeasure:
    """
    One-step law of the Plancherel growth process, indexed by contents.

    Parameters
    ----------
    p : Partition
        Current diagram, with ``n`` boxes.

    Returns
    -------
    AtomicMeasure
        Atom ``f^mu / ((n + 1) f^lambda)`` at the content of each addable box.

    Examples
    --------
    >>> growth_probabilities(Partition((1,))).atoms
    ((-1, Fraction(1, 2)), (1, Fraction(1, 2)))
    """
    base = (p.size + 1) * dimension(p)
    atoms = []
    for row, col in p.addable_cells():
        atoms.append((content((row, col)), Fraction(dimension(p.add_box(row)), base)))
    atoms.sort()
    return AtomicMeasure(tuple(atoms))


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order, starting with ``(n)``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}.")

    def rec(remaining: int, largest: int) -> Iterator[tuple]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for rows in rec(n, n):
        yield Partition(rows)


class GrowthSampler:
    """
    Sampler of Plancherel growth trajectories.

    The sampler owns its generator, so one instance must not be shared
    between threads. Successive calls continue the same random stream.

    Parameters
    ----------
    seed : int
        Seed of the Philox generator.
    """

    algorithm = RNG_ALGORITHM

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = np.random.Generator(np.random.Philox(seed))

    def step(self, p: Partition) -> Partition:
        """Add one box to ``p`` according to :func:`growth_probabilities`."""
        law = growth_probabilities(p)
        cells = sorted(p.addable_cells(), key=content)
        weights = np.array([float(w) for w in law.weights])
        k = int(self._rng.choice(len(cells), p=weights / weights.sum()))
        return p.add_box(cells[k][0])

    def run(self, steps: int) -> List[Partition]:
        """Trajectory ``[(), lambda^1, ..., lambda^steps]``."""
        if steps < 0:
            raise ValueError(f"steps must be non-negative, got {steps}.")
        trajectory = [Partition()]
        for _ in range(steps):
            trajectory.append(self.step(trajectory[-1]))
        return trajectory


def sample_growth(steps: int, seed: int) -> List[Partition]:
    """
    Trajectory of the Plancherel growth process started from the empty diagram.

    Deterministic given ``seed``.

    Raises
    ------
    ValueError
        If ``steps < 0``.
    """
    trajectory = GrowthSampler(seed).run(steps)
    logger.info(f"Sampled {steps} growth steps with seed {seed} ({RNG_ALGORITHM}).")
    return trajectory


def first_growth_mismatch(max_n: int) -> Optional[Partition]:
    """
    Compare growth probabilities with residue atoms for every partition of size ``<= max_n``.

    Returns
    -------
    Partition or None
        The first partition where the two measures differ, None when all agree.
    """
    checked = 0
    for n in range(max_n + 1):
        for p in partitions(n):
            checked += 1
            if growth_probabilities(p) != transition_measure(profile_of_partition(p)):
                logger.warning(f"Growth probabilities and residues differ at {p}.")
                return p
    logger.info(f"Growth oracle agrees with residues on {checked} partitions (n <= {max_n}).")
    return None
