"""Shared fixtures and hypothesis strategies."""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kerovkit import diagram_registry
from kerovkit.diagrams import (
    Partition,
    Zigzag,
    partition_profile,
    profile_of_partition,
    staircase,
    triangle_diagram,
)


@st.composite
def partitions(draw, max_rows: int = 5, max_row: int = 6) -> Partition:
    rows = draw(st.lists(st.integers(min_value=1, max_value=max_row), max_size=max_rows))
    return Partition(tuple(sorted(rows, reverse=True)))


@st.composite
def rational_zigzags(draw, max_rows: int = 4) -> Zigzag:
    """Profiles of partitions drawn with boxes of a random rational side."""
    p = draw(partitions(max_rows=max_rows, max_row=4))
    side = Fraction(draw(st.integers(1, 5)), draw(st.integers(1, 4)))
    z = profile_of_partition(p)
    return Zigzag(tuple(side * x for x in z.concave), tuple(side * y for y in z.convex))


@pytest.fixture
def staircase4():
    return partition_profile(staircase(4))


@pytest.fixture
def triangle():
    return triangle_diagram()


@pytest.fixture
def tmp_registry(tmp_path, monkeypatch):
    """Registry backed by a copy of the shipped JSON file."""
    path = tmp_path / "diagrams.json"
    path.write_text(diagram_registry.REGISTRY_PATH.read_text(encoding="utf-8"), encoding="utf-8")
    monkeypatch.setattr(diagram_registry, "REGISTRY_PATH", path)
    monkeypatch.setattr(diagram_registry, "DIAGRAMS", {})
    return path
