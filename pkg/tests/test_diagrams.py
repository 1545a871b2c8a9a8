import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import partitions, rational_zigzags
from kerovkit.diagrams import (
    AffineLine,
    Partition,
    PiecewiseLinearDiagram,
    Zigzag,
    corners,
    evaluate,
    evaluate_many,
    french_points,
    is_zigzag,
    partition_profile,
    profile_of_partition,
    rescale,
    slope_bound,
    staircase,
    support_radius,
    transpose,
    triangle_diagram,
    zigzag_to_piecewise,
)
from kerovkit.oracle_rep import partitions as all_partitions

SQRT2 = math.sqrt(2)


# ------------------------------------------------------------------------------
# Partitions
# ------------------------------------------------------------------------------
def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(TypeError):
        Partition((1.5,))


def test_partition_cells_and_moves():
    p = Partition((2, 1))
    assert p.size == 3
    assert p.conjugate() == Partition((2, 1))
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
    assert p.addable_cells() == [(1, 3), (2, 2), (3, 1)]
    assert p.removable_cells() == [(1, 2), (2, 1)]
    assert p.add_box(2) == Partition((2, 2))
    assert p.remove_box(1) == Partition((1, 1))
    with pytest.raises(ValueError):
        p.remove_box(3)


def test_staircase():
    assert staircase(1) == Partition((1,))
    assert staircase(3) == Partition((3, 2, 1))
    assert staircase(3).size == 6
    assert staircase(4).size == 10
    assert staircase(0) == Partition()
    with pytest.raises(ValueError):
        staircase(-1)


# ------------------------------------------------------------------------------
# Zigzags
# ------------------------------------------------------------------------------
@pytest.mark.parametrize(
    "rows, concave, convex",
    [
        ((1,), (-1, 1), (0,)),
        ((), (0,), ()),
        ((2, 1), (-2, 0, 2), (-1, 1)),
    ],
)
def test_profile_of_partition(rows, concave, convex):
    z = profile_of_partition(Partition(rows))
    assert z.concave == concave
    assert z.convex == convex


@given(partitions())
def test_profile_interlaces_and_is_centered(p):
    z = profile_of_partition(p)
    merged = [z.concave[0]]
    for y, x in zip(z.convex, z.concave[1:]):
        merged += [y, x]
    assert merged == sorted(set(merged))
    assert sum(z.concave) == sum(z.convex)


def test_zigzag_validation():
    with pytest.raises(ValueError):
        Zigzag((-1, 1), (2,))
    with pytest.raises(ValueError):
        Zigzag((-1, 2), (0,))
    with pytest.raises(ValueError):
        Zigzag((-1, 1), ())


def test_zigzag_to_piecewise_examples():
    assert zigzag_to_piecewise(Zigzag((-1, 1), (0,))).breakpoints == ((-1, 1), (0, 2), (1, 1))
    assert zigzag_to_piecewise(Zigzag((0,))).breakpoints == ((0, 0),)
    d = partition_profile(staircase(2))
    for x in (-2, 0, 2):
        assert evaluate(d, x) == 2


@given(rational_zigzags())
def test_corner_extraction_inverts_zigzag_to_piecewise(z):
    d = zigzag_to_piecewise(z)
    assert is_zigzag(d)
    assert corners(d) == z


def test_corners_rejects_flat_segments(triangle):
    assert not is_zigzag(triangle)
    with pytest.raises(ValueError):
        corners(triangle)


# ------------------------------------------------------------------------------
# Continual diagrams
# ------------------------------------------------------------------------------
def test_breakpoint_validation():
    with pytest.raises(ValueError):
        PiecewiseLinearDiagram(((-1, 1), (0, 3), (1, 1)))
    with pytest.raises(ValueError):
        PiecewiseLinearDiagram(((-1, 1), (0, -1), (1, 1)))
    with pytest.raises(ValueError):
        PiecewiseLinearDiagram(((-1, 2), (1, 2)))


def test_breakpoints_are_normalised():
    single_box = partition_profile(Partition((1,)))
    half = Fraction(1, 2)
    assert PiecewiseLinearDiagram(((-1, 1), (-half, 3 * half), (0, 2), (1, 1))) == single_box
    assert PiecewiseLinearDiagram(((-3, 3), (-1, 1), (0, 2), (1, 1), (2, 2))) == single_box
    assert PiecewiseLinearDiagram(((-2, 2), (2, 2))).breakpoints == ((-2, 2), (2, 2))
    assert PiecewiseLinearDiagram(((-1, 1), (0, 0), (1, 1))).breakpoints == ((0, 0),)


def test_evaluate(triangle):
    assert evaluate(triangle, 0) == pytest.approx(SQRT2)
    assert evaluate(triangle, SQRT2) == pytest.approx(SQRT2)
    assert evaluate(triangle, -1) == pytest.approx(SQRT2)
    assert evaluate(triangle, 2) == 2
    d = partition_profile(Partition((3, 1)))
    assert evaluate(d, d.us[-1] + 5) == d.us[-1] + 5
    assert evaluate(partition_profile(Partition((1,))), 0) == 2
    assert evaluate(partition_profile(Partition((1,))), Fraction(1, 2)) == Fraction(3, 2)


def test_evaluate_many_matches_evaluate(staircase4):
    points = [-6.0, -3.5, -0.25, 0.0, 1.75, 4.0, 9.0]
    values = evaluate_many(staircase4, points)
    assert values.tolist() == pytest.approx([float(evaluate(staircase4, u)) for u in points])


@given(partitions(), st.fractions(-8, 8), st.fractions(-8, 8))
def test_profiles_are_one_lipschitz(p, u1, u2):
    d = partition_profile(p)
    assert abs(evaluate(d, u1) - evaluate(d, u2)) <= abs(u1 - u2)
    assert evaluate(d, u1) >= abs(u1)


def test_rescale():
    d = partition_profile(Partition((1,)))
    assert rescale(d, 1) == d
    N, n = 4, 10
    shape = rescale(partition_profile(staircase(N)), 1 / math.sqrt(n))
    assert evaluate(shape, 0) == pytest.approx(N / math.sqrt(n))
    assert evaluate(shape, 0) == pytest.approx(SQRT2 * N / math.sqrt(N * (N + 1)))
    back = rescale(rescale(d, 0.37), 1 / 0.37)
    for (u, v), (u0, v0) in zip(back.breakpoints, d.breakpoints):
        assert abs(u - u0) <= 1e-12 and abs(v - v0) <= 1e-12
    with pytest.raises(ValueError):
        rescale(d, 0)


def test_transpose_examples(triangle):
    assert transpose(triangle) == triangle
    assert transpose(partition_profile(Partition((2, 1)))) == partition_profile(Partition((2, 1)))
    assert transpose(partition_profile(Partition((2,)))) == partition_profile(Partition((1, 1)))


def test_transpose_is_conjugation_up_to_eight_boxes():
    for n in range(9):
        for p in all_partitions(n):
            d = partition_profile(p)
            assert transpose(d) == partition_profile(p.conjugate())
            assert transpose(transpose(d)) == d


def test_support_and_slopes(triangle, staircase4):
    assert support_radius(staircase4) == 4
    assert support_radius(partition_profile(Partition())) == 0
    assert slope_bound(triangle, -1, 1) == 0
    assert slope_bound(triangle, -2, 1) == 1
    assert slope_bound(staircase4, -1, 1) == 1
    assert french_points(partition_profile(Partition((1,)))) == [(0, 1), (1, 1), (1, 0)]


def test_triangle_breakpoints():
    assert triangle_diagram().breakpoints == ((-SQRT2, SQRT2), (SQRT2, SQRT2))


def test_affine_line():
    line = AffineLine(Fraction(1, 2))
    assert line(1) == Fraction(3, 2)
    with pytest.raises(ValueError):
        AffineLine(0)


@settings(max_examples=30)
@given(partitions())
def test_french_coordinates_are_monotone(p):
    d = partition_profile(p)
    assert list(d.french_x) == sorted(d.french_x)
    assert list(d.french_y) == sorted(d.french_y, reverse=True)
