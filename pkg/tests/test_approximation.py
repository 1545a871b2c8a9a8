from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import partitions
from kerovkit.approximation import (
    CdfEstimate,
    approximate_measure,
    cdf_continual,
    inner_partition,
)
from kerovkit.diagrams import (
    Partition,
    PiecewiseLinearDiagram,
    partition_profile,
    profile_of_partition,
    rescale,
    staircase,
)
from kerovkit.oracle_rep import partitions as all_partitions
from kerovkit.transition import cdf, transition_measure

HALF = Fraction(1, 2)


def test_inner_partition_of_the_empty_diagram():
    assert inner_partition(partition_profile(Partition()), 5) == Partition()


def test_inner_partition_rejects_bad_resolution():
    with pytest.raises(ValueError):
        inner_partition(partition_profile(Partition((1,))), 0)
    with pytest.raises(ValueError):
        inner_partition(partition_profile(Partition((1,))), 1.5)


def test_young_diagrams_are_their_own_approximation():
    for n in range(7):
        for p in all_partitions(n):
            assert inner_partition(partition_profile(p), 1) == p


def test_inner_partition_of_rescaled_profile():
    d = rescale(partition_profile(Partition((3, 1))), HALF)
    assert inner_partition(d, 2) == Partition((3, 1))
    assert inner_partition(d, 4) == Partition((6, 6, 2, 2))
    expected = transition_measure(profile_of_partition(Partition((3, 1)))).dilate(HALF)
    assert approximate_measure(d, 2) == expected


def test_triangle_approximations_are_staircases(triangle):
    # boxes fit iff i + j <= n sqrt(2)
    assert inner_partition(triangle, 4) == staircase(4)
    assert inner_partition(triangle, 8) == staircase(10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_refinement_keeps_every_box(triangle, n):
    coarse = inner_partition(triangle, n)
    fine = inner_partition(triangle, 2 * n)
    for r, length in enumerate(coarse.rows):
        assert fine.rows[2 * r] >= 2 * length
        assert fine.rows[2 * r + 1] >= 2 * length


def test_transition_measure_vanishes_along_slope_one():
    d = PiecewiseLinearDiagram(
        ((Fraction(-2), Fraction(2)), (Fraction(-1, 2), Fraction(7, 2)), (Fraction(2), Fraction(2)))
    )
    for n in (4, 8, 16):
        measure = approximate_measure(d, n)
        assert sum(measure.weights) == 1
        assert not any(Fraction(-2) < x < Fraction(-1, 2) for x in measure.locations)


def test_cdf_continual_on_the_triangle(triangle):
    estimate = cdf_continual(triangle, 1.0, n_max=256)
    assert abs(estimate.value - 0.75) <= estimate.error_bound
    assert estimate.resolution == 256
    assert [n for n, _ in estimate.ladder] == [64, 128, 256]
    assert estimate.note == "engineering estimate"


@settings(max_examples=30, deadline=None)
@given(partitions(max_rows=4, max_row=5), st.sampled_from([1, 2, 3]))
def test_cdf_continual_is_exact_on_grid_zigzags(p, m):
    d = rescale(partition_profile(p), Fraction(1, m))
    exact = transition_measure(profile_of_partition(p)).dilate(Fraction(1, m))
    z = profile_of_partition(p)
    for k in range(z.concave[0], z.concave[-1]):
        t = Fraction(2 * k + 1, 2 * m)
        estimate = cdf_continual(d, t, n_max=4 * m)
        value = float(cdf(exact, t))
        assert estimate.value == value
        assert [v for _, v in estimate.ladder] == [value] * 3
        assert estimate.error_bound == min(2 / (4 * m), value, 1 - value)


def test_cdf_continual_outside_the_support(triangle):
    assert cdf_continual(triangle, 2.0).value == 1.0
    assert cdf_continual(triangle, -2.0).value == 0.0
    assert cdf_continual(triangle, -2.0).error_bound == 0.0


def test_cdf_continual_rejects_small_resolution(triangle):
    with pytest.raises(ValueError):
        cdf_continual(triangle, 0.0, n_max=3)


def test_cdf_estimate_validation():
    with pytest.raises(ValueError):
        CdfEstimate(value=1.5, error_bound=0.0, resolution=4)
    with pytest.raises(ValueError):
        CdfEstimate(value=0.5, error_bound=-1.0, resolution=4)
