from fractions import Fraction

import pytest
from hypothesis import given

from conftest import partitions as partition_strategy
from kerovkit.diagrams import Partition, profile_of_partition, staircase
from kerovkit.oracle_rep import (
    RNG_ALGORITHM,
    GrowthSampler,
    count_standard_tableaux,
    dimension,
    first_growth_mismatch,
    growth_probabilities,
    partitions,
    sample_growth,
)
from kerovkit.transition import transition_measure


@pytest.mark.parametrize(
    "rows, expected",
    [
        ((), 1),
        ((1,), 1),
        ((4,), 1),
        ((2, 1), 2),
        ((2, 2), 2),
        ((3, 2, 1), 16),
        ((4, 3, 2, 1), 768),
    ],
)
def test_dimension(rows, expected):
    assert dimension(Partition(rows)) == expected


def test_brute_force_count_matches_hook_lengths():
    for N in range(5):
        assert count_standard_tableaux(staircase(N)) == dimension(staircase(N))
    for n in range(8):
        for p in partitions(n):
            assert count_standard_tableaux(p) == dimension(p)


def test_partitions_are_enumerated_once():
    counts = [sum(1 for _ in partitions(n)) for n in range(11)]
    assert counts == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert next(iter(partitions(5))) == Partition((5,))
    assert list(partitions(3)) == [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]
    with pytest.raises(ValueError):
        list(partitions(-1))


def test_growth_probabilities_examples():
    assert growth_probabilities(Partition()).atoms == ((0, 1),)
    assert growth_probabilities(Partition((2, 1))).atoms == (
        (-2, Fraction(3, 8)),
        (0, Fraction(1, 4)),
        (2, Fraction(3, 8)),
    )


@given(partition_strategy())
def test_growth_probabilities_are_residues(p):
    assert growth_probabilities(p) == transition_measure(profile_of_partition(p))


def test_no_growth_mismatch_up_to_ten_boxes():
    assert first_growth_mismatch(10) is None


def test_sample_growth_shapes():
    assert sample_growth(0, seed=1) == [Partition()]
    assert sample_growth(1, seed=1) == [Partition(), Partition((1,))]
    trajectory = sample_growth(25, seed=7)
    assert [p.size for p in trajectory] == list(range(26))
    for before, after in zip(trajectory, trajectory[1:]):
        assert all(a >= b for a, b in zip(after.rows, before.rows))
    with pytest.raises(ValueError):
        sample_growth(-1, seed=1)


def test_sample_growth_is_reproducible():
    assert sample_growth(30, seed=11) == sample_growth(30, seed=11)
    assert GrowthSampler(0).algorithm == RNG_ALGORITHM == "philox4x64-10"


def test_second_box_is_a_fair_coin():
    sampler = GrowthSampler(2024)
    runs = 10_000
    rows = sum(1 for _ in range(runs) if sampler.step(Partition((1,))) == Partition((2,)))
    assert abs(rows / runs - 0.5) < 0.02
