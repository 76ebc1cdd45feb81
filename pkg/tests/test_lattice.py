import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from novhom import (
    IrresolvableComparison,
    LatticeError,
    Ordering,
    WeightedLattice,
    compare_weights,
    kernel_and_split,
    project_to_quotient,
)

SQRT2 = "1.41421356237309504880168872420969807856967187537694"


def test_kernel_and_split_single_channel():
    lat = WeightedLattice(2, [([1, 1], 1)])
    split = kernel_and_split(lat)
    assert split.kernel_basis == ((1, -1),)
    assert split.complement_basis == ((1, 0),)
    assert split.image_rank == 1


def test_kernel_and_split_zero_channels():
    lat = WeightedLattice(2, [])
    split = kernel_and_split(lat)
    assert split.kernel_basis == ((1, 0), (0, 1))
    assert split.complement_basis == ()
    assert split.image_rank == 0


def test_kernel_and_split_independent_channels():
    lat = WeightedLattice(2, [([1, 0], 1), ([0, 1], SQRT2)])
    split = kernel_and_split(lat)
    assert split.kernel_basis == ()
    assert split.complement_basis == ((1, 0), (0, 1))
    assert split.image_rank == 2


def test_rejects_dependent_channels():
    with pytest.raises(LatticeError):
        WeightedLattice(2, [([1, 1], 1), ([2, 2], SQRT2)])


@pytest.mark.parametrize(
    "g1,g2,expected",
    [
        ((2, 0), (1, 1), Ordering.EQUAL),
        ((0, 0), (1, 0), Ordering.LESS),
        ((1, 0), (0, 0), Ordering.GREATER),
    ],
)
def test_compare_single_channel(g1, g2, expected):
    lat = WeightedLattice(2, [([1, 1], 1)])
    assert compare_weights(lat, g1, g2) == expected


def test_compare_mixed_channels():
    lat = WeightedLattice(2, [([1, 0], 1), ([0, 1], SQRT2)])
    # 3 versus 2*sqrt(2)
    assert compare_weights(lat, (3, 0), (0, 2)) == Ordering.GREATER


def test_compare_raises_below_separation():
    lat = WeightedLattice(
        2, [([1, 0], 1), ([0, 1], 1)]
    )  # equal values: distinct rows, zero difference
    with pytest.raises(IrresolvableComparison):
        compare_weights(lat, (1, 0), (0, 1))


def test_separation_threshold_configurable():
    lat = WeightedLattice(
        2,
        [([1, 0], 1), ([0, 1], Fraction(10**10 + 1, 10**10))],
        separation=Fraction(1, 100),
    )
    with pytest.raises(IrresolvableComparison):
        compare_weights(lat, (1, 0), (0, 1))


@pytest.mark.parametrize(
    "g,expected",
    [
        ((1, -1), (0,)),
        ((1, 0), (1,)),
    ],
)
def test_project_single_channel(g, expected):
    lat = WeightedLattice(2, [([1, 1], 1)])
    split = kernel_and_split(lat)
    assert project_to_quotient(lat, split, g) == expected


def test_project_zero_channels_gives_empty_vector():
    lat = WeightedLattice(2, [])
    split = kernel_and_split(lat)
    assert project_to_quotient(lat, split, (7, -3)) == ()


def test_json_round_trip():
    lat = WeightedLattice(2, [([Fraction(1, 2), 1], SQRT2)])
    data = json.loads(json.dumps(lat.to_json_dict()))
    assert WeightedLattice.from_json_dict(data) == lat


def _random_lattices():
    rows = st.lists(
        st.lists(st.integers(-3, 3), min_size=2, max_size=2),
        min_size=0,
        max_size=2,
    )
    values = st.sampled_from([1, Fraction(7, 5), Fraction(3, 2)])
    return st.tuples(rows, values)


@settings(max_examples=150, deadline=None)
@given(_random_lattices(), st.lists(st.integers(-8, 8), min_size=2, max_size=2))
def test_projection_kernel_is_weight_kernel(data, g):
    rows, value = data
    channels = []
    values = [Fraction(1), Fraction(value) * Fraction(991, 701)]
    for i, row in enumerate(rows):
        channels.append((row, values[i % 2]))
    try:
        lat = WeightedLattice(2, channels)
    except LatticeError:
        return
    split = kernel_and_split(lat)
    image = project_to_quotient(lat, split, g)
    key = lat.weight_key(g)
    assert (all(x == 0 for x in image)) == all(k == 0 for k in key)
    # unique reconstruction through the split basis
    kernel, complement = split.decompose(g)
    rebuilt = [
        a + b
        for a, b in zip(split.embed_kernel(kernel), split.embed(complement))
    ]
    assert tuple(rebuilt) == tuple(g)
    # weight preserved by embedding the projection
    assert lat.weight(split.embed(image)) == lat.weight(g)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
    st.lists(st.integers(-6, 6), min_size=2, max_size=2),
)
def test_order_translation_invariant(g1, g2, shift):
    lat = WeightedLattice(2, [([1, 2], 1), ([3, 1], Fraction(355, 113))])
    assert compare_weights(lat, g1, g1) == Ordering.EQUAL
    base = compare_weights(lat, g1, g2)
    shifted = compare_weights(
        lat,
        [a + s for a, s in zip(g1, shift)],
        [a + s for a, s in zip(g2, shift)],
    )
    assert base == shifted
