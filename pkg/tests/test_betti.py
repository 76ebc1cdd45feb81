import random
from fractions import Fraction

import pytest

from helpers import (
    generic_lattice,
    random_laurent,
    random_valid_complex,
    truncation_parameters,
)
from novhom import (
    GroupRingComplex,
    InsufficientCutoff,
    InvalidComplexError,
    LaurentPoly,
    NonUnitPivot,
    TruncatedSeries,
    WeightedLattice,
    laurent_to_series,
    novikov_betti,
    preset_complex,
    rank_by_evaluation,
    rank_over_fraction_field,
    rank_over_truncated_novikov,
    series_matrix_from_laurent,
    specialize_to_theta,
)


def t_minus_one(rank=1, index=0):
    return LaurentPoly(
        rank,
        [
            (tuple(1 if i == index else 0 for i in range(rank)), 1),
            ((0,) * rank, -1),
        ],
    )


class TestFractionFieldRank:
    def test_single_nonzero_entry(self):
        assert rank_over_fraction_field([[t_minus_one()]]) == 1

    def test_zero_matrix(self):
        z = LaurentPoly.zero(2)
        assert rank_over_fraction_field([[z, z], [z, z]]) == 0

    def test_symbolic_two_by_two(self):
        # [[t-1, s-1], [s-1, t-1]] with independent variables has nonzero
        # determinant (t-1)^2 - (s-1)^2, hence full rank
        a = t_minus_one(2, 0)
        b = t_minus_one(2, 1)
        assert rank_over_fraction_field([[a, b], [b, a]]) == 2

    def test_rank_deficient_symbolic(self):
        a = t_minus_one(2, 0)
        b = t_minus_one(2, 1)
        assert rank_over_fraction_field([[a, b], [a, b]]) == 1
        assert rank_over_fraction_field([[a, a], [b, b]]) == 1

    def test_integer_coefficients_supported(self):
        a = t_minus_one()
        two = LaurentPoly.constant(1, 2)
        assert rank_over_fraction_field([[a * a, two * a], [a, two]]) == 1

    def test_cross_check_against_random_evaluation(self):
        rng = random.Random(23)
        for _ in range(100):
            rank = rng.randint(1, 2)
            matrix = [
                [random_laurent(rng, rank) for _ in range(5)] for _ in range(5)
            ]
            # plant rank deficiencies: copy some rows
            for _ in range(rng.randint(0, 2)):
                i, j = rng.sample(range(5), 2)
                matrix[i] = list(matrix[j])
            symbolic = rank_over_fraction_field(matrix)
            sampled = rank_by_evaluation(matrix, random.Random(rng.randint(0, 10**6)))
            assert symbolic == sampled


class TestNovikovBetti:
    def test_circle_nonzero_weight(self):
        report = novikov_betti(preset_complex("circle"), WeightedLattice(1, [([1], 1)]))
        assert report.betti == {0: 0, 1: 0}

    def test_circle_zero_weight(self):
        report = novikov_betti(preset_complex("circle"), WeightedLattice(1, []))
        assert report.betti == {0: 1, 1: 1}

    def test_torus2_directional_weight(self):
        report = novikov_betti(
            preset_complex("torus2"), WeightedLattice(2, [([1, 0], 1)])
        )
        assert report.betti == {0: 0, 1: 0, 2: 0}

    def test_genus2_generic_weight(self):
        report = novikov_betti(
            preset_complex("surface_g2"), WeightedLattice(4, [([1, 0, 0, 0], 1)])
        )
        assert report.betti == {0: 0, 1: 2, 2: 0}
        assert report.euler_characteristic() == -2

    def test_weyl_bound_and_euler(self):
        for name in ("circle", "torus2", "torus4", "surface_g2", "surface_g3"):
            c = preset_complex(name)
            for theta in (
                WeightedLattice(c.lattice.rank, []),
                WeightedLattice(
                    c.lattice.rank, [([1] + [0] * (c.lattice.rank - 1), 1)]
                ),
            ):
                report = novikov_betti(c, theta)
                for degree, b in report.betti.items():
                    assert 0 <= b <= c.ranks[degree]
                assert report.euler_characteristic() == c.euler_characteristic()

    def test_depends_only_on_weight_kernel(self):
        c = preset_complex("torus2")
        one = novikov_betti(c, WeightedLattice(2, [([1, 0], 1)]))
        doubled = novikov_betti(c, WeightedLattice(2, [([2, 0], 1)]))
        scaled = novikov_betti(c, WeightedLattice(2, [([1, 0], 2)]))
        assert one.betti == doubled.betti == scaled.betti

    def test_invalid_complex_rejected(self):
        lat = WeightedLattice(1, [])
        t1 = t_minus_one()
        bad = GroupRingComplex(
            lat, {0: 1, 1: 1, 2: 1}, {1: [[t1]], 2: [[t1]]}
        )
        with pytest.raises(InvalidComplexError):
            novikov_betti(bad, WeightedLattice(1, []))

    def test_coefficient_domain_does_not_matter(self):
        for name in ("circle", "torus2", "surface_g2"):
            ci = preset_complex(name, coefficients="int")
            cf = preset_complex(name, coefficients="fraction")
            theta = WeightedLattice(
                ci.lattice.rank, [([1] + [0] * (ci.lattice.rank - 1), 1)]
            )
            assert novikov_betti(ci, theta).betti == novikov_betti(cf, theta).betti


class TestTruncatedRank:
    def test_unit_leading_entry(self):
        lat = WeightedLattice(1, [([1], 1)])
        entry = TruncatedSeries(lat, [(1, (0,)), (-1, (1,))], 30)
        assert rank_over_truncated_novikov([[entry]], 5) == 1

    def test_zero_matrix(self):
        lat = WeightedLattice(1, [([1], 1)])
        zero = TruncatedSeries(lat, [], 30)
        assert rank_over_truncated_novikov([[zero, zero]], 5) == 0

    def test_matches_fraction_field_on_specialized_torus(self):
        c = specialize_to_theta(
            preset_complex("torus2"), WeightedLattice(2, [([1, 0], 1)])
        )
        lat = c.lattice
        for degree in (1, 2):
            matrix = series_matrix_from_laurent(c.boundary(degree), lat, 40)
            assert rank_over_truncated_novikov(matrix, 8) == rank_over_fraction_field(
                c.boundary(degree)
            )

    def test_insufficient_cutoff_raises(self):
        lat = WeightedLattice(1, [([1], 1)])
        zero = TruncatedSeries(lat, [], 3)
        with pytest.raises(InsufficientCutoff):
            rank_over_truncated_novikov([[zero]], 5)

    def test_non_unit_pivot_raises(self):
        lat = WeightedLattice(2, [([1, 1], 1)])
        entry = TruncatedSeries(lat, [(1, (1, 0)), (1, (0, 1))], 30)
        with pytest.raises(NonUnitPivot):
            rank_over_truncated_novikov([[entry]], 5)

    def test_flat_base_change_on_random_complexes(self):
        rng = random.Random(29)
        for _ in range(25):
            rank = rng.randint(1, 3)
            d1, d2 = random_valid_complex(rng, rank)
            lat = generic_lattice(rank)
            size = max(len(d1[0]), len(d1))
            level, cutoff = truncation_parameters([d1, d2], lat, size)
            for matrix in (d1, d2):
                series = series_matrix_from_laurent(matrix, lat, cutoff)
                assert rank_over_truncated_novikov(
                    series, level
                ) == rank_over_fraction_field(matrix)


def test_laurent_embedding_keeps_terms():
    lat = generic_lattice(2)
    poly = LaurentPoly(2, [((1, 0), Fraction(2)), ((0, 1), Fraction(-3))])
    series = laurent_to_series(poly, lat, 50)
    assert sorted(t.monomial for t in series.terms) == [(0, 1), (1, 0)]
