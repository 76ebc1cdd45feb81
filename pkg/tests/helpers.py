"""Shared generators for randomized suites."""

from fractions import Fraction

from novhom import LaurentPoly, ModInt, TruncatedSeries, WeightedLattice

# Channel rows whose entries have no small rational relations, so distinct
# small monomials never tie in weight.
GENERIC_ROWS = {
    1: (Fraction(97, 89),),
    2: (Fraction(97, 89), Fraction(55, 34)),
    3: (Fraction(97, 89), Fraction(55, 34), Fraction(211, 170)),
}


def generic_lattice(rank: int) -> WeightedLattice:
    return WeightedLattice(rank, [(GENERIC_ROWS[rank], 1)])


def make_coeff(rng, domain):
    value = rng.randint(-6, 6) or 1
    if domain == "int":
        return value
    if domain == "fraction":
        return Fraction(value, rng.randint(1, 5))
    if domain == "mod7":
        return ModInt(value, 7)
    raise ValueError(domain)


def random_series(rng, lattice, domain, max_terms=4, exp_range=3, cutoff=200):
    while True:
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            mono = tuple(
                rng.randint(-exp_range, exp_range) for _ in range(lattice.rank)
            )
            terms.append((make_coeff(rng, domain), mono))
        series = TruncatedSeries(lattice, terms, cutoff)
        if not series.is_zero:
            return series


def random_laurent(rng, rank, max_terms=2, exp_range=1):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(-exp_range, exp_range) for _ in range(rank))
        terms.append((mono, Fraction(rng.randint(-3, 3) or 1)))
    return LaurentPoly(rank, terms)


def mat_mul(a, b, rank):
    zero = LaurentPoly.zero(rank)
    return [
        [
            sum((a[i][k] * b[k][j] for k in range(len(b))), zero)
            for j in range(len(b[0]))
        ]
        for i in range(len(a))
    ]


def _elementary(size, i, j, factor, rank):
    mat = [
        [
            LaurentPoly.one(rank) if r == c else LaurentPoly.zero(rank)
            for c in range(size)
        ]
        for r in range(size)
    ]
    mat[i][j] = factor
    return mat


def _positive_laurent(rng, rank):
    terms = []
    for _ in range(rng.randint(1, 2)):
        mono = tuple(rng.randint(0, 1) for _ in range(rank))
        terms.append((mono, Fraction(rng.randint(-3, 3) or 1)))
    poly = LaurentPoly(rank, terms)
    return poly if not poly.is_zero else LaurentPoly.one(rank)


def random_valid_complex(rng, rank):
    """Chain data d1, d2 with d1 @ d2 = 0, from twisted Koszul blocks.

    Each block contributes d1 = [P Q], d2 = [-Q; P]; unimodular changes of
    basis in the middle degree mix the blocks, and unit monomial scalings
    spread the entries across negative exponents, all preserving the
    boundary relation.  Sizes stay at or below 4 x 4.
    """
    blocks = rng.randint(1, 2)
    zero = LaurentPoly.zero(rank)
    d1 = [[zero] * (2 * blocks) for _ in range(blocks)]
    d2 = [[zero] * blocks for _ in range(2 * blocks)]
    for b in range(blocks):
        p = _positive_laurent(rng, rank)
        q = _positive_laurent(rng, rank)
        d1[b][2 * b] = p
        d1[b][2 * b + 1] = q
        d2[2 * b][b] = -q
        d2[2 * b + 1][b] = p
    for _ in range(2):
        size = 2 * blocks
        i, j = rng.sample(range(size), 2)
        mono = tuple(rng.randint(0, 1) for _ in range(rank))
        factor = LaurentPoly(rank, [(mono, Fraction(rng.randint(-2, 2) or 1))])
        fwd = _elementary(size, i, j, factor, rank)
        inv = _elementary(size, i, j, -factor, rank)
        d1 = mat_mul(d1, fwd, rank)
        d2 = mat_mul(inv, d2, rank)
    for i in range(blocks):
        unit = LaurentPoly.term(
            rank, tuple(rng.randint(-1, 0) for _ in range(rank)), Fraction(1)
        )
        d1[i] = [unit * entry for entry in d1[i]]
        for row in d2:
            row[i] = row[i] * unit
    return d1, d2


def truncation_parameters(matrices, lattice, size):
    """Certification level and embedding cutoff ample for the elimination."""
    bound = matrix_weight_bound(matrices, lattice) + 1
    level = 2 * bound
    cutoff = level + 2 * (size + 1) * bound
    return level, cutoff


def matrix_weight_bound(matrices, lattice):
    bound = Fraction(1)
    for matrix in matrices:
        for row in matrix:
            for poly in row:
                for mono, _ in poly.items():
                    bound = max(bound, abs(lattice.weight(mono)))
    return bound
