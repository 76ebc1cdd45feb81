"""Betti numbers of group-ring complexes via exact rank computations.

Homology ranks over the completed ring coincide with ranks over the
fraction field of the plain group ring, so Betti numbers reduce to exact
ranks of Laurent-polynomial matrices.  Two independent routes are
provided: fraction-free elimination on the polynomial entries, and
Gaussian elimination over truncated completions with minimal-weight unit
pivots; their agreement at sufficient cutoff is part of the test
contract.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import (
    GroupRingComplex,
    ValidationReport,
    specialize_to_theta,
    validate_complex,
)
from .lattice import WeightedLattice, parse_rational
from .novikov import (
    InsufficientCutoff,
    NonUnitLeadingBlock,
    TruncatedSeries,
    series_invert_unit,
    series_mul,
    series_sub,
)
from .rings import LaurentPoly


class InvalidComplexError(ValueError):
    def __init__(self, report):
        super().__init__(report.message or "boundary relation violated")
        self.report = report


class NonUnitPivot(ValueError):
    """No admissible pivot: the candidate's minimal-weight block is not a unit."""


def _strip_row_content(row):
    """Divide a row by its monomial content; a unit rescaling, rank-safe."""
    polys = [p for p in row if not p.is_zero]
    if not polys:
        return row
    rank = polys[0].rank
    mins = [min(p.min_exponents()[i] for p in polys) for i in range(rank)]
    if all(e == 0 for e in mins):
        return row
    shift = tuple(-e for e in mins)

    def unshift(mono):
        return tuple(a + b for a, b in zip(mono, shift))

    return [p.map_monomials(unshift, rank) if not p.is_zero else p for p in row]


def rank_over_fraction_field(matrix) -> int:
    """Exact rank over the fraction field of the Laurent-polynomial ring.

    Fraction-free elimination: every intermediate entry is a minor of the
    input, and the division by the previous pivot is exact.  The result
    does not depend on row or column order.
    """
    rows = [_strip_row_content(list(r)) for r in matrix]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    nrows = len(rows)
    prev = None
    r = 0
    while r < nrows and r < ncols:
        pivot = None
        best = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                entry = rows[i][j]
                if entry.is_zero:
                    continue
                key = (len(entry), i, j)
                if best is None or key < best:
                    best = key
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != r:
            rows[pi], rows[r] = rows[r], rows[pi]
        if pj != r:
            for row in rows:
                row[pj], row[r] = row[r], row[pj]
        piv = rows[r][r]
        for i in range(r + 1, nrows):
            head = rows[i][r]
            for j in range(r + 1, ncols):
                num = piv * rows[i][j] - head * rows[r][j]
                rows[i][j] = num.exact_div(prev) if prev is not None else num
            rows[i][r] = LaurentPoly.zero(piv.rank)
        prev = piv
        r += 1
    return r


def rank_of_rational_matrix(matrix) -> int:
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows or not rows[0]:
        return 0
    rank = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def rank_by_evaluation(matrix, rng, trials: int = 3, denominator_bound: int = 10**4) -> int:
    """Rank estimated at random rational points, majority over the trials.

    Disagreement among the substitutions falls back to the full symbolic
    elimination; a majority answer is returned as is.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    rank = rows[0][0].rank if rows[0] else 0
    results = []
    for _ in range(trials):
        point = tuple(
            Fraction(rng.randint(1, denominator_bound), rng.randint(1, denominator_bound))
            for _ in range(rank)
        )
        results.append(
            rank_of_rational_matrix(
                [[entry.evaluate(point) for entry in row] for row in rows]
            )
        )
    for value in results:
        if results.count(value) * 2 > trials:
            return value
    return rank_over_fraction_field(rows)


@dataclass
class BettiReport:
    """Per-degree Betti numbers and the boundary ranks they came from."""

    betti: dict
    boundary_ranks: dict
    chain_ranks: dict
    field: str
    grading_period: int | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.betti.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in self.betti.items())

    def to_json_dict(self) -> dict:
        return {
            "betti": {str(k): v for k, v in sorted(self.betti.items())},
            "boundary_ranks": {
                str(k): v for k, v in sorted(self.boundary_ranks.items())
            },
            "chain_ranks": {str(k): v for k, v in sorted(self.chain_ranks.items())},
            "field": self.field,
            "grading_period": self.grading_period,
            "total": self.total,
            "diagnostics": self.diagnostics,
        }


def novikov_betti(
    complex_: GroupRingComplex, theta: WeightedLattice
) -> BettiReport:
    """Betti numbers of the complex completed along the given weight.

    The complex is specialized to the quotient by the weight's kernel and
    each boundary rank is computed over the fraction field of the quotient
    group ring; flat base change identifies these with the ranks over the
    completed ring, so b_k = rank_k - rank d_k - rank d_(k+1).
    """
    report = validate_complex(complex_)
    if not report.valid:
        raise InvalidComplexError(report)
    specialized = specialize_to_theta(complex_, theta)
    boundary_ranks = {
        degree: rank_over_fraction_field(matrix)
        for degree, matrix in specialized.boundaries.items()
    }
    betti = {}
    period = specialized.grading_period
    for degree, count in specialized.ranks.items():
        out = boundary_ranks.get(degree, 0)
        upper = degree + 1 if period is None else (degree + 1) % period
        into = boundary_ranks.get(upper, 0)
        b = count - out - into
        if b < 0:
            raise InvalidComplexError(
                ValidationReport(
                    valid=False,
                    degree=degree,
                    message=f"negative Betti number at degree {degree}",
                )
            )
        betti[degree] = b
    return BettiReport(
        betti=betti,
        boundary_ranks=boundary_ranks,
        chain_ranks=dict(specialized.ranks),
        field=f"Frac(Q[Z^{specialized.lattice.rank}])",
        grading_period=period,
    )


def laurent_to_series(
    poly: LaurentPoly, lattice: WeightedLattice, cutoff
) -> TruncatedSeries:
    """View an exact group-ring element as a truncated series."""
    return TruncatedSeries(
        lattice, [(c, m) for m, c in poly.items()], cutoff
    )


def series_matrix_from_laurent(matrix, lattice: WeightedLattice, cutoff):
    return [
        [laurent_to_series(entry, lattice, cutoff) for entry in row]
        for row in matrix
    ]


def rank_over_truncated_novikov(matrix, certification_level) -> int:
    """Rank by Gaussian elimination with minimal-leading-weight unit pivots.

    certification_level is the weight level below which zero entries must
    be certified: at termination every surviving entry must be visibly
    empty with cutoff at or above that level, otherwise the cutoffs were
    insufficient.  Pivots are chosen by (leading weight, lexicographic
    monomial, row, column) and inverted through their geometric series, so
    the procedure is deterministic.
    """
    level = parse_rational(certification_level)
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    active_rows = list(range(len(rows)))
    active_cols = list(range(ncols))
    rank = 0
    while active_rows and active_cols:
        pivot = None
        best = None
        for i in active_rows:
            for j in active_cols:
                entry = rows[i][j]
                if entry.is_zero:
                    continue
                key = (entry.leading_weight, entry.leading_term.monomial, i, j)
                if best is None or key < best:
                    best = key
                    pivot = (i, j)
        if pivot is None:
            for i in active_rows:
                for j in active_cols:
                    if rows[i][j].cutoff < level:
                        raise InsufficientCutoff(
                            f"entry ({i}, {j}) certified only below "
                            f"{rows[i][j].cutoff}, need {level}"
                        )
            return rank
        pi, pj = pivot
        pivot_entry = rows[pi][pj]
        pivot_weight = pivot_entry.leading_weight
        for i in active_rows:
            for j in active_cols:
                entry = rows[i][j]
                if entry.is_zero and entry.cutoff < min(pivot_weight, level):
                    raise InsufficientCutoff(
                        f"entry ({i}, {j}) may hide terms below the pivot weight "
                        f"{pivot_weight}; cutoff {entry.cutoff} cannot certify the "
                        "pivot choice"
                    )
        try:
            inverse = series_invert_unit(
                pivot_entry, pivot_entry.cutoff - 2 * pivot_weight
            )
        except NonUnitLeadingBlock as exc:
            raise NonUnitPivot(
                f"pivot at ({pi}, {pj}) has a non-unit leading block: {exc}"
            ) from exc
        for i in active_rows:
            if i == pi:
                continue
            head = rows[i][pj]
            if head.is_zero:
                continue
            factor = series_mul(head, inverse)
            for j in active_cols:
                if j == pj:
                    continue
                rows[i][j] = series_sub(
                    rows[i][j], series_mul(factor, rows[pi][j])
                )
        active_rows.remove(pi)
        active_cols.remove(pj)
        rank += 1
    return rank
