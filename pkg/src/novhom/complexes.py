"""Free chain complexes over group rings of Z^m.

Boundary matrices have Laurent-polynomial entries and are validated
exactly: the composite of consecutive boundaries must vanish identically.
Specializing along a weight collapses the kernel directions of the weight
to the identity, giving the complex over the quotient group ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .lattice import WeightedLattice, kernel_and_split, project_to_quotient
from .rings import LaurentPoly


class ComplexError(ValueError):
    """Malformed complex data: shapes, ranks, or grading inconsistencies."""


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    degree: int | None = None
    entry: tuple | None = None
    message: str = ""


class GroupRingComplex:
    """Graded free complex with Laurent-polynomial boundary matrices.

    ranks maps a degree to the number of free generators; boundaries maps
    a degree k to the matrix of the map from degree k to degree k-1 (taken
    modulo the grading period when one is set).
    """

    __slots__ = ("lattice", "ranks", "boundaries", "grading_period", "generator_labels")

    def __init__(
        self,
        lattice: WeightedLattice,
        ranks,
        boundaries,
        grading_period=None,
        generator_labels=None,
    ):
        if grading_period is not None:
            grading_period = int(grading_period)
            if grading_period <= 0 or grading_period % 2:
                raise ComplexError("grading period must be a positive even integer")
        self.lattice = lattice
        self.grading_period = grading_period
        norm_ranks = {}
        for degree, count in dict(ranks).items():
            degree = self._normalize_degree(int(degree))
            count = int(count)
            if count < 0:
                raise ComplexError("generator counts must be nonnegative")
            if degree in norm_ranks:
                raise ComplexError(f"degree {degree} listed twice")
            norm_ranks[degree] = count
        self.ranks = dict(sorted(norm_ranks.items()))

        norm_bounds = {}
        for degree, matrix in dict(boundaries).items():
            degree = self._normalize_degree(int(degree))
            target = self._normalize_degree(degree - 1)
            nrows = self.ranks.get(target, 0)
            ncols = self.ranks.get(degree, 0)
            rows = [list(row) for row in matrix]
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ComplexError(
                    f"boundary at degree {degree} must be {nrows} x {ncols}"
                )
            for row in rows:
                for entry in row:
                    if not isinstance(entry, LaurentPoly):
                        raise ComplexError("boundary entries must be LaurentPoly")
                    if entry.rank != lattice.rank:
                        raise ComplexError(
                            "boundary entry monomial rank does not match the lattice"
                        )
            norm_bounds[degree] = tuple(tuple(row) for row in rows)
        self.boundaries = dict(sorted(norm_bounds.items()))

        if generator_labels is not None:
            generator_labels = {
                self._normalize_degree(int(k)): tuple(v)
                for k, v in dict(generator_labels).items()
            }
            for degree, labels in generator_labels.items():
                if len(labels) != self.ranks.get(degree, 0):
                    raise ComplexError(f"label count mismatch at degree {degree}")
        self.generator_labels = generator_labels

    def _normalize_degree(self, degree: int) -> int:
        if self.grading_period is None:
            return degree
        return degree % self.grading_period

    def boundary(self, degree: int):
        return self.boundaries.get(self._normalize_degree(degree))

    def degrees(self):
        return sorted(self.ranks)

    def euler_characteristic(self) -> int:
        if self.grading_period is not None:
            raise ComplexError("Euler characteristic needs an integer grading")
        return sum((-1) ** k * n for k, n in self.ranks.items())


def _matrix_product(a, b, rank):
    rows = len(a)
    mid = len(b)
    cols = len(b[0]) if b else 0
    zero = LaurentPoly.zero(rank)
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = zero
            for k in range(mid):
                if not a[i][k].is_zero and not b[k][j].is_zero:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def validate_complex(complex_: GroupRingComplex) -> ValidationReport:
    """Check d(k) composed with d(k+1) is exactly zero for all degrees."""
    rank = complex_.lattice.rank
    for degree, upper in complex_.boundaries.items():
        lower = complex_.boundary(degree - 1)
        if lower is None or not upper or not lower:
            continue
        if len(upper) == 0 or len(lower) == 0:
            continue
        product = _matrix_product(lower, upper, rank)
        for i, row in enumerate(product):
            for j, entry in enumerate(row):
                if not entry.is_zero:
                    return ValidationReport(
                        valid=False,
                        degree=degree,
                        entry=(i, j),
                        message=(
                            f"composite boundary through degree {degree} has "
                            f"nonzero entry {entry!r} at ({i}, {j})"
                        ),
                    )
    return ValidationReport(valid=True)


def specialize_to_theta(
    complex_: GroupRingComplex, weight_lattice: WeightedLattice
) -> GroupRingComplex:
    """Base change to the quotient by the kernel of the weight.

    Every monomial is replaced by its complement coordinates, so kernel
    directions collapse to the identity; the quotient lattice carries the
    induced channels, preserving weights through the embedding.
    """
    if weight_lattice.rank != complex_.lattice.rank:
        raise ComplexError(
            "weight lattice rank does not match the complex monomial rank"
        )
    splitting = kernel_and_split(weight_lattice)
    new_rank = splitting.image_rank
    channels = []
    for row, value in weight_lattice.channels:
        induced = tuple(
            sum((r * c for r, c in zip(row, col)), Fraction(0))
            for col in splitting.complement_basis
        )
        channels.append((induced, value))
    quotient = WeightedLattice(
        new_rank, channels, separation=weight_lattice.separation
    )

    def project(mono):
        return project_to_quotient(weight_lattice, splitting, mono)

    boundaries = {
        degree: [
            [entry.map_monomials(project, new_rank) for entry in row]
            for row in matrix
        ]
        for degree, matrix in complex_.boundaries.items()
    }
    specialized = GroupRingComplex(
        quotient,
        complex_.ranks,
        boundaries,
        grading_period=complex_.grading_period,
        generator_labels=complex_.generator_labels,
    )
    report = validate_complex(specialized)
    if not report.valid:
        raise ComplexError(
            f"specialization broke the boundary relation: {report.message}"
        )
    return specialized


def _one(coefficients):
    if coefficients == "int":
        return 1
    if coefficients == "fraction":
        return Fraction(1)
    raise ComplexError(f"unknown coefficient domain {coefficients!r}")


def torus_complex(dimension: int, coefficients: str = "int") -> GroupRingComplex:
    """Cellular complex of the torus with one cell per coordinate subset.

    The boundary of the cell indexed by S removes one coordinate i at a
    time with alternating sign and coefficient t_i - 1.
    """
    if dimension < 1:
        raise ComplexError("torus dimension must be positive")
    one = _one(coefficients)
    lattice = WeightedLattice(dimension, ())
    cells = {
        k: sorted(combinations(range(dimension), k)) for k in range(dimension + 1)
    }
    index = {k: {cell: i for i, cell in enumerate(cells[k])} for k in cells}
    ranks = {k: len(cells[k]) for k in cells}
    boundaries = {}
    for k in range(1, dimension + 1):
        rows = [
            [LaurentPoly.zero(dimension) for _ in cells[k]] for _ in cells[k - 1]
        ]
        for j, cell in enumerate(cells[k]):
            for pos, i in enumerate(cell):
                face = tuple(c for c in cell if c != i)
                sign = one if pos % 2 == 0 else -one
                mono = tuple(1 if c == i else 0 for c in range(dimension))
                poly = LaurentPoly(
                    dimension, [(mono, sign), ((0,) * dimension, -sign)]
                )
                rows[index[k - 1][face]][j] = poly
        boundaries[k] = rows
    labels = {
        k: tuple("e" + "".join(str(c) for c in cell) for cell in cells[k])
        for k in cells
    }
    return GroupRingComplex(lattice, ranks, boundaries, generator_labels=labels)


def surface_complex(genus: int, coefficients: str = "int") -> GroupRingComplex:
    """Orientable genus-g surface: one vertex, 2g edges, one face.

    Boundary entries are the abelianized free derivatives of the standard
    product-of-commutators attaching word: the face hits edge a_i with
    1 - b_i and edge b_i with a_i - 1.
    """
    if genus < 1:
        raise ComplexError("genus must be positive")
    one = _one(coefficients)
    m = 2 * genus
    lattice = WeightedLattice(m, ())

    def var(i):
        return tuple(1 if c == i else 0 for c in range(m))

    zero_mono = (0,) * m
    d1 = [[LaurentPoly(m, [(var(i), one), (zero_mono, -one)]) for i in range(m)]]
    d2 = []
    for g in range(genus):
        a, b = 2 * g, 2 * g + 1
        d2.append([LaurentPoly(m, [(zero_mono, one), (var(b), -one)])])
        d2.append([LaurentPoly(m, [(var(a), one), (zero_mono, -one)])])
    ranks = {0: 1, 1: m, 2: 1}
    labels = {
        0: ("v",),
        1: tuple(
            name
            for g in range(genus)
            for name in (f"a{g + 1}", f"b{g + 1}")
        ),
        2: ("f",),
    }
    return GroupRingComplex(
        lattice, ranks, {1: d1, 2: d2}, generator_labels=labels
    )


PRESET_BUILDERS = {
    "circle": lambda coefficients: torus_complex(1, coefficients),
    "torus2": lambda coefficients: torus_complex(2, coefficients),
    "torus4": lambda coefficients: torus_complex(4, coefficients),
    "surface_g2": lambda coefficients: surface_complex(2, coefficients),
    "surface_g3": lambda coefficients: surface_complex(3, coefficients),
}


def preset_complex(name: str, coefficients: str = "int") -> GroupRingComplex:
    try:
        builder = PRESET_BUILDERS[name]
    except KeyError:
        known = ", ".join(sorted(PRESET_BUILDERS))
        raise ComplexError(f"unknown preset {name!r}; choose one of {known}")
    return builder(coefficients)


def _poly_to_json(poly: LaurentPoly):
    return [
        {"coeff": str(c), "monomial": list(m)} for m, c in poly.items()
    ]


def _poly_from_json(data, rank):
    try:
        terms = [(t["monomial"], Fraction(t["coeff"])) for t in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexError(f"malformed polynomial entry: {exc}") from exc
    return LaurentPoly(rank, [(m, c) for m, c in terms])


def complex_to_json_dict(complex_: GroupRingComplex) -> dict:
    data = {
        "lattice": complex_.lattice.to_json_dict(),
        "ranks": {str(k): v for k, v in complex_.ranks.items()},
        "boundaries": {
            str(k): [[_poly_to_json(entry) for entry in row] for row in matrix]
            for k, matrix in complex_.boundaries.items()
        },
        "grading_period": complex_.grading_period,
    }
    if complex_.generator_labels is not None:
        data["generator_labels"] = {
            str(k): list(v) for k, v in complex_.generator_labels.items()
        }
    return data


def complex_from_json_dict(data) -> GroupRingComplex:
    try:
        lattice = WeightedLattice.from_json_dict(data["lattice"])
        ranks = {int(k): v for k, v in data["ranks"].items()}
        boundaries = {
            int(k): [
                [_poly_from_json(entry, lattice.rank) for entry in row]
                for row in matrix
            ]
            for k, matrix in data.get("boundaries", {}).items()
        }
        period = data.get("grading_period")
        labels = data.get("generator_labels")
        if labels is not None:
            labels = {int(k): v for k, v in labels.items()}
    except ComplexError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexError(f"malformed complex description: {exc}") from exc
    return GroupRingComplex(
        lattice, ranks, boundaries, grading_period=period, generator_labels=labels
    )
