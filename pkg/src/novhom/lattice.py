"""Exact algebra for free abelian groups carrying real-valued weights.

A weight homomorphism on Z^m is presented by finitely many rational
channel rows r_j together with real channel values v_j that are declared
Q-linearly independent:

    weight(g) = sum_j v_j * (r_j . g).

Equality of weights is then decidable exactly: weight(g1) == weight(g2)
iff r_j.g1 == r_j.g2 for every channel.  Strict order is decided by
evaluating the difference; channel values are stored as exact rationals
parsed from their decimal presentation, so the evaluation itself is exact
arithmetic.  A configurable separation threshold guards against declared
values that fail to separate two distinct elements: such comparisons
raise instead of silently tie-breaking.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_SEPARATION = Fraction(1, 10**30)


class LatticeError(ValueError):
    """Invalid lattice data: bad shapes, redundant channels, rank mismatch."""


class IrresolvableComparison(ArithmeticError):
    """Two weights differ but by less than the separation threshold.

    Signals that the declared channel values cannot separate the two
    elements at the configured precision; the caller must supply sharper
    values or a larger threshold, never a silent tie-break.
    """


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions, and strings in 'p/q' or decimal form."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise LatticeError(f"cannot parse rational from {value!r}") from exc
    if isinstance(value, float):
        return Fraction(value)
    raise LatticeError(f"cannot parse rational from {value!r}")


def format_rational(x: Fraction) -> str:
    """Decimal string when the denominator allows one, else 'p/q'."""
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(x.numerator)
    scaled = x.numerator * 10**digits // x.denominator
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _dot(row, vec) -> Fraction:
    return sum((r * v for r, v in zip(row, vec)), Fraction(0))


def _rank_over_q(rows) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][c]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


class WeightedLattice:
    """Z^rank with weight(g) = sum_j value_j * (row_j . g)."""

    def __init__(self, rank, channels=(), separation=DEFAULT_SEPARATION):
        rank = int(rank)
        if rank < 0:
            raise LatticeError("rank must be nonnegative")
        norm = []
        for row, value in channels:
            row = tuple(parse_rational(x) for x in row)
            if len(row) != rank:
                raise LatticeError(
                    f"channel row has length {len(row)}, expected {rank}"
                )
            norm.append((row, parse_rational(value)))
        self.rank = rank
        self.channels = tuple(norm)
        self.separation = parse_rational(separation)
        if self.separation <= 0:
            raise LatticeError("separation threshold must be positive")
        if norm and _rank_over_q([row for row, _ in norm]) != len(norm):
            raise LatticeError("channel rows are rationally dependent")

    def __eq__(self, other):
        if not isinstance(other, WeightedLattice):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.channels == other.channels
            and self.separation == other.separation
        )

    def __hash__(self):
        return hash((self.rank, self.channels, self.separation))

    def __repr__(self):
        return f"WeightedLattice(rank={self.rank}, channels={len(self.channels)})"

    def _check_vector(self, g):
        g = tuple(int(x) for x in g)
        if len(g) != self.rank:
            raise LatticeError(f"vector has length {len(g)}, expected {self.rank}")
        return g

    def weight_key(self, g) -> tuple:
        """Per-channel row products; equal keys mean exactly equal weight."""
        g = self._check_vector(g)
        return tuple(_dot(row, g) for row, _ in self.channels)

    def weight(self, g) -> Fraction:
        g = self._check_vector(g)
        return sum(
            (value * _dot(row, g) for row, value in self.channels), Fraction(0)
        )

    def compare(self, g1, g2) -> Ordering:
        k1 = self.weight_key(g1)
        k2 = self.weight_key(g2)
        if k1 == k2:
            return Ordering.EQUAL
        diff = sum(
            (value * (a - b) for (_, value), a, b in zip(self.channels, k1, k2)),
            Fraction(0),
        )
        if abs(diff) <= self.separation:
            raise IrresolvableComparison(
                f"weights differ by {diff}, below separation {self.separation}"
            )
        return Ordering.GREATER if diff > 0 else Ordering.LESS

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "channels": [
                {
                    "row": [format_rational(x) for x in row],
                    "value": format_rational(value),
                }
                for row, value in self.channels
            ],
        }

    @classmethod
    def from_json_dict(cls, data, separation=DEFAULT_SEPARATION):
        try:
            rank = data["rank"]
            channels = [(ch["row"], ch["value"]) for ch in data.get("channels", [])]
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"malformed lattice description: {exc}") from exc
        return cls(rank, channels, separation=separation)


def compare_weights(lattice: WeightedLattice, g1, g2) -> Ordering:
    """Total preorder on Z^rank induced by the weight homomorphism."""
    return lattice.compare(g1, g2)


def _row_subtract(mat, i, j, q):
    mat[i] = [a - q * b for a, b in zip(mat[i], mat[j])]


def _row_hermite(mat):
    """Row Hermite normal form over Z.

    Returns (H, W, r) with W unimodular, W @ mat == H, the r pivots
    positive, entries above each pivot reduced into [0, pivot), and the
    zero rows collected at the bottom.
    """
    H = [[int(x) for x in row] for row in mat]
    nrows = len(H)
    ncols = len(H[0]) if H else 0
    W = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if H[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: (abs(H[i][c]), i))
            i0 = nz[0]
            for i in nz[1:]:
                q = H[i][c] // H[i0][c]
                if q:
                    _row_subtract(H, i, i0, q)
                    _row_subtract(W, i, i0, q)
        nz = [i for i in range(r, nrows) if H[i][c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        H[r], H[i0] = H[i0], H[r]
        W[r], W[i0] = W[i0], W[r]
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            W[r] = [-x for x in W[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                _row_subtract(H, i, r, q)
                _row_subtract(W, i, r, q)
        r += 1
    return H, W, r


def _transpose(mat):
    return [list(col) for col in zip(*mat)] if mat else []


def _int_matrix_inverse(mat):
    """Inverse of a unimodular integer matrix, returned over Z."""
    n = len(mat)
    aug = [
        [Fraction(mat[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = aug[i][j]
            if x.denominator != 1:
                raise LatticeError("basis matrix is not unimodular")
            row.append(int(x))
        out.append(row)
    return out


@dataclass(frozen=True)
class Splitting:
    """Decomposition Z^m = span(kernel_basis) + span(complement_basis).

    The combined columns form a Z-basis of Z^m; the weight restricted to
    the complement is injective and vanishes on the kernel columns.
    """

    kernel_basis: tuple
    complement_basis: tuple
    image_rank: int
    coords: tuple  # inverse of the combined [kernel | complement] matrix

    @property
    def ambient_rank(self) -> int:
        return self.image_rank + len(self.kernel_basis)

    def decompose(self, g):
        """Coordinates of g in the split basis: (kernel part, complement part)."""
        g = tuple(int(x) for x in g)
        if len(g) != self.ambient_rank:
            raise LatticeError(
                f"vector has length {len(g)}, expected {self.ambient_rank}"
            )
        coords = tuple(sum(r * x for r, x in zip(row, g)) for row in self.coords)
        k = len(self.kernel_basis)
        return coords[:k], coords[k:]

    def embed(self, image_coords):
        """Image of complement coordinates back in Z^m."""
        image_coords = tuple(int(x) for x in image_coords)
        if len(image_coords) != self.image_rank:
            raise LatticeError("complement coordinate vector has wrong length")
        m = self.ambient_rank
        out = [0] * m
        for col, x in zip(self.complement_basis, image_coords):
            for i in range(m):
                out[i] += col[i] * x
        return tuple(out)

    def embed_kernel(self, kernel_coords):
        kernel_coords = tuple(int(x) for x in kernel_coords)
        if len(kernel_coords) != len(self.kernel_basis):
            raise LatticeError("kernel coordinate vector has wrong length")
        m = self.ambient_rank
        out = [0] * m
        for col, x in zip(self.kernel_basis, kernel_coords):
            for i in range(m):
                out[i] += col[i] * x
        return tuple(out)


def kernel_and_split(lattice: WeightedLattice) -> Splitting:
    """Split Z^rank into the exact kernel of the weight and a complement.

    The kernel is the integer kernel of the stacked channel rows, computed
    through Hermite normal form and canonicalized so results are identical
    across runs.  The complement columns map to a generating set of the
    image; there are image_rank = number of channels of them.
    """
    m = lattice.rank
    rows = []
    for row, _ in lattice.channels:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        rows.append([int(x * lcm) for x in row])
    r = len(rows)
    if rows and _rank_over_q(rows) != r:
        raise LatticeError("channel rows are rationally dependent")

    if r == 0:
        kernel_rows = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        complement_rows = []
    else:
        _, W, rk = _row_hermite(_transpose(rows))
        if rk != r:
            raise LatticeError("channel rows are rationally dependent")
        complement_rows = W[:rk]
        kernel_rows = W[rk:]
        if kernel_rows:
            KH, _, krk = _row_hermite(kernel_rows)
            kernel_rows = KH[:krk]

    kernel_basis = tuple(tuple(row) for row in kernel_rows)
    complement_basis = tuple(tuple(row) for row in complement_rows)
    combined = _transpose([list(v) for v in kernel_basis + complement_basis])
    coords = _int_matrix_inverse(combined) if combined else []
    return Splitting(
        kernel_basis=kernel_basis,
        complement_basis=complement_basis,
        image_rank=r,
        coords=tuple(tuple(row) for row in coords),
    )


def project_to_quotient(lattice: WeightedLattice, splitting: Splitting, g):
    """Complement coordinates of g; the kernel of this map is exactly ker(weight)."""
    g = lattice._check_vector(g)
    if splitting.ambient_rank != lattice.rank:
        raise LatticeError("splitting does not match the lattice rank")
    _, image = splitting.decompose(g)
    return image


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)
