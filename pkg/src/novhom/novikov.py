"""Arithmetic in upward-completed group rings via truncated series.

An element of the completion of R[Z^m] with respect to a weight is an
infinite formal sum with, below every level c, only finitely many terms.
Here such an element is materialized as its finite part below an explicit
cutoff; the cutoff is a completeness certificate, and every operation
states how the certificate propagates:

* addition: the smaller of the two cutoffs;
* multiplication: min over the operands of (own cutoff + the other's
  leading weight), where the leading weight of a series with no visible
  terms is its cutoff;
* unit inversion with leading weight w: certifiable below cutoff - 2w.

Term lists are sorted by weight, with lexicographic order on the exponent
vector breaking ties inside one weight level.  Two visible terms whose
weights differ by less than the lattice separation threshold make the
order undecidable and raise IrresolvableComparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    IrresolvableComparison,
    Splitting,
    WeightedLattice,
    format_rational,
    parse_rational,
)
from .rings import ModInt, NonUnitError, invert_coeff

_MAX_GEOMETRIC_ITERATIONS = 1_000_000


class SeriesError(ValueError):
    """Malformed series data or violated operation precondition."""


class LatticeMismatch(SeriesError):
    """Operands live over different weighted lattices."""


class NonUnitLeadingBlock(SeriesError):
    """The minimal-weight block is not a single invertible monomial."""


class InsufficientCutoff(SeriesError):
    """The stored cutoffs cannot certify the requested result."""


@dataclass(frozen=True)
class Term:
    coefficient: object
    monomial: tuple

    def __post_init__(self):
        object.__setattr__(self, "monomial", tuple(int(e) for e in self.monomial))


class TruncatedSeries:
    """Finite weight-sorted term list plus an explicit truncation cutoff.

    Equality is literal: same lattice, same term list, same cutoff.  Terms
    at or above the cutoff are dropped on construction; duplicates merge.
    """

    __slots__ = ("lattice", "terms", "cutoff", "_weights")

    def __init__(self, lattice: WeightedLattice, terms=(), cutoff=0):
        cutoff = parse_rational(cutoff)
        data = {}
        for item in terms:
            if isinstance(item, Term):
                coeff, mono = item.coefficient, item.monomial
            else:
                coeff, mono = item
            mono = tuple(int(e) for e in mono)
            if len(mono) != lattice.rank:
                raise SeriesError(
                    f"monomial {mono} has length {len(mono)}, expected {lattice.rank}"
                )
            if mono in data:
                data[mono] = data[mono] + coeff
            else:
                data[mono] = coeff
        kept = []
        for mono, coeff in data.items():
            if coeff == 0:
                continue
            w = lattice.weight(mono)
            if w < cutoff:
                kept.append((w, mono, coeff))
        kept.sort(key=lambda t: (t[0], t[1]))
        for (w1, m1, _), (w2, m2, _) in zip(kept, kept[1:]):
            if w1 != w2 and w2 - w1 <= lattice.separation:
                raise IrresolvableComparison(
                    f"weights of {m1} and {m2} differ by {w2 - w1}, "
                    f"below separation {lattice.separation}"
                )
        self.lattice = lattice
        self.terms = tuple(Term(c, m) for _, m, c in kept)
        self.cutoff = cutoff
        self._weights = tuple(w for w, _, _ in kept)

    @property
    def is_zero(self):
        return not self.terms

    @property
    def leading_term(self):
        if not self.terms:
            raise SeriesError("empty series has no leading term")
        return self.terms[0]

    @property
    def leading_weight(self) -> Fraction:
        if not self.terms:
            raise SeriesError("empty series has no leading weight")
        return self._weights[0]

    def effective_leading_weight(self) -> Fraction:
        """Leading weight if visible, else the cutoff (a sound lower bound)."""
        return self._weights[0] if self.terms else self.cutoff

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.lattice == other.lattice
            and self.cutoff == other.cutoff
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{t.coefficient}*g{list(t.monomial)}" for t in self.terms)
        return f"TruncatedSeries({body or '0'}; cutoff={self.cutoff})"


def _require_same_lattice(a: TruncatedSeries, b: TruncatedSeries):
    if a.lattice != b.lattice:
        raise LatticeMismatch("series live over different weighted lattices")


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Termwise sum; the result is certified below the smaller cutoff."""
    _require_same_lattice(a, b)
    cutoff = min(a.cutoff, b.cutoff)
    terms = [(t.coefficient, t.monomial) for t in a.terms]
    terms += [(t.coefficient, t.monomial) for t in b.terms]
    return TruncatedSeries(a.lattice, terms, cutoff)


def series_neg(a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(
        a.lattice, [(-t.coefficient, t.monomial) for t in a.terms], a.cutoff
    )


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return series_add(a, series_neg(b))


def series_scale(a: TruncatedSeries, coeff) -> TruncatedSeries:
    return TruncatedSeries(
        a.lattice, [(coeff * t.coefficient, t.monomial) for t in a.terms], a.cutoff
    )


def series_truncate(a: TruncatedSeries, cutoff) -> TruncatedSeries:
    """Lower the cutoff, dropping the terms no longer certified."""
    cutoff = parse_rational(cutoff)
    if cutoff > a.cutoff:
        raise InsufficientCutoff(
            f"cannot raise a cutoff from {a.cutoff} to {cutoff}"
        )
    return TruncatedSeries(a.lattice, [(t.coefficient, t.monomial) for t in a.terms], cutoff)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Convolution product.

    The leading term of the product is the product of the leading terms
    and leading weights add; the certified cutoff is
    min(a.cutoff + lead(b), b.cutoff + lead(a)) with an invisible leading
    weight replaced by the operand's cutoff.
    """
    _require_same_lattice(a, b)
    cutoff = min(
        a.cutoff + b.effective_leading_weight(),
        b.cutoff + a.effective_leading_weight(),
    )
    data = {}
    for ta in a.terms:
        for tb in b.terms:
            mono = tuple(x + y for x, y in zip(ta.monomial, tb.monomial))
            coeff = ta.coefficient * tb.coefficient
            if mono in data:
                data[mono] = data[mono] + coeff
            else:
                data[mono] = coeff
    return TruncatedSeries(a.lattice, [(c, m) for m, c in data.items()], cutoff)


def series_invert_unit(a: TruncatedSeries, target_cutoff) -> TruncatedSeries:
    """Inverse of a series whose minimal-weight block is one invertible monomial.

    Computed by geometric iteration on the normalized remainder; the
    product with the input equals 1 below target_cutoff.  Raises
    NonUnitLeadingBlock if the leading block has several monomials or a
    non-invertible coefficient, and InsufficientCutoff when the input's
    cutoff cannot certify the requested target (bound: cutoff - 2w for
    leading weight w).
    """
    target = parse_rational(target_cutoff)
    if not a.terms:
        raise NonUnitLeadingBlock("empty series has no inverse")
    lead = a.terms[0]
    w0 = a._weights[0]
    if len(a.terms) > 1 and a._weights[1] == w0:
        raise NonUnitLeadingBlock(
            "minimal-weight block contains more than one monomial"
        )
    try:
        inv_c = invert_coeff(lead.coefficient)
    except NonUnitError as exc:
        raise NonUnitLeadingBlock(str(exc)) from exc
    certifiable = a.cutoff - 2 * w0
    if target > certifiable:
        raise InsufficientCutoff(
            f"inverse certified only below {certifiable}, requested {target}"
        )
    one = inv_c * lead.coefficient
    lattice = a.lattice
    bound = target + w0
    m0 = lead.monomial
    remainder = {}
    for t in a.terms[1:]:
        rel = tuple(x - y for x, y in zip(t.monomial, m0))
        remainder[rel] = -(inv_c * t.coefficient)
    zero_mono = (0,) * lattice.rank
    acc = {zero_mono: one}
    power = {zero_mono: one}
    iterations = 0
    while power and remainder:
        iterations += 1
        if iterations > _MAX_GEOMETRIC_ITERATIONS:
            raise SeriesError("geometric inversion failed to terminate")
        new = {}
        for m1, c1 in power.items():
            for m2, c2 in remainder.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                if lattice.weight(mono) >= bound:
                    continue
                coeff = c1 * c2
                if mono in new:
                    new[mono] = new[mono] + coeff
                else:
                    new[mono] = coeff
        power = {m: c for m, c in new.items() if c != 0}
        for mono, coeff in power.items():
            if mono in acc:
                acc[mono] = acc[mono] + coeff
            else:
                acc[mono] = coeff
    terms = [
        (inv_c * c, tuple(x - y for x, y in zip(m, m0))) for m, c in acc.items()
    ]
    return TruncatedSeries(lattice, terms, target)


@dataclass(frozen=True)
class GroupedSeries:
    """A series rewritten over the kernel group ring, graded by image monomials.

    Each group pairs a complement-coordinate monomial with a finite group
    ring element in kernel coordinates; groups are sorted by the weight of
    the embedded image monomial.
    """

    lattice: WeightedLattice
    splitting: Splitting
    cutoff: Fraction
    groups: tuple  # ((image_monomial, (Term, ...)), ...)


def series_regroup(a: TruncatedSeries, splitting: Splitting) -> GroupedSeries:
    """Split every monomial into kernel + complement and collect by image.

    The inverse operation is series_ungroup; the round trip is exact.
    """
    if splitting.ambient_rank != a.lattice.rank:
        raise SeriesError("splitting does not match the series lattice")
    buckets = {}
    for t in a.terms:
        kernel, image = splitting.decompose(t.monomial)
        buckets.setdefault(image, {})
        bucket = buckets[image]
        bucket[kernel] = bucket.get(kernel, 0) + t.coefficient
    keyed = []
    for image, bucket in buckets.items():
        terms = tuple(
            Term(c, m) for m, c in sorted(bucket.items()) if c != 0
        )
        if not terms:
            continue
        w = a.lattice.weight(splitting.embed(image))
        keyed.append((w, image, terms))
    keyed.sort(key=lambda t: (t[0], t[1]))
    for (w1, m1, _), (w2, m2, _) in zip(keyed, keyed[1:]):
        if w1 != w2 and w2 - w1 <= a.lattice.separation:
            raise IrresolvableComparison(
                f"image weights of {m1} and {m2} differ by {w2 - w1}, "
                f"below separation {a.lattice.separation}"
            )
    return GroupedSeries(
        lattice=a.lattice,
        splitting=splitting,
        cutoff=a.cutoff,
        groups=tuple((image, terms) for _, image, terms in keyed),
    )


def series_ungroup(grouped: GroupedSeries) -> TruncatedSeries:
    """Reassemble the original series from its grouped form."""
    terms = []
    for image, kernel_terms in grouped.groups:
        base = grouped.splitting.embed(image)
        for t in kernel_terms:
            mono = tuple(
                b + k
                for b, k in zip(base, grouped.splitting.embed_kernel(t.monomial))
            )
            terms.append((t.coefficient, mono))
    return TruncatedSeries(grouped.lattice, terms, grouped.cutoff)


def _blend_lattices(la: WeightedLattice, lb: WeightedLattice, wa, wb):
    channels = []
    for row, value in la.channels:
        scaled = value * wa
        if scaled != 0:
            channels.append([row, scaled])
    for row, value in lb.channels:
        scaled = value * wb
        if scaled == 0:
            continue
        for entry in channels:
            if entry[0] == row:
                entry[1] += scaled
                break
        else:
            channels.append([row, scaled])
    channels = [(row, value) for row, value in channels if value != 0]
    return WeightedLattice(
        la.rank, channels, separation=min(la.separation, lb.separation)
    )


def series_retruncate(
    a: TruncatedSeries,
    b: TruncatedSeries,
    tau1,
    tau,
    tau2,
    c,
) -> TruncatedSeries:
    """Truncation under an intermediate weight from two endpoint views.

    a and b carry the same terms sorted under the endpoint weights tau1
    and tau2.  For tau strictly between them the intermediate weight is
    the convex blend wa*weight_a + wb*weight_b with wa = (tau2-tau)/
    (tau2-tau1), wb = (tau-tau1)/(tau2-tau1), and a term below level c
    must fall below c/(2*wa) on the a-side or below c/(2*wb) on the
    b-side; the cutoff preconditions certify that the finite term lists
    already contain every such term.
    """
    tau1, tau, tau2, c = (parse_rational(x) for x in (tau1, tau, tau2, c))
    if not (tau1 <= tau <= tau2):
        raise SeriesError("expected tau1 <= tau <= tau2")
    if a.lattice.rank != b.lattice.rank:
        raise SeriesError("endpoint views have different monomial ranks")
    terms_a = {t.monomial: t.coefficient for t in a.terms}
    terms_b = {t.monomial: t.coefficient for t in b.terms}
    # The views may each hide terms beyond their own cutoff, but where both
    # are obliged to show a monomial they must agree on it.
    merged = dict(terms_a)
    for mono, coeff in terms_b.items():
        if mono in merged:
            if merged[mono] != coeff:
                raise SeriesError(
                    f"endpoint views disagree on the coefficient of {mono}"
                )
        else:
            if a.lattice.weight(mono) < a.cutoff:
                raise SeriesError(
                    f"first view is missing the visible monomial {mono}"
                )
            merged[mono] = coeff
    for mono in terms_a:
        if mono not in terms_b and b.lattice.weight(mono) < b.cutoff:
            raise SeriesError(
                f"second view is missing the visible monomial {mono}"
            )

    if tau == tau1:
        if a.cutoff < c:
            raise InsufficientCutoff(
                f"endpoint truncation below {c} needs cutoff >= {c}, have {a.cutoff}"
            )
        return series_truncate(a, c)
    if tau == tau2:
        if b.cutoff < c:
            raise InsufficientCutoff(
                f"endpoint truncation below {c} needs cutoff >= {c}, have {b.cutoff}"
            )
        return series_truncate(b, c)

    wa = (tau2 - tau) / (tau2 - tau1)
    wb = (tau - tau1) / (tau2 - tau1)
    if a.cutoff < c / (2 * wa):
        raise InsufficientCutoff(
            f"first view certifies below {a.cutoff}, need {c / (2 * wa)}"
        )
    if b.cutoff < c / (2 * wb):
        raise InsufficientCutoff(
            f"second view certifies below {b.cutoff}, need {c / (2 * wb)}"
        )
    blended = _blend_lattices(a.lattice, b.lattice, wa, wb)
    return TruncatedSeries(blended, [(v, m) for m, v in merged.items()], c)


def _coeff_to_text(c) -> str:
    if isinstance(c, ModInt):
        raise SeriesError("prime-field coefficients have no JSON form")
    if isinstance(c, Fraction):
        return str(c)
    return str(int(c))


def series_to_json_dict(a: TruncatedSeries) -> dict:
    return {
        "lattice": a.lattice.to_json_dict(),
        "cutoff": format_rational(a.cutoff),
        "terms": [
            {"coeff": _coeff_to_text(t.coefficient), "monomial": list(t.monomial)}
            for t in a.terms
        ],
    }


def series_from_json_dict(data) -> TruncatedSeries:
    try:
        lattice = WeightedLattice.from_json_dict(data["lattice"])
        cutoff = data["cutoff"]
        raw = [(Fraction(t["coeff"]), t["monomial"]) for t in data.get("terms", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise SeriesError(f"malformed series description: {exc}") from exc
    return TruncatedSeries(lattice, raw, cutoff)
