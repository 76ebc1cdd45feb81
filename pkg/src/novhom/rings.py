"""Coefficient domains and exact Laurent-polynomial arithmetic.

Coefficients are plain ``int`` (the ring Z), ``fractions.Fraction`` (the
field Q), or :class:`ModInt` (a prime field), chosen per computation.  A
:class:`LaurentPoly` is a finite combination of Z^rank monomials, i.e. an
element of the group ring R[Z^rank].
"""

from __future__ import annotations

from fractions import Fraction


class NonUnitError(ArithmeticError):
    """The requested inverse does not exist in the coefficient domain."""


class ExactDivisionError(ArithmeticError):
    """Division that was expected to be exact left a remainder."""


class ModInt:
    """Element of Z/p; arithmetic requires matching moduli."""

    __slots__ = ("value", "modulus")

    def __init__(self, value, modulus):
        modulus = int(modulus)
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.value = int(value) % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli in ModInt arithmetic")
            return other
        if isinstance(other, int):
            return ModInt(other, self.modulus)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(o.value - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"ModInt({self.value}, {self.modulus})"

    def inverse(self):
        try:
            return ModInt(pow(self.value, -1, self.modulus), self.modulus)
        except ValueError as exc:
            raise NonUnitError(
                f"{self.value} has no inverse modulo {self.modulus}"
            ) from exc


def invert_coeff(c):
    """Multiplicative inverse within the coefficient's own domain."""
    if isinstance(c, ModInt):
        return c.inverse()
    if isinstance(c, Fraction):
        if c == 0:
            raise NonUnitError("zero is not invertible")
        return 1 / c
    if isinstance(c, int):
        if c in (1, -1):
            return c
        raise NonUnitError(f"{c} is not a unit in Z")
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _div_coeff(a, b):
    if isinstance(b, ModInt):
        return a * b.inverse()
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return Fraction(a) / Fraction(b)
    if isinstance(a, int) and isinstance(b, int):
        q, rem = divmod(a, b)
        if rem:
            raise ExactDivisionError(f"{a} is not divisible by {b} in Z")
        return q
    raise TypeError("unsupported coefficient types in division")


class LaurentPoly:
    """Finite R-linear combination of monomials indexed by Z^rank."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank, terms=None):
        self.rank = int(rank)
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, coeff in items:
                mono = tuple(int(e) for e in mono)
                if len(mono) != self.rank:
                    raise ValueError(
                        f"monomial {mono} has length {len(mono)}, expected {self.rank}"
                    )
                if mono in data:
                    data[mono] = data[mono] + coeff
                else:
                    data[mono] = coeff
        self._terms = {m: c for m, c in data.items() if c != 0}

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def constant(cls, rank, coeff):
        return cls(rank, [((0,) * rank, coeff)])

    @classmethod
    def one(cls, rank, one=1):
        return cls.constant(rank, one)

    @classmethod
    def term(cls, rank, monomial, coeff):
        return cls(rank, [(tuple(monomial), coeff)])

    @classmethod
    def variable(cls, rank, index, one=1):
        mono = tuple(1 if i == index else 0 for i in range(rank))
        return cls(rank, [(mono, one)])

    @property
    def is_zero(self):
        return not self._terms

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, monomial):
        return self._terms.get(tuple(monomial), 0)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.rank == other.rank and self._terms == other._terms
        if other == 0:
            return self.is_zero
        return NotImplemented

    __hash__ = None

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            raise TypeError("expected a LaurentPoly")
        if other.rank != self.rank:
            raise ValueError("mixed monomial ranks")
        return other

    def __add__(self, other):
        other = self._check(other)
        data = dict(self._terms)
        for m, c in other._terms.items():
            data[m] = data.get(m, 0) + c
        return LaurentPoly(self.rank, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly(self.rank, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise ValueError("mixed monomial ranks")
            data = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    data[m] = data.get(m, 0) + c1 * c2
            return LaurentPoly(self.rank, data)
        return LaurentPoly(self.rank, {m: c * other for m, c in self._terms.items()})

    __rmul__ = __mul__

    def map_monomials(self, fn, new_rank):
        """Push monomials through fn; colliding images are summed."""
        return LaurentPoly(
            new_rank, [(fn(m), c) for m, c in self._terms.items()]
        )

    def map_coefficients(self, fn):
        return LaurentPoly(self.rank, {m: fn(c) for m, c in self._terms.items()})

    def min_exponents(self):
        if self.is_zero:
            return (0,) * self.rank
        return tuple(min(m[i] for m in self._terms) for i in range(self.rank))

    def evaluate(self, point):
        """Exact value at a tuple of rationals, nonzero where exponents are negative."""
        point = tuple(Fraction(p) for p in point)
        if len(point) != self.rank:
            raise ValueError("evaluation point has wrong length")
        total = Fraction(0)
        for m, c in self._terms.items():
            if isinstance(c, ModInt):
                raise TypeError("cannot evaluate ModInt coefficients rationally")
            v = Fraction(1)
            for p, e in zip(point, m):
                if e:
                    if p == 0 and e < 0:
                        raise ZeroDivisionError(
                            "evaluation point hits a pole of a Laurent monomial"
                        )
                    v *= p**e
            total += Fraction(c) * v
        return total

    def exact_div(self, divisor):
        """Quotient self/divisor, raising ExactDivisionError if not exact."""
        divisor = self._check(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPoly(self.rank)
        sa = self.min_exponents()
        sb = divisor.min_exponents()
        shift = tuple(a - b for a, b in zip(sa, sb))
        rem = {tuple(e - s for e, s in zip(m, sa)): c for m, c in self._terms.items()}
        dvs = {
            tuple(e - s for e, s in zip(m, sb)): c for m, c in divisor._terms.items()
        }
        glead = max(dvs)
        gc = dvs[glead]
        quot = {}
        while rem:
            rlead = max(rem)
            qm = tuple(a - b for a, b in zip(rlead, glead))
            if any(e < 0 for e in qm):
                raise ExactDivisionError("leading monomial not divisible")
            qc = _div_coeff(rem[rlead], gc)
            quot[qm] = quot.get(qm, 0) + qc
            for m, c in dvs.items():
                key = tuple(a + b for a, b in zip(qm, m))
                val = rem.get(key, 0) - qc * c
                if val == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = val
        return LaurentPoly(
            self.rank,
            {tuple(a + b for a, b in zip(m, shift)): c for m, c in quot.items()},
        )

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for m, c in self.items():
            factors = [f"t{i}^{e}" for i, e in enumerate(m) if e]
            parts.append("*".join([str(c)] + factors) if factors else str(c))
        return " + ".join(parts)
