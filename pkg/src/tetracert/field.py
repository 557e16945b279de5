"""Exact arithmetic in the cyclotomic field Q(zeta_24).

Elements are stored as ``sum(c_k * z**k for k in range(8))`` where ``z`` is a
primitive 24th root of unity, reduced modulo the 24th cyclotomic polynomial
``x**8 - x**4 + 1``.  Internally the eight rational coefficients share one
positive denominator, so every element is a tuple of nine integers kept in
lowest terms.  That makes equality and hashing exact and cheap.

The field contains every scalar used by the verifier:

* ``I = z**6`` (a square root of -1),
* ``THETA = z**3`` (a primitive 8th root of unity),
* ``ZETA3 = z**8`` (a primitive cube root of unity),
* ``SQRT2 = z**3 + z**21``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Union

DEGREE = 8
ORDER = 24
# exponents k coprime to 24: the Galois group of Q(zeta_24) over Q
GALOIS_EXPONENTS = (1, 5, 7, 11, 13, 17, 19, 23)

Scalar = Union["CycNum", int, Fraction]


def _reduce_poly(c: list[int]) -> list[int]:
    # x^8 = x^4 - 1  =>  x^k = x^(k-4) - x^(k-8)
    for k in range(len(c) - 1, DEGREE - 1, -1):
        top = c[k]
        if top:
            c[k - 4] += top
            c[k - 8] -= top
    return c[:DEGREE]


class CycNum:
    """An element of Q(zeta_24); immutable and hashable."""

    __slots__ = ("_num", "_den", "_rational", "_hash")

    def __init__(self, coeffs: Iterable[Rational | int] = (), *, _raw=None):
        if _raw is not None:
            num, den = _raw
        else:
            fr = [Fraction(c) for c in coeffs]
            if len(fr) > DEGREE:
                ints = _reduce_poly_fractions(fr)
            else:
                ints = fr + [Fraction(0)] * (DEGREE - len(fr))
            den = reduce(_lcm, (f.denominator for f in ints), 1)
            num = [f.numerator * (den // f.denominator) for f in ints]
        g = math.gcd(den, *num)
        if g != 1:
            num = [n // g for n in num]
            den //= g
        self._num = tuple(num)
        self._den = den
        self._rational = not any(self._num[1:])
        self._hash = None

    @classmethod
    def _make(cls, num, den) -> "CycNum":
        if den < 0:
            num = [-n for n in num]
            den = -den
        return cls(_raw=(num, den))

    @classmethod
    def from_rational(cls, q: Rational | int) -> "CycNum":
        q = Fraction(q)
        return cls(_raw=([q.numerator] + [0] * (DEGREE - 1), q.denominator))

    @classmethod
    def zeta(cls, k: int = 1) -> "CycNum":
        """Return ``z**k`` for the fixed primitive 24th root of unity ``z``."""
        return _ZETA_POWERS[k % ORDER]

    @classmethod
    def coerce(cls, x: Scalar) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    # -- accessors -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return self._den == 1 and not any(self._num)

    def is_rational(self) -> bool:
        return self._rational

    def to_fraction(self) -> Fraction:
        if not self._rational:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def complexity(self) -> int:
        """Rough size measure used to pick cheap elimination pivots."""
        nnz = sum(1 for n in self._num if n)
        bits = sum(abs(n).bit_length() for n in self._num) + self._den.bit_length()
        return nnz * 64 + bits

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Scalar) -> "CycNum":
        if not isinstance(other, CycNum):
            if isinstance(other, (int, Fraction)):
                other = CycNum.from_rational(other)
            else:
                return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        da, db = self._den, other._den
        if da == db:
            return CycNum._make([a + b for a, b in zip(self._num, other._num)], da)
        return CycNum._make(
            [a * db + b * da for a, b in zip(self._num, other._num)], da * db
        )

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(_raw=([-n for n in self._num], self._den))

    def __sub__(self, other: Scalar) -> "CycNum":
        if not isinstance(other, CycNum):
            if isinstance(other, (int, Fraction)):
                other = CycNum.from_rational(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "CycNum":
        return CycNum.coerce(other) - self

    def __mul__(self, other: Scalar) -> "CycNum":
        if not isinstance(other, CycNum):
            if isinstance(other, (int, Fraction)):
                other = CycNum.from_rational(other)
            else:
                return NotImplemented
        a, b = self._num, other._num
        den = self._den * other._den
        if self._rational:
            s = a[0]
            return CycNum._make([s * x for x in b], den) if s else ZERO
        if other._rational:
            s = b[0]
            return CycNum._make([s * x for x in a], den) if s else ZERO
        c = [0] * (2 * DEGREE - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        c[i + j] += x * y
        return CycNum._make(_reduce_poly(c), den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the product of the other Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        if self._rational:
            return CycNum.from_rational(Fraction(self._den, self._num[0]))
        cofactor = ONE
        for k in GALOIS_EXPONENTS[1:]:
            cofactor = cofactor * self.galois(k)
        norm = self * cofactor
        # the norm is fixed by every automorphism, hence rational
        assert norm.is_rational(), "norm must be rational"
        return cofactor * CycNum.from_rational(1 / norm.to_fraction())

    def __truediv__(self, other: Scalar) -> "CycNum":
        other = CycNum.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "CycNum":
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, k: int) -> "CycNum":
        """Apply the automorphism ``z -> z**k`` (k coprime to 24)."""
        if math.gcd(k, ORDER) != 1:
            raise ValueError(f"exponent {k} is not coprime to {ORDER}")
        c = [0] * DEGREE
        for j, n in enumerate(self._num):
            if n:
                for t, v in enumerate(_ZETA_POWERS[(j * k) % ORDER]._num):
                    c[t] += n * v
        return CycNum._make(c, self._den)

    def conjugate(self) -> "CycNum":
        return self.galois(ORDER - 1)

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / ORDER), math.sin(2 * math.pi / ORDER))
        return sum((n / self._den) * z**k for k, n in enumerate(self._num))

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self._rational and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[str]:
        """Eight ``"n/d"`` strings, one per power of zeta_24."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list[str]) -> "CycNum":
        return cls(Fraction(s) for s in data)

    def key(self) -> str:
        """Canonical compact string; used for exact deduplication."""
        return ",".join(map(str, self._num)) + "/" + str(self._den)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CycNum({self})"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _reduce_poly_fractions(fr: list[Fraction]) -> list[Fraction]:
    c = list(fr)
    for k in range(len(c) - 1, DEGREE - 1, -1):
        top = c[k]
        if top:
            c[k - 4] += top
            c[k - 8] -= top
    return c[:DEGREE]


def _zeta_power_table() -> list[CycNum]:
    table = []
    for k in range(ORDER):
        c = [0] * (k + 1)
        c[k] = 1
        c = _reduce_poly(c + [0] * max(0, DEGREE - len(c)))
        table.append(CycNum(_raw=(c, 1)))
    return table


_ZETA_POWERS = _zeta_power_table()

ZERO = CycNum.from_rational(0)
ONE = CycNum.from_rational(1)
ZETA24 = _ZETA_POWERS[1]
I = _ZETA_POWERS[6]
THETA = _ZETA_POWERS[3]
ZETA3 = _ZETA_POWERS[8]
SQRT2 = _ZETA_POWERS[3] + _ZETA_POWERS[21]


def cyc(x: Scalar) -> CycNum:
    """Coerce an int, Fraction or CycNum to CycNum."""
    return CycNum.coerce(x)


def multiplicative_order(a: CycNum, limit: int = ORDER) -> int | None:
    """Smallest n <= limit with a**n == 1, or None."""
    p = a
    for n in range(1, limit + 1):
        if p == ONE:
            return n
        p = p * a
    return None
