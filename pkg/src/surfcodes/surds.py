"""Exact arithmetic on finite sums  c_0 + c_1 sqrt(n_1) + ... + c_k sqrt(n_k).

Coefficients are Fractions and every radicand n_i > 1 is squarefree.  Square
roots of distinct squarefree integers are linearly independent over Q, so a
sum with any nonzero irrational coefficient is irrational and in particular
nonzero.  Sign and floor are therefore decided by integer-square-root
interval refinement, which always terminates.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Number = Union[int, Fraction, "Surd"]


def squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * f with f squarefree; returns (s, f)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    s, f = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            f *= d
        d += 1
    return s, f * n


class Surd:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def of(cls, x: Number) -> "Surd":
        if isinstance(x, Surd):
            return x
        return cls({1: Fraction(x)})

    @classmethod
    def sqrt(cls, x: int | Fraction) -> "Surd":
        """Exact square root of a nonnegative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        # sqrt(a/b) = sqrt(a*b)/b
        s, f = squarefree_split(x.numerator * x.denominator)
        return cls({f: Fraction(s, x.denominator)})

    # arithmetic
    def __add__(self, other: Number) -> "Surd":
        other = Surd.of(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Surd(out)

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Number) -> "Surd":
        return self + (-Surd.of(other))

    def __rsub__(self, other: Number) -> "Surd":
        return Surd.of(other) - self

    def __mul__(self, other: Number) -> "Surd":
        other = Surd.of(other)
        out: dict[int, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                # sqrt(a) sqrt(b) = s sqrt(f) with a b = s^2 f
                s, f = squarefree_split(a * b)
                out[f] = out.get(f, Fraction(0)) + x * y * s
        return Surd(out)

    __rmul__ = __mul__

    def __truediv__(self, other: int | Fraction) -> "Surd":
        if isinstance(other, Surd):
            if not other.is_rational():
                raise TypeError("division by an irrational surd is not supported")
            other = other.rational_part
        return Surd({k: v / Fraction(other) for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "Surd":
        out = Surd.of(1)
        for _ in range(n):
            out = out * self
        return out

    # inspection
    @property
    def rational_part(self) -> Fraction:
        return self.terms.get(1, Fraction(0))

    def is_rational(self) -> bool:
        return all(k == 1 for k in self.terms)

    def _bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        scale = 1 << bits
        lo = hi = Fraction(0)
        for k, c in self.terms.items():
            if k == 1:
                lo += c
                hi += c
                continue
            r = isqrt(k * scale * scale)
            a, b = Fraction(r, scale), Fraction(r + 1, scale)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def sign(self) -> int:
        if self.is_rational():
            v = self.rational_part
            return (v > 0) - (v < 0)
        bits = 32
        while True:
            lo, hi = self._bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self) -> int:
        if self.is_rational():
            v = self.rational_part
            return v.numerator // v.denominator
        bits = 32
        while True:
            lo, hi = self._bounds(bits)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi and hi != fhi:
                return flo
            bits *= 2

    def __float__(self) -> float:
        lo, hi = self._bounds(64)
        return float((lo + hi) / 2)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Surd, int, Fraction)):
            return (self - other).sign() == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            parts.append(str(c) if k == 1 else f"{c}*sqrt({k})")
        return " + ".join(parts)

    __repr__ = __str__


def smax(a: Number, b: Number) -> Surd:
    a, b = Surd.of(a), Surd.of(b)
    return a if a >= b else b


def exact_floor(x: Number) -> int:
    if isinstance(x, Surd):
        return x.floor()
    x = Fraction(x)
    return x.numerator // x.denominator

