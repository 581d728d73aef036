"""Arithmetic in small finite fields F_q, q = p^e <= 2^16.

Elements are stored as integer *codes*: the coefficient vector
``(c_0, ..., c_{e-1})`` of the polynomial ``c_0 + c_1 t + ... `` (reduced
modulo the defining polynomial) is read as the base-p number
``sum c_j p^j``.  Ordering elements by code is the coefficient-vector
lexicographic order (leading coefficient most significant), so ``F_4``
enumerates as ``0, 1, t, t+1``.

Scalar arithmetic goes through exp/log tables built once per field from the
schoolbook polynomial routines (``add_generic``/``mul_generic``), which remain
available as the reference path.  Vectorised versions operating on numpy code
arrays (``vadd``, ``vmul``, ...) back the polynomial evaluation and linear
algebra in the rest of the package.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FormatError,
    MixedFields,
    NotIrreducible,
    NotPrime,
    TooLarge,
)

MAX_Q = 1 << 16
TABLE_Q = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient lists, low-to-high ----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over F_p."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            shift = i - dm
            for j in range(dm + 1):
                a[shift + j] = (a[shift + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    for code in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    e = len(modulus) - 1
    if e <= 1:
        return e == 1
    for deg in range(1, e // 2 + 1):
        for g in _monic_polys(p, deg):
            if not _poly_mod(modulus, g, p):
                return False
    return True


def _poly_text(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if c == 0:
            continue
        if j == 0:
            terms.append(str(c))
            continue
        mono = var if j == 1 else f"{var}^{j}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"^(\d*)\*?(?:t(?:\^(\d+))?)?$")


def _parse_poly(text: str, p: int) -> list[int]:
    s = text.replace(" ", "")
    if not s:
        raise FormatError("empty polynomial text")
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for raw in s.split("+"):
        if not raw:
            continue
        sign = -1 if raw.startswith("-") else 1
        body = raw.lstrip("-")
        m = _TERM.match(body)
        if not m or not body:
            raise FormatError(f"cannot parse term {raw!r} in {text!r}")
        digits, power = m.group(1), m.group(2)
        has_t = "t" in body
        c = int(digits) if digits else 1
        if not has_t and not digits:
            raise FormatError(f"cannot parse term {raw!r} in {text!r}")
        j = (int(power) if power else 1) if has_t else 0
        coeffs[j] = coeffs.get(j, 0) + sign * c
    top = max(coeffs) if coeffs else 0
    return [coeffs.get(j, 0) % p for j in range(top + 1)]


class FieldSpec:
    """The finite field F_p[t]/(modulus).  Immutable once built.

    Use :func:`field_new` to construct; it validates the modulus.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        self.p = p
        self.e = e
        self.modulus = tuple(modulus)
        self.q = p ** e
        self._pows = [p ** j for j in range(e)]
        self._build_tables()

    # construction helpers
    def _build_tables(self) -> None:
        q = self.q
        exp = np.zeros(2 * (q - 1) if q > 2 else 2, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        order = q - 1
        factors = prime_factors(order) if order > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._pow_generic(g, order // f) != 1 for f in factors):
                gen = g
                break
        assert gen is not None
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self.mul_generic(x, gen)
        exp[order:2 * order] = exp[:order]
        self.primitive = gen
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()
        self._add_table = None
        if self.e > 1 and self.p != 2 and q <= TABLE_Q:
            codes = np.arange(q)
            self._add_table = self._vadd_digits(codes[:, None], codes[None, :])

    # code <-> coefficient vector
    def to_rep(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def from_rep(self, rep: Sequence[int]) -> int:
        rep = list(rep)
        if len(rep) > self.e:
            rep = _poly_mod(rep, self.modulus, self.p)
        return sum((c % self.p) * w for c, w in zip(rep, self._pows))

    # reference (generic) arithmetic on codes
    def add_generic(self, a: int, b: int) -> int:
        ra, rb = self.to_rep(a), self.to_rep(b)
        return self.from_rep([(x + y) % self.p for x, y in zip(ra, rb)])

    def mul_generic(self, a: int, b: int) -> int:
        ra, rb = self.to_rep(a), self.to_rep(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ra):
            if x:
                for j, y in enumerate(rb):
                    prod[i + j] += x * y
        return self.from_rep(_poly_mod(prod, self.modulus, self.p))

    def _pow_generic(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul_generic(result, base)
            base = self.mul_generic(base, base)
            n >>= 1
        return result

    def mul_table(self) -> np.ndarray:
        """Full q x q multiplication table (q <= 256 only)."""
        if self.q > TABLE_Q:
            raise TooLarge(f"multiplication table only for q <= {TABLE_Q}")
        return _mul_table(self)

    # fast scalar arithmetic on codes
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return self.add_generic(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_rep([(-c) % self.p for c in self.to_rep(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp_list[(self.q - 1 - self._log_list[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        return self._exp_list[(self._log_list[a] * n) % (self.q - 1)]

    # vectorised arithmetic on int64 code arrays
    def _vadd_digits(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        p = self.p
        for w in self._pows:
            out += ((a // w % p + b // w % p) % p) * w
        return out

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._vadd_digits(a, b)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros_like(a)
        for w in self._pows:
            out += ((-(a // w % self.p)) % self.p) * w
        return out

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def vpow(self, a, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones_like(a)
        res = self._exp[(self._log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0, res)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    # element-level API
    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise MixedFields(f"{x!r} is not an element of {self}")
            return x
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, int(x) % self.p)
        if isinstance(x, str):
            return self.parse(x)
        return FieldElement(self, self.from_rep(x))

    def element(self, rep: Sequence[int]) -> "FieldElement":
        return FieldElement(self, self.from_rep(rep))

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self}")
        return FieldElement(self, int(code))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t (equals 0 in a prime field with modulus t)."""
        return FieldElement(self, self.from_rep([0, 1]))

    def enumerate(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def code_text(self, code: int) -> str:
        return _poly_text(self.to_rep(code))

    def parse_code(self, text: str) -> int:
        return self.from_rep(_parse_poly(text, self.p))

    def parse(self, text: str) -> "FieldElement":
        """Parse ``t+1`` or a headed form ``GF(4;t^2+t+1): t+1``."""
        if ":" in text:
            head, body = text.split(":", 1)
            if parse_field_header(head) != self:
                raise MixedFields(f"header {head.strip()!r} does not match {self}")
            text = body
        return FieldElement(self, self.parse_code(text.strip()))

    @property
    def header(self) -> str:
        return f"GF({self.q};{_poly_text(self.modulus)})"

    # identity
    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return self.header

    def __reduce__(self):
        return (field_new, (self.p, self.e, list(self.modulus)))


@lru_cache(maxsize=None)
def _mul_table(spec: FieldSpec) -> np.ndarray:
    q = spec.q
    table = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            table[a, b] = table[b, a] = spec.mul_generic(a, b)
    table.setflags(write=False)
    return table


class FieldElement:
    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    @property
    def rep(self) -> tuple[int, ...]:
        return self.spec.to_rep(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise MixedFields(f"cannot combine {self!r} and {other!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.spec.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(b)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.code, n))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.code))

    def __str__(self) -> str:
        return self.spec.code_text(self.code)

    def __repr__(self) -> str:
        return f"{self.spec.header}: {self}"


# -- construction ----------------------------------------------------------

def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e, in code order of its lower coefficients."""
    for low in range(p ** e):
        coeffs = []
        c = low
        for _ in range(e):
            coeffs.append(c % p)
            c //= p
        cand = coeffs + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def _field_cached(p: int, e: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, e, modulus)


def field_new(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated F_{p^e}.  Defaults to the smallest irreducible modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** e > MAX_Q:
        raise TooLarge(f"q = {p}^{e} exceeds {MAX_Q}")
    if modulus is None:
        mod = default_modulus(p, e)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != e + 1 or mod[-1] != 1:
            raise FormatError(f"modulus must be monic of degree {e}, got {list(modulus)}")
        if not is_irreducible(mod, p):
            raise NotIrreducible(f"{_poly_text(mod)} is reducible over F_{p}")
    return _field_cached(p, e, mod)


def field_from_q(q: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    return field_new(p, e, modulus)


_HEADER = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:;\s*([^)]*))?\)\s*$")


def parse_field_header(text: str) -> FieldSpec:
    """Parse ``GF(q;modulus)`` or bare ``GF(q)`` (default modulus)."""
    m = _HEADER.match(text)
    if not m:
        raise FormatError(f"bad field header {text!r}")
    q = int(m.group(1))
    spec = field_from_q(q)
    if m.group(2):
        mod = _parse_poly(m.group(2), spec.p)
        spec = field_new(spec.p, spec.e, mod)
    return spec


def embedding(small: FieldSpec, big: FieldSpec) -> np.ndarray:
    """Codes of the images of every element of ``small`` inside ``big``.

    ``big`` must be an extension of the same characteristic whose degree is a
    multiple of ``small.e``; t is sent to the smallest root of small's modulus.
    """
    if small.p != big.p or big.e % small.e:
        raise ValueError(f"{small} does not embed in {big}")
    powers = None
    for alpha in range(big.q):
        acc = 0
        x = 1
        for c in small.modulus:
            acc = big.add(acc, big.mul(c % big.p, x))
            x = big.mul(x, alpha)
        if acc == 0:
            powers = [big.pow(alpha, j) for j in range(small.e)]
            break
    if powers is None:  # pragma: no cover
        raise AssertionError("modulus has no root in extension")
    out = np.zeros(small.q, dtype=np.int64)
    for code in range(small.q):
        acc = 0
        for c, w in zip(small.to_rep(code), powers):
            acc = big.add(acc, big.mul(c, w))
        out[code] = acc
    return out
