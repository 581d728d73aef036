"""Projective points, homogeneous polynomials, surfaces in P^3 and plane curves.

Point enumeration is vectorised: the canonical representatives of P^n(F_q)
(first nonzero coordinate equal to 1) are generated block by block in
lexicographic order of their coordinate codes, and polynomials are evaluated
on whole blocks at once.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch, FormatError, MixedFields, TooLarge
from .gf import FieldElement, FieldSpec, embedding, field_new, parse_field_header

POINT_LIMIT = 5_000_000
CHUNK = 1 << 18


# -- points ----------------------------------------------------------------

class ProjectivePoint:
    """A point of P^n(F_q) in canonical form (first nonzero coordinate 1)."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec: FieldSpec, coords: Sequence[int]):
        self.spec = spec
        self.coords = tuple(int(c) for c in coords)

    @classmethod
    def normalize(cls, spec: FieldSpec, coords: Sequence) -> "ProjectivePoint":
        codes = [spec(c).code if not isinstance(c, (int, np.integer)) else int(c) for c in coords]
        for c in codes:
            if not 0 <= c < spec.q:
                raise ValueError(f"coordinate code {c} out of range")
        lead = next((c for c in codes if c), 0)
        if lead == 0:
            raise ValueError("all coordinates are zero")
        s = spec.inv(lead)
        return cls(spec, [spec.mul(c, s) for c in codes])

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(self.spec.from_code(c) for c in self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and self.spec == other.spec and self.coords == other.coords

    def __lt__(self, other: "ProjectivePoint") -> bool:
        return self.coords < other.coords

    def __hash__(self) -> int:
        return hash((self.spec, self.coords))

    def __str__(self) -> str:
        return ":".join(self.spec.code_text(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"({self})"


def count_projective(q: int, n: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def iter_point_blocks(spec: FieldSpec, n: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """Yield (m, n+1) code arrays covering P^n(F_q) in canonical order."""
    q = spec.q
    for lead in range(n, -1, -1):
        free = n - lead
        total = q ** free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            block = np.zeros((idx.size, n + 1), dtype=np.int64)
            block[:, lead] = 1
            for j in range(n, lead, -1):
                block[:, j] = idx % q
                idx = idx // q
            yield block


def projective_points_array(spec: FieldSpec, n: int, limit: int = POINT_LIMIT) -> np.ndarray:
    if count_projective(spec.q, n) > limit:
        raise TooLarge(f"P^{n}(F_{spec.q}) has more than {limit} points")
    return np.concatenate(list(iter_point_blocks(spec, n)), axis=0)


def enumerate_projective_points(spec: FieldSpec, n: int, limit: int = POINT_LIMIT) -> list[ProjectivePoint]:
    if n not in (2, 3):
        raise ValueError("only P^2 and P^3 are supported")
    arr = projective_points_array(spec, n, limit)
    return [ProjectivePoint(spec, row) for row in arr.tolist()]


# -- polynomials -----------------------------------------------------------

class HomogeneousPolynomial:
    """Sparse homogeneous form: exponent tuple -> nonzero coefficient code."""

    def __init__(self, spec: FieldSpec, nvars: int, terms: Mapping[tuple, object], degree: int | None = None):
        clean: dict[tuple[int, ...], int] = {}
        for exps, c in terms.items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != nvars or min(exps) < 0:
                raise ArityMismatch(f"exponent tuple {exps} does not match {nvars} variables")
            code = c.code if isinstance(c, FieldElement) and c.spec == spec else spec(c).code
            if code:
                clean[exps] = spec.add(clean.get(exps, 0), code)
                if clean[exps] == 0:
                    del clean[exps]
        degrees = {sum(e) for e in clean}
        if len(degrees) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
        if degree is None:
            degree = degrees.pop() if degrees else 0
        elif degrees and degrees != {degree}:
            raise ValueError(f"terms have degree {degrees.pop()}, expected {degree}")
        self.spec = spec
        self.nvars = nvars
        self.degree = degree
        self.terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def monomial(cls, spec: FieldSpec, exps: Sequence[int], coeff=1) -> "HomogeneousPolynomial":
        return cls(spec, len(exps), {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self) -> tuple[int, ...]:
        """Largest exponent tuple in lex order (x0 > x1 > ...)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms)

    def derivative(self, i: int) -> "HomogeneousPolynomial":
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e % self.spec.p:
                new = list(exps)
                new[i] -= 1
                out[tuple(new)] = self.spec.mul(c, e % self.spec.p)
        return HomogeneousPolynomial(self.spec, self.nvars, out, degree=max(self.degree - 1, 0))

    def gradient(self) -> list["HomogeneousPolynomial"]:
        return [self.derivative(i) for i in range(self.nvars)]

    def map_coefficients(self, big: FieldSpec, emb: np.ndarray) -> "HomogeneousPolynomial":
        """The same form viewed over an extension field via the embedding codes."""
        return HomogeneousPolynomial(
            big, self.nvars, {e: big.from_code(int(emb[c])) for e, c in self.terms.items()}, self.degree
        )

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate on an (m, nvars) array of coordinate codes."""
        points = np.asarray(points, dtype=np.int64)
        if points.ndim != 2 or points.shape[1] != self.nvars:
            raise ArityMismatch(f"expected points with {self.nvars} coordinates")
        F = self.spec
        acc = np.zeros(points.shape[0], dtype=np.int64)
        cache: dict[tuple[int, int], np.ndarray] = {}
        for exps, c in self.terms.items():
            val = np.full(points.shape[0], c, dtype=np.int64)
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = F.vpow(points[:, i], e)
                    val = F.vmul(val, cache[key])
            acc = F.vadd(acc, val)
        return acc

    def __call__(self, point: ProjectivePoint) -> FieldElement:
        return evaluate(self, point)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomogeneousPolynomial)
            and self.spec == other.spec
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms.items():
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            coeff = self.spec.code_text(c)
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}" if "+" in coeff else f"{coeff}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def evaluate(poly: HomogeneousPolynomial, point: ProjectivePoint) -> FieldElement:
    if poly.spec != point.spec:
        raise MixedFields(f"polynomial over {poly.spec}, point over {point.spec}")
    if len(point.coords) != poly.nvars:
        raise ArityMismatch(f"{poly.nvars}-variable form at a point with {len(point.coords)} coordinates")
    val = poly.evaluate_many(np.array([point.coords]))
    return poly.spec.from_code(int(val[0]))


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given degree, lex-descending."""
    out = [
        e
        for e in itertools.product(range(degree, -1, -1), repeat=nvars)
        if sum(e) == degree
    ]
    return out


_EXPR_TERM = re.compile(r"^(?:\(([^)]*)\)|(\d+))?\*?(.*)$")


def parse_polynomial_expr(spec: FieldSpec, text: str, nvars: int = 4) -> HomogeneousPolynomial:
    """Parse e.g. ``x0^3 + x1^3 + (t+1)*x2*x3^2 - x3^3``."""
    s = text.replace(" ", "")
    tokens = re.findall(r"[+-]?(?:\([^)]*\)|[^+-])+", s)
    if "".join(tokens) != s:
        raise FormatError(f"cannot parse polynomial {text!r}")
    terms: dict[tuple, int] = {}
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        m = _EXPR_TERM.match(tok)
        coeff_txt, int_txt, rest = m.group(1), m.group(2), m.group(3).lstrip("*")
        c = spec.parse_code(coeff_txt) if coeff_txt else (int(int_txt) % spec.p if int_txt else 1)
        exps = [0] * nvars
        if rest:
            for factor in rest.split("*"):
                fm = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
                if not fm:
                    # a bare field constant such as t or t^2
                    c = spec.mul(c, spec.parse_code(factor))
                    continue
                i = int(fm.group(1))
                if i >= nvars:
                    raise ArityMismatch(f"x{i} in a {nvars}-variable form")
                exps[i] += int(fm.group(2) or 1)
        if sign < 0:
            c = spec.neg(c)
        key = tuple(exps)
        terms[key] = spec.add(terms.get(key, 0), c)
    return HomogeneousPolynomial(spec, nvars, {k: spec.from_code(v) for k, v in terms.items()})


# -- surfaces and curves ---------------------------------------------------

@dataclass(frozen=True)
class SmoothnessStatus:
    """Outcome of the Jacobian search.

    ``kind`` is one of ``verified`` (no singular point over F_{q^k},
    k <= max_ext; not a proof over the algebraic closure), ``singular``
    (``witness`` holds a singular point over ``witness_field``),
    ``asserted`` or ``unknown``.
    """

    kind: str
    max_ext: int | None = None
    witness: ProjectivePoint | None = None

    @property
    def is_smooth(self) -> bool:
        return self.kind in ("verified", "asserted")

    def __str__(self) -> str:
        if self.kind == "verified":
            return f"verified(K={self.max_ext})"
        if self.kind == "singular":
            return f"singular({self.witness} over {self.witness.spec})"
        return self.kind


@dataclass
class SurfaceP3:
    f: HomogeneousPolynomial
    smoothness: SmoothnessStatus = field(default_factory=lambda: SmoothnessStatus("unknown"))
    absolutely_irreducible_asserted: bool = False
    name: str = ""

    def __post_init__(self):
        if self.f.nvars != 4:
            raise ArityMismatch("a surface in P^3 needs a form in 4 variables")
        if self.f.is_zero():
            raise ValueError("defining polynomial is zero")
        if self.f.degree < 2:
            raise ValueError("surface degree must be >= 2")

    @property
    def field(self) -> FieldSpec:
        return self.f.spec

    @property
    def degree(self) -> int:
        return self.f.degree


@dataclass
class PlaneCurveSpec:
    g: HomogeneousPolynomial
    genus: int | None = None

    def __post_init__(self):
        if self.g.nvars != 3:
            raise ArityMismatch("a plane curve needs a form in 3 variables")
        if self.g.is_zero():
            raise ValueError("defining polynomial is zero")
        if self.genus is None:
            e = self.g.degree
            self.genus = (e - 1) * (e - 2) // 2
        if self.genus < 0:
            raise ValueError("genus must be >= 0")

    @property
    def field(self) -> FieldSpec:
        return self.g.spec


def zero_set_array(poly: HomogeneousPolynomial, limit: int = POINT_LIMIT) -> np.ndarray:
    n = poly.nvars - 1
    if count_projective(poly.spec.q, n) > limit:
        raise TooLarge(f"P^{n}(F_{poly.spec.q}) has more than {limit} points")
    found = [blk[poly.evaluate_many(blk) == 0] for blk in iter_point_blocks(poly.spec, n)]
    return np.concatenate(found, axis=0) if found else np.zeros((0, poly.nvars), dtype=np.int64)


def rational_points(X: SurfaceP3 | HomogeneousPolynomial) -> list[ProjectivePoint]:
    f = X.f if isinstance(X, SurfaceP3) else X
    return [ProjectivePoint(f.spec, row) for row in zero_set_array(f).tolist()]


def count_points_plane_curve(C: PlaneCurveSpec) -> int:
    return int(zero_set_array(C.g).shape[0])


def _singular_points(f: HomogeneousPolynomial, first_only: bool = True) -> np.ndarray | None:
    system = [f] + f.gradient()
    n = f.nvars - 1
    for blk in iter_point_blocks(f.spec, n):
        mask = np.ones(blk.shape[0], dtype=bool)
        for g in system:
            if g.is_zero():
                continue
            mask &= g.evaluate_many(blk) == 0
            if not mask.any():
                break
        if mask.any():
            return blk[mask][0] if first_only else blk[mask]
    return None


def check_smoothness(X: SurfaceP3 | HomogeneousPolynomial, max_ext: int = 2,
                     limit: int = POINT_LIMIT) -> SmoothnessStatus:
    """Search for a common zero of f and its partials over F_{q^k}, k = 1..max_ext."""
    f = X.f if isinstance(X, SurfaceP3) else X
    if max_ext < 1:
        raise ValueError("max_ext must be >= 1")
    F = f.spec
    n = f.nvars - 1
    if F.p ** (F.e * max_ext) > 1 << 16:
        raise TooLarge(f"F_{F.q}^{max_ext} exceeds the supported field size")
    if count_projective(F.q ** max_ext, n) > limit:
        raise TooLarge(f"P^{n}(F_{F.q ** max_ext}) has more than {limit} points")
    for k in range(1, max_ext + 1):
        if k == 1:
            big, g = F, f
        else:
            big = field_new(F.p, F.e * k)
            g = f.map_coefficients(big, embedding(F, big))
        witness = _singular_points(g)
        if witness is not None:
            return SmoothnessStatus("singular", k, ProjectivePoint(big, witness))
    return SmoothnessStatus("verified", max_ext)


def fermat(spec: FieldSpec, d: int, nvars: int = 4) -> HomogeneousPolynomial:
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = d
        terms[tuple(e)] = 1
    return HomogeneousPolynomial(spec, nvars, terms)


def monomial_count(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if degree >= 0 else 0


# -- text formats ----------------------------------------------------------

def format_polynomial(poly: HomogeneousPolynomial) -> str:
    lines = [f"field: {poly.spec.header}", f"degree: {poly.degree}"]
    for exps, c in poly.terms.items():
        lines.append(" ".join(str(e) for e in exps) + " " + poly.spec.code_text(c))
    return "\n".join(lines) + "\n"


def parse_polynomial(text: str) -> HomogeneousPolynomial:
    """Read the ``field:`` / ``degree:`` headed term-per-line format."""
    spec = None
    degree = None
    rows: list[tuple[tuple[int, ...], str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("field:"):
            spec = parse_field_header(line.split(":", 1)[1])
        elif line.lower().startswith("degree:"):
            degree = int(line.split(":", 1)[1])
        else:
            parts = line.split()
            if len(parts) < 4:
                raise FormatError(f"bad term line {raw!r}")
            exps = tuple(int(x) for x in parts[:-1])
            rows.append((exps, parts[-1]))
    if spec is None or degree is None:
        raise FormatError("polynomial file needs 'field:' and 'degree:' headers")
    if not rows:
        raise FormatError("polynomial file has no terms")
    nvars = len(rows[0][0])
    if any(len(e) != nvars for e, _ in rows):
        raise FormatError("inconsistent number of exponents")
    for exps, _ in rows:
        if sum(exps) != degree:
            raise FormatError(f"term {exps} does not have degree {degree}")
    return HomogeneousPolynomial(spec, nvars, {e: spec.parse(c) for e, c in rows}, degree)


def format_points(points: Iterable[ProjectivePoint]) -> str:
    return "".join(f"{p}\n" for p in points)


def parse_points(spec: FieldSpec, text: str) -> list[ProjectivePoint]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            out.append(ProjectivePoint.normalize(spec, [spec.parse_code(c) for c in line.split(":")]))
    return out
