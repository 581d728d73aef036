"""Evaluation codes C(X, rL, S) and exact minimum distance.

Matrices hold F_q element codes (int64).  For weight enumeration every
codeword is carried in additive form, each symbol expanded into its e
coefficients over F_p, so that adding codewords is plain addition mod p.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import BudgetExceeded, EmptySupport, FormatError, LengthMismatch
from .gf import FieldElement, FieldSpec, field_from_q, parse_field_header
from .projective import SurfaceP3, monomials, zero_set_array

DEFAULT_BUDGET = 10 ** 7
BZ_FALLBACK = 1 << 12  # projective classes below which BZ just enumerates
_BLOCK_ENTRIES = 1 << 22


# -- linear algebra --------------------------------------------------------

def rref(spec: FieldSpec, M, col_order=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with pivots searched in ``col_order``.

    Zero rows are dropped; returns (R, pivot columns in pivot order).
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, ncols = R.shape
    order = range(ncols) if col_order is None else col_order
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = spec.vmul(R[r], spec.inv(int(R[r, c])))
        factors = R[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            R[hit] = spec.vadd(R[hit], spec.vneg(spec.vmul(factors[hit, None], R[r][None, :])))
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(spec: FieldSpec, M) -> int:
    return len(rref(spec, M)[1])


# -- codes -----------------------------------------------------------------

@dataclass
class LinearCode:
    """Code spanned by the rows of ``gen`` (kept in reduced row echelon form)."""

    field: FieldSpec
    gen: np.ndarray
    provenance: dict | None = None
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        G = np.asarray(self.gen, dtype=np.int64)
        if G.ndim != 2:
            raise ValueError("generator matrix must be 2-d")
        if G.size and (G.min() < 0 or G.max() >= self.field.q):
            raise ValueError("matrix entries must be field element codes")
        R, _ = rref(self.field, G)
        R.setflags(write=False)
        self.gen = R
        self.n = G.shape[1]
        self.k = R.shape[0]

    @classmethod
    def from_matrix(cls, spec: FieldSpec, rows, provenance: dict | None = None) -> "LinearCode":
        return cls(spec, np.array([[spec(x).code if isinstance(x, FieldElement) else int(x) for x in row]
                                   for row in rows], dtype=np.int64), provenance)

    def encode(self, message) -> np.ndarray:
        msg = _message_codes(self, message)
        F = self.field
        out = np.zeros(self.n, dtype=np.int64)
        for i, c in enumerate(msg):
            if c:
                out = F.vadd(out, F.vmul(c, self.gen[i]))
        return out

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over GF({self.field.q}))"


def _message_codes(C: LinearCode, message) -> list[int]:
    msg = list(message)
    if len(msg) != C.k:
        raise LengthMismatch(f"message has length {len(msg)}, code dimension is {C.k}")
    codes = [C.field(x).code if isinstance(x, FieldElement) else int(x) for x in msg]
    if any(not 0 <= c < C.field.q for c in codes):
        raise ValueError("message entries must be field element codes")
    return codes


def weight_of(C: LinearCode, message) -> int:
    """Hamming weight of message · gen."""
    return int(np.count_nonzero(C.encode(message)))


@dataclass(frozen=True)
class MonomialBasis:
    """Degree-r monomials not divisible by the leading monomial of f.

    They form a basis of the degree-r part of F_q[x0..x3]/(f), i.e. of L(rL).
    """

    degree: int
    surface_degree: int
    leading: tuple[int, ...]
    monomials: tuple[tuple[int, ...], ...]

    @classmethod
    def for_surface(cls, f, r: int) -> "MonomialBasis":
        lead = f.leading_monomial()
        mons = tuple(m for m in monomials(4, r) if not all(a >= b for a, b in zip(m, lead)))
        return cls(r, f.degree, lead, mons)

    @staticmethod
    def expected_size(r: int, d: int) -> int:
        return comb(r + 3, 3) - (comb(r - d + 3, 3) if r >= d else 0)

    def __len__(self) -> int:
        return len(self.monomials)


def affine_points(X: SurfaceP3, hyperplane=(1, 0, 0, 0)) -> np.ndarray:
    """Rational points of X off the hyperplane, in canonical order."""
    pts = zero_set_array(X.f)
    h = np.asarray([X.field(c).code if isinstance(c, FieldElement) else int(c) for c in hyperplane], dtype=np.int64)
    if h.shape != (4,) or not h.any():
        raise ValueError("hyperplane must be a nonzero linear form in 4 variables")
    return pts[_linear_form(X.field, h, pts) != 0]


def _linear_form(F: FieldSpec, h: np.ndarray, pts: np.ndarray) -> np.ndarray:
    acc = np.zeros(pts.shape[0], dtype=np.int64)
    for i in range(4):
        if h[i]:
            acc = F.vadd(acc, F.vmul(h[i], pts[:, i]))
    return acc


def evaluation_matrix(X: SurfaceP3, basis: MonomialBasis, points: np.ndarray, hyperplane=(1, 0, 0, 0)) -> np.ndarray:
    """Row j holds x^m_j / h^r evaluated at each point."""
    F = X.field
    h = np.asarray([int(c) for c in hyperplane], dtype=np.int64)
    denom = F.vinv(F.vpow(_linear_form(F, h, points), basis.degree))
    powers = {}
    rows = []
    for mon in basis.monomials:
        val = denom
        for i, e in enumerate(mon):
            if e:
                if (i, e) not in powers:
                    powers[(i, e)] = F.vpow(points[:, i], e)
                val = F.vmul(val, powers[(i, e)])
        rows.append(val)
    return np.array(rows, dtype=np.int64).reshape(len(basis), points.shape[0])


def build_code(X: SurfaceP3, r: int, hyperplane=(1, 0, 0, 0), multiple: int = 1) -> LinearCode:
    """C(X, rH, S) with H = a·L, L the hyperplane section and S the points off L.

    ``provenance`` records the point order, dim L(rH) and whether ev is injective.
    """
    if r < 1 or multiple < 1:
        raise ValueError("r and the multiple a must be >= 1")
    pts = affine_points(X, hyperplane)
    if pts.shape[0] == 0:
        raise EmptySupport("no rational points off the hyperplane")
    deg = r * multiple
    basis = MonomialBasis.for_surface(X.f, deg)
    E = evaluation_matrix(X, basis, pts, hyperplane)
    C = LinearCode(X.field, E)
    C.provenance = {
        "surface": X.name or str(X.f),
        "r": r,
        "multiple": multiple,
        "hyperplane": tuple(int(c) for c in hyperplane),
        "points": pts,
        "dim_L": len(basis),
        "injective": C.k == len(basis),
    }
    return C


# -- additive representation for enumeration -------------------------------

class _Additive:
    """Field codes expanded to e digits over F_p; addition is digit-wise mod p."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.e = spec.p, spec.e
        self.dtype = np.int16 if spec.p < 2 ** 14 else np.int64

    def expand(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        digits = [(codes // self.p ** j) % self.p for j in range(self.e)]
        return np.stack(digits, axis=-1).reshape(*codes.shape[:-1], -1).astype(self.dtype)

    def scaled_rows(self, G: np.ndarray) -> np.ndarray:
        """S[i, c] = c·G[i] in additive form, shape (k, q, n·e)."""
        F = self.spec
        c = np.arange(F.q, dtype=np.int64)
        prods = F.vmul(c[None, :, None], G[:, None, :])
        return self.expand(prods)

    def add(self, a, b):
        s = a + b
        if self.p == 2:
            return s & 1
        return s % self.p

    def weights(self, words: np.ndarray, n: int) -> np.ndarray:
        if self.e == 1:
            return np.count_nonzero(words, axis=-1)
        w = words.reshape(*words.shape[:-1], n, self.e)
        return np.count_nonzero(w.any(axis=-1), axis=-1)


def projective_classes(q: int, k: int) -> int:
    return (q ** k - 1) // (q - 1)


# -- exhaustive search -----------------------------------------------------

def _span(A: _Additive, S: np.ndarray, rows: list[int]) -> np.ndarray:
    """All combinations of ``rows``; the first row's coefficient varies slowest."""
    block = np.zeros((1, S.shape[2]), dtype=S.dtype)
    for i in reversed(rows):
        block = A.add(S[i][:, None, :], block[None, :, :]).reshape(-1, S.shape[2])
    return block


def _exhaustive_plan(q: int, k: int, width: int) -> tuple[int, list[tuple[int, int, int]]]:
    """Low-block size and (leading row, high-range start, stop) tasks."""
    L = 0
    while L < k - 1 and q ** (L + 1) * width <= _BLOCK_ENTRIES:
        L += 1
    tasks = []
    for i in range(k):
        t = k - 1 - i
        h = t - min(t, L)
        tasks.append((i, 0, q ** h))
    return L, tasks


def _run_tasks(A: _Additive, S, low, L, k, n, tasks) -> tuple[int, np.ndarray | None]:
    q = A.spec.q
    best, best_word = n + 1, None
    for i, j0, j1 in tasks:
        t = k - 1 - i
        Li = min(t, L)
        lowblk = low[: q ** Li]
        high = list(range(i + 1, k - Li))
        for j in range(j0, j1):
            base = S[i, 1]
            x = j
            for row in reversed(high):
                x, c = divmod(x, q)
                if c:
                    base = A.add(base, S[row, c])
            words = A.add(base[None, :], lowblk)
            w = A.weights(words, n)
            a = int(np.argmin(w))
            if w[a] < best:
                best, best_word = int(w[a]), words[a].copy()
    return best, best_word


_WORKER_STATE: dict = {}


def _worker_init(spec, S, low, L, k, n):
    _WORKER_STATE.update(A=_Additive(spec), S=S, low=low, L=L, k=k, n=n)


def _worker_run(tasks):
    s = _WORKER_STATE
    return _run_tasks(s["A"], s["S"], s["low"], s["L"], s["k"], s["n"], tasks)[0]


def _split_tasks(tasks, parts: int):
    """Cut every (i, j0, j1) range into pieces and deal them round-robin."""
    pieces = []
    for i, j0, j1 in tasks:
        step = max(1, (j1 - j0) // parts)
        for a in range(j0, j1, step):
            pieces.append((i, a, min(j1, a + step)))
    return [pieces[w::parts] for w in range(parts)]


def min_distance_exhaustive(C: LinearCode, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Exact minimum distance, one message per projective class.

    Raises BudgetExceeded when (q^k - 1)/(q - 1) > budget.  With ``workers``
    > 1 the message space is split across processes; the minimum does not
    depend on the split.
    """
    q, k, n = C.field.q, C.k, C.n
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    needed = projective_classes(q, k)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    A = _Additive(C.field)
    S = A.scaled_rows(C.gen)
    L, tasks = _exhaustive_plan(q, k, S.shape[2])
    low = _span(A, S, list(range(k - L, k)))
    if workers <= 1:
        return _run_tasks(A, S, low, L, k, n, tasks)[0]
    with ProcessPoolExecutor(workers, initializer=_worker_init, initargs=(C.field, S, low, L, k, n)) as ex:
        return min(ex.map(_worker_run, _split_tasks(tasks, workers)))


def minimum_weight_word(C: LinearCode, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """A codeword of minimum weight (as element codes), by exhaustive search."""
    needed = projective_classes(C.field.q, C.k)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    A = _Additive(C.field)
    S = A.scaled_rows(C.gen)
    L, tasks = _exhaustive_plan(C.field.q, C.k, S.shape[2])
    low = _span(A, S, list(range(C.k - L, C.k)))
    _, word = _run_tasks(A, S, low, L, C.k, C.n, tasks)
    digits = word.reshape(C.n, A.e).astype(np.int64)
    return (digits * (A.p ** np.arange(A.e))).sum(axis=1)


# -- Brouwer-Zimmermann ----------------------------------------------------

@dataclass
class InformationSet:
    gen: np.ndarray  # generator matrix, systematic on ``pivots``
    pivots: list[int]
    fresh: int  # pivots not shared with earlier sets


def information_sets(C: LinearCode) -> list[InformationSet]:
    """Disjoint (possibly partial) information sets.

    The first is the leftmost-pivot greedy set.  Each later one reduces with
    the unused columns first, in cyclic order starting just after the last
    fresh pivot of the previous set, and the used columns after them.
    """
    n = C.n
    used: set[int] = set()
    start = 0
    out = []
    while True:
        fresh_cols = [(start + j) % n for j in range(n) if (start + j) % n not in used]
        if not fresh_cols:
            break
        order = fresh_cols + sorted(used)
        R, piv = rref(C.field, C.gen, order)
        fresh = [c for c in piv if c not in used]
        if not fresh:
            break
        out.append(InformationSet(R, piv, len(fresh)))
        used.update(fresh)
        start = (fresh[-1] + 1) % n
    return out


def _nonzero_patterns(q: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(1, q), repeat=length)), dtype=np.int64)


def _min_weight_exact_w(A: _Additive, S: np.ndarray, k: int, n: int, w: int) -> int:
    """Minimum codeword weight over messages of Hamming weight exactly w (first nonzero = 1)."""
    q = A.spec.q
    width = S.shape[2]
    all_pats = _nonzero_patterns(q, w - 1)
    pat_rows = max(1, _BLOCK_ENTRIES // width)
    best = n + 1
    for p0 in range(0, all_pats.shape[0], pat_rows):
        pats = all_pats[p0:p0 + pat_rows]
        chunk = max(1, _BLOCK_ENTRIES // (pats.shape[0] * width))
        supports = itertools.combinations(range(k), w)
        while True:
            sup = np.array(list(itertools.islice(supports, chunk)), dtype=np.int64).reshape(-1, w)
            if sup.shape[0] == 0:
                break
            words = np.broadcast_to(S[sup[:, 0], 1][:, None, :], (sup.shape[0], pats.shape[0], width))
            for j in range(1, w):
                words = A.add(words, S[sup[:, j][:, None], pats[None, :, j - 1]])
            best = min(best, int(A.weights(words, n).min()))
    return best


def min_distance_bz(C: LinearCode, fallback: int = BZ_FALLBACK, stats: dict | None = None,
                    budget: int | None = None) -> int:
    """Exact minimum distance by the Brouwer-Zimmermann information-set method.

    After every message of weight <= w has been tried in each of the
    disjoint sets, an unseen codeword has weight at least
    sum_j max(0, w + 1 - (k - r_j)), r_j being the fresh rank of set j.
    ``budget`` caps the number of messages tried; BudgetExceeded is raised
    before starting a weight level that would go over it.
    """
    q, k, n = C.field.q, C.k, C.n
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    if projective_classes(q, k) <= fallback:
        return min_distance_exhaustive(C, budget=fallback if budget is None else min(fallback, budget))
    A = _Additive(C.field)
    sets = information_sets(C)
    scaled = [A.scaled_rows(s.gen) for s in sets]
    upper, lower = n + 1, 0
    spent = 0
    for w in range(1, k + 1):
        level = len(sets) * comb(k, w) * (q - 1) ** (w - 1)
        if budget is not None and spent + level > budget:
            raise BudgetExceeded(spent + level, budget)
        spent += level
        for S in scaled:
            upper = min(upper, _min_weight_exact_w(A, S, k, n, w))
            if upper <= lower:
                break
        lower = sum(max(0, w + 1 - (k - s.fresh)) for s in sets)
        if stats is not None:
            stats.setdefault("trace", []).append((w, lower, upper))
        if lower >= upper or w == k:
            break
    if stats is not None:
        stats["information_sets"] = [s.fresh for s in sets]
        stats["messages"] = spent
    return upper


def min_distance(C: LinearCode, budget: int = DEFAULT_BUDGET, workers: int = 1) -> tuple[int, str]:
    """Exhaustive search when it fits the budget, otherwise Brouwer-Zimmermann under the same budget."""
    if projective_classes(C.field.q, C.k) <= budget:
        return min_distance_exhaustive(C, budget, workers), "exhaustive"
    return min_distance_bz(C, budget=budget), "bz"


# -- text format -----------------------------------------------------------

def format_matrix(C: LinearCode) -> str:
    """Header ``n k q`` (or ``n k GF(q;modulus)`` for a non-default modulus), then k rows."""
    F = C.field
    tag = str(F.q) if field_from_q(F.q) == F else F.header
    lines = [f"{C.n} {C.k} {tag}"]
    for row in C.gen.tolist():
        lines.append(" ".join(F.code_text(c) for c in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> LinearCode:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise FormatError("header must be 'n k q'")
    try:
        n, k = int(head[0]), int(head[1])
        F = field_from_q(int(head[2])) if head[2].isdigit() else parse_field_header(head[2])
    except ValueError as exc:
        raise FormatError(f"bad header: {lines[0]!r}") from exc
    rows = lines[1:]
    if len(rows) != k:
        raise FormatError(f"expected {k} rows, found {len(rows)}")
    M = []
    for ln in rows:
        toks = ln.split()
        if len(toks) != n:
            raise FormatError(f"expected {n} entries per row, found {len(toks)}")
        M.append([F.parse_code(t) for t in toks])
    return LinearCode(F, np.array(M, dtype=np.int64).reshape(k, n))
