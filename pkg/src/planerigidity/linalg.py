"""Exact linear algebra over cyclotomic fields.

3x3 matrix algebra for group elements, characteristic polynomials,
root-of-unity eigenvalues with their eigenspaces, and generic kernel/rank
by exact Gaussian elimination (first-nonzero pivoting, no size heuristics).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cyclo import CycloNum, zeta
from .errors import NotFiniteOrderError, SingularMatrixError

ORDER_CAP = 10_000


def _as_cyclo(x):
    return x if isinstance(x, CycloNum) else CycloNum.rational(x)


class Mat3:
    """A 3x3 matrix of CycloNum sharing one conductor; immutable."""

    __slots__ = ("n", "entries", "_hash")

    def __init__(self, rows):
        flat = [_as_cyclo(x) for row in rows for x in row]
        if len(flat) != 9:
            raise ValueError("Mat3 needs 9 entries")
        n = 1
        for x in flat:
            n = math.lcm(n, x.n)
        self.n = n
        self.entries = tuple(x.embed(n) for x in flat)
        self._hash = None

    @classmethod
    def identity(cls, conductor: int = 1) -> "Mat3":
        one, zero = CycloNum.one(conductor), CycloNum.zero(conductor)
        return cls([[one, zero, zero], [zero, one, zero], [zero, zero, one]])

    @classmethod
    def diagonal(cls, a, b, c) -> "Mat3":
        z = CycloNum.zero(1)
        return cls([[a, z, z], [z, b, z], [z, z, c]])

    @classmethod
    def scalar(cls, c) -> "Mat3":
        return cls.diagonal(c, c, c)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[3 * i + j]

    def row(self, i):
        return self.entries[3 * i: 3 * i + 3]

    def embed(self, m: int) -> "Mat3":
        if m == self.n:
            return self
        out = object.__new__(Mat3)
        out.n = m
        out.entries = tuple(x.embed(m) for x in self.entries)
        out._hash = None
        return out

    def __matmul__(self, other: "Mat3") -> "Mat3":
        a, b = self, other
        if a.n != b.n:
            m = math.lcm(a.n, b.n)
            a, b = a.embed(m), b.embed(m)
        e, f = a.entries, b.entries
        out = []
        for i in (0, 3, 6):
            for j in (0, 1, 2):
                out.append(e[i] * f[j] + e[i + 1] * f[j + 3] + e[i + 2] * f[j + 6])
        r = object.__new__(Mat3)
        r.n = a.n
        r.entries = tuple(out)
        r._hash = None
        return r

    def apply(self, v):
        """Matrix times a coordinate 3-vector of CycloNum."""
        e = self.entries
        v = [_as_cyclo(x) for x in v]
        return tuple(e[3 * i] * v[0] + e[3 * i + 1] * v[1] + e[3 * i + 2] * v[2]
                     for i in range(3))

    def scale(self, c) -> "Mat3":
        c = _as_cyclo(c)
        return Mat3([[self[i, j] * c for j in range(3)] for i in range(3)])

    def transpose(self) -> "Mat3":
        return Mat3([[self[j, i] for j in range(3)] for i in range(3)])

    def det(self) -> CycloNum:
        e = self.entries
        return (e[0] * (e[4] * e[8] - e[5] * e[7])
                - e[1] * (e[3] * e[8] - e[5] * e[6])
                + e[2] * (e[3] * e[7] - e[4] * e[6]))

    def trace(self) -> CycloNum:
        e = self.entries
        return e[0] + e[4] + e[8]

    def adjugate(self) -> "Mat3":
        e = self.entries
        c = [
            e[4] * e[8] - e[5] * e[7], e[2] * e[7] - e[1] * e[8], e[1] * e[5] - e[2] * e[4],
            e[5] * e[6] - e[3] * e[8], e[0] * e[8] - e[2] * e[6], e[2] * e[3] - e[0] * e[5],
            e[3] * e[7] - e[4] * e[6], e[1] * e[6] - e[0] * e[7], e[0] * e[4] - e[1] * e[3],
        ]
        return Mat3([c[0:3], c[3:6], c[6:9]])

    def inv(self) -> "Mat3":
        d = self.det()
        if d.is_zero():
            raise SingularMatrixError("matrix is singular")
        di = d.inv()
        return self.adjugate().scale(di)

    def is_identity(self) -> bool:
        e = self.entries
        one, zero = CycloNum.one(self.n), CycloNum.zero(self.n)
        pattern = (one, zero, zero, zero, one, zero, zero, zero, one)
        return all(x == p for x, p in zip(e, pattern))

    def is_scalar(self) -> bool:
        e = self.entries
        return (e[1].is_zero() and e[2].is_zero() and e[3].is_zero()
                and e[5].is_zero() and e[6].is_zero() and e[7].is_zero()
                and e[0] == e[4] and e[4] == e[8])

    def order(self, cap: int = ORDER_CAP) -> int:
        """Smallest t >= 1 with A^t = I, or NotFiniteOrderError past cap."""
        acc = self
        for t in range(1, cap + 1):
            if acc.is_identity():
                return t
            acc = acc @ self
        raise NotFiniteOrderError(f"order exceeds cap {cap}")

    def projective_order(self, cap: int = ORDER_CAP) -> int:
        """Smallest t >= 1 with A^t scalar."""
        acc = self
        for t in range(1, cap + 1):
            if acc.is_scalar():
                return t
            acc = acc @ self
        raise NotFiniteOrderError(f"projective order exceeds cap {cap}")

    def char_poly(self) -> "CharPoly":
        e = self.entries
        minors = (e[4] * e[8] - e[5] * e[7]) + (e[0] * e[8] - e[2] * e[6]) + (e[0] * e[4] - e[1] * e[3])
        return CharPoly(self.trace(), minors, self.det())

    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return self.entries == other.entries if self.n == other.n else \
            all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(3)) + "]"

    __repr__ = __str__


@dataclass(frozen=True)
class CharPoly:
    """lambda^3 - t lambda^2 + s lambda - d."""
    t: CycloNum
    s: CycloNum
    d: CycloNum

    def evaluate(self, lam: CycloNum) -> CycloNum:
        return ((lam - self.t) * lam + self.s) * lam - self.d


@dataclass(frozen=True)
class Subspace:
    dimension: int
    basis: tuple  # tuple of coordinate tuples of CycloNum


# ---------------------------------------------------------------------------
# generic exact elimination

def _rref(rows):
    """Reduced row echelon form in place; returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(matrix) -> int:
    rows = [[_as_cyclo(x) for x in row] for row in matrix]
    if not rows:
        return 0
    return len(_rref(rows))


def kernel(matrix):
    """Basis of the null space {v : M v = 0}, by exact Gaussian elimination
    with first-nonzero pivoting.  Deterministic: one basis vector per free
    column, in column order, with 1 in the free position."""
    rows = [[_as_cyclo(x) for x in row] for row in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = _rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [CycloNum.zero(1) for _ in range(ncols)]
        v[fc] = CycloNum.one(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def intersect_spans(basis_a, basis_b):
    """Basis of span(basis_a) intersected with span(basis_b), vectors in C^3."""
    if not basis_a or not basis_b:
        return []
    cols = list(basis_a) + list(basis_b)
    rows = [[cols[k][i] for k in range(len(cols))] for i in range(3)]
    out = []
    for v in kernel(rows):
        vec = [CycloNum.zero(1)] * 3
        for k, b in enumerate(basis_a):
            for i in range(3):
                vec[i] = vec[i] + v[k] * b[i]
        if any(not x.is_zero() for x in vec):
            out.append(tuple(vec))
    # prune to an independent spanning set
    if not out:
        return []
    mat = [list(v) for v in out]
    keep = []
    for v in out:
        trial = keep + [list(v)]
        if rank([[row[i] for i in range(3)] for row in trial]) == len(trial):
            keep.append(list(v))
    return [tuple(v) for v in keep]


def _scalar_multiplicative_order(x: CycloNum, cap: int) -> int:
    acc = x
    for t in range(1, cap + 1):
        if acc == 1:
            return t
        acc = acc * x
    raise NotFiniteOrderError(f"scalar order exceeds cap {cap}")


def root_of_unity_eigenvalues(A: Mat3, cap: int = ORDER_CAP):
    """Eigenvalues of a finite-order matrix with their eigenspaces.

    Every eigenvalue is a root of unity: if p is the projective order then
    A^p = g I for a root of unity g of some order m, and the eigenvalues are
    exactly p-th roots of g, i.e. among the pm-th roots of unity.  Each of
    the p candidates is tested against the characteristic polynomial; roots
    get kernel-of-(A - lambda I) eigenspaces.
    """
    if A.det().is_zero():
        raise SingularMatrixError("eigen analysis needs an invertible matrix")
    # diagonal matrices: eigenvalues are the entries, eigenspaces coordinate
    if all(A.entries[k].is_zero() for k in (1, 2, 3, 5, 6, 7)):
        diag = [A.entries[0], A.entries[4], A.entries[8]]
        seen = []
        for d in diag:
            if d not in seen:
                seen.append(d)
        out = []
        for lam in seen:
            basis = []
            for i, d in enumerate(diag):
                if d == lam:
                    v = [CycloNum.zero(A.n)] * 3
                    v[i] = CycloNum.one(A.n)
                    basis.append(tuple(v))
            out.append((lam, Subspace(len(basis), tuple(basis))))
        return out
    p = A.projective_order(cap)
    acc = A
    for _ in range(p - 1):
        acc = acc @ A
    g = acc.entries[0]
    m = _scalar_multiplicative_order(g, cap)
    e = next(j for j in range(m) if g == zeta(m, j))
    pm = p * m
    L = math.lcm(A.n, pm)
    Am = A.embed(L)
    cp = Am.char_poly()
    out = []
    total = 0
    for i in range(p):
        lam = zeta(pm, (e + i * m) % pm).embed(L)
        if cp.evaluate(lam).is_zero():
            rows = [[Am[r, k] - (lam if r == k else CycloNum.zero(L))
                     for k in range(3)] for r in range(3)]
            basis = kernel(rows)
            sub = Subspace(len(basis), tuple(basis))
            out.append((lam, sub))
            total += sub.dimension
    if total != 3:
        raise ArithmeticError("eigenspace dimensions do not sum to 3")
    return out
