"""Projective canonicalization and finite subgroup machinery for PGL(3,C).

Canonical forms scale the first nonzero coordinate (row-major for matrices)
to 1, which gives a unique representative per projective class over any exact
field.  Group closure is a breadth-first product sweep over canonical forms;
alongside each canonical element we keep a finite-order linear representative
so that eigenvector computations stay available.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cyclo import CycloNum
from .errors import GroupTooLargeError, NotFiniteOrderError, SingularMatrixError
from .linalg import Mat3, root_of_unity_eigenvalues, intersect_spans

GROUP_CAP = 10_000


def _canonical_vector(coords):
    coords = list(coords)
    pivot = next((c for c in coords if not c.is_zero()), None)
    if pivot is None:
        raise ValueError("zero vector has no projective class")
    if pivot == 1:
        return tuple(coords)
    inv = pivot.inv()
    return tuple(c * inv for c in coords)


class ProjPoint:
    """Point of P^2 with first nonzero coordinate scaled to 1."""

    __slots__ = ("coords", "_hash", "_key")

    def __init__(self, coords):
        coords = [c if isinstance(c, CycloNum) else CycloNum.rational(c) for c in coords]
        if len(coords) != 3:
            raise ValueError("a projective point needs 3 coordinates")
        n = 1
        for c in coords:
            n = math.lcm(n, c.n)
        self.coords = _canonical_vector(c.embed(n) for c in coords)
        self._hash = None
        self._key = None

    @property
    def conductor(self):
        return self.coords[0].n

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.coords))
        return self._hash

    def key(self) -> str:
        if self._key is None:
            self._key = str(self)
        return self._key

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"

    __repr__ = __str__


class ProjLine:
    """Line of P^2 by dual coordinates, canonicalized like a point."""

    __slots__ = ("coords", "_hash", "_key")

    def __init__(self, coords):
        coords = [c if isinstance(c, CycloNum) else CycloNum.rational(c) for c in coords]
        n = 1
        for c in coords:
            n = math.lcm(n, c.n)
        self.coords = _canonical_vector(c.embed(n) for c in coords)
        self._hash = None
        self._key = None

    def contains(self, p: ProjPoint) -> bool:
        s = self.coords[0] * p.coords[0] + self.coords[1] * p.coords[1] + self.coords[2] * p.coords[2]
        return s.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.coords))
        return self._hash

    def key(self) -> str:
        if self._key is None:
            self._key = str(self)
        return self._key

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"

    __repr__ = __str__


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    a, b = p.coords, q.coords
    n = math.lcm(p.conductor, q.conductor)
    a = [c.embed(n) for c in a]
    b = [c.embed(n) for c in b]
    return ProjLine([a[1] * b[2] - a[2] * b[1],
                     a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]])


def line_from_plane_basis(basis) -> ProjLine:
    """Dual coordinates of the projective line spanned by a 2-dim subspace."""
    if len(basis) != 2:
        raise ValueError("need a 2-dimensional subspace")
    return line_through(ProjPoint(basis[0]), ProjPoint(basis[1]))


class ProjElement:
    """Element of PGL(3,C): matrix scaled so the first nonzero entry is 1."""

    __slots__ = ("matrix", "_hash", "_key")

    def __init__(self, matrix: Mat3):
        pivot = next((e for e in matrix.entries if not e.is_zero()), None)
        if pivot is None:
            raise ValueError("zero matrix")
        if matrix.det().is_zero():
            raise SingularMatrixError("projective elements must be invertible")
        self.matrix = matrix if pivot == 1 else matrix.scale(pivot.inv())
        self._hash = None
        self._key = None

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.matrix.apply(p.coords))

    def apply_line(self, l: ProjLine) -> ProjLine:
        adj = self.matrix.adjugate()
        c = l.coords
        out = [c[0] * adj[0, j] + c[1] * adj[1, j] + c[2] * adj[2, j] for j in range(3)]
        return ProjLine(out)

    def __eq__(self, other):
        if not isinstance(other, ProjElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.matrix)
        return self._hash

    def key(self) -> str:
        if self._key is None:
            self._key = str(self.matrix)
        return self._key

    def __repr__(self):
        return f"ProjElement({self.matrix})"


def normalize_point(coords) -> ProjPoint:
    return ProjPoint(coords)


def normalize_element(matrix: Mat3) -> ProjElement:
    return ProjElement(matrix)


class GroupData:
    """A finite subgroup of PGL(3,C), fully enumerated.

    elements[i] is the canonical form, reps[i] a finite-order linear
    representative (products of the generators); elements[0] is the identity.
    """

    def __init__(self, conductor, generators, elements, reps):
        self.conductor = conductor
        self.generators = generators        # Mat3 list, common conductor
        self.elements = elements            # list of ProjElement
        self.reps = reps                    # list of Mat3, parallel
        self.proj_order = len(elements)
        self.index = {el: i for i, el in enumerate(elements)}
        self._cache = {}

    def gen_elements(self):
        seen = []
        for g in self.generators:
            el = ProjElement(g)
            if not el.is_identity() and el not in seen:
                seen.append(el)
        return seen

    def element_order(self, i: int) -> int:
        return self.reps[i].projective_order()

    def __len__(self):
        return self.proj_order

    def __repr__(self):
        return f"GroupData(order={self.proj_order}, conductor={self.conductor})"


def closure(generators, cap: int = GROUP_CAP) -> GroupData:
    """Breadth-first closure of the projective group generated by the given
    invertible finite-order matrices; deterministic element order."""
    if not generators:
        gens = [Mat3.identity()]
    else:
        n = 1
        for g in generators:
            n = math.lcm(n, g.n)
        gens = [g.embed(n) for g in generators]
    n = gens[0].n
    for g in gens:
        if g.det().is_zero():
            raise SingularMatrixError("generators must be invertible")
        g.order()  # raises NotFiniteOrderError on bad input
    gen_pairs = []
    seen_gens = set()
    for g in gens:
        el = ProjElement(g)
        if not el.is_identity() and el not in seen_gens:
            seen_gens.add(el)
            gen_pairs.append((el.key(), el, g))
    gen_pairs.sort(key=lambda t: t[0])

    identity = Mat3.identity(n)
    elements = [ProjElement(identity)]
    reps = [identity]
    index = {elements[0]: 0}
    head = 0
    while head < len(elements):
        rep = reps[head]
        head += 1
        for _, _, g in gen_pairs:
            prod = rep @ g
            el = ProjElement(prod)
            if el not in index:
                if len(elements) >= cap:
                    raise GroupTooLargeError(f"closure exceeds cap {cap}")
                index[el] = len(elements)
                elements.append(el)
                reps.append(prod)
    return GroupData(n, [g for _, _, g in gen_pairs] or [identity], elements, reps)


def sl_closure(generators, cap: int = GROUP_CAP):
    """Closure at the linear (matrix) level, no scalar identification."""
    n = 1
    for g in generators:
        n = math.lcm(n, g.n)
    gens = sorted({g.embed(n) for g in generators}, key=str)
    identity = Mat3.identity(n)
    elements = [identity]
    seen = {identity}
    head = 0
    while head < len(elements):
        m = elements[head]
        head += 1
        for g in gens:
            prod = m @ g
            if prod not in seen:
                if len(elements) >= cap:
                    raise GroupTooLargeError(f"linear closure exceeds cap {cap}")
                seen.add(prod)
                elements.append(prod)
    return elements


def element_order_histogram(G: GroupData) -> dict:
    hist = {}
    for i in range(G.proj_order):
        t = G.element_order(i)
        hist[t] = hist.get(t, 0) + 1
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class FixedLocus:
    points: tuple       # ProjPoint, pointwise fixed by the whole group
    lines: tuple        # ProjLine, pointwise fixed by the whole group
    whole_plane: bool

    def is_empty(self) -> bool:
        return not self.points and not self.lines and not self.whole_plane


def common_fixed_locus(G: GroupData) -> FixedLocus:
    """Fixed points and pointwise-fixed lines of the whole group, by
    intersecting one eigenspace choice per generator across all choices."""
    gens = [g for g in G.generators if not ProjElement(g).is_identity()]
    if not gens:
        return FixedLocus((), (), True)
    eigendata = [root_of_unity_eigenvalues(g) for g in gens]
    spans = [[sub.basis for _, sub in data] for data in eigendata]
    points, lines = set(), set()

    def recurse(current, depth):
        if not current:
            return
        if depth == len(spans):
            if len(current) == 1:
                points.add(ProjPoint(current[0]))
            elif len(current) == 2:
                lines.add(line_from_plane_basis(current))
            else:
                # whole space fixed by projectively nontrivial generators is
                # impossible; guarded by the generator filter above
                raise AssertionError("3-dim common eigenspace for nontrivial group")
            return
        for basis in spans[depth]:
            inter = intersect_spans(current, list(basis))
            if inter:
                recurse(inter, depth + 1)

    full = [(CycloNum.one(1), CycloNum.zero(1), CycloNum.zero(1)),
            (CycloNum.zero(1), CycloNum.one(1), CycloNum.zero(1)),
            (CycloNum.zero(1), CycloNum.zero(1), CycloNum.one(1))]
    recurse(full, 0)
    # points lying on a pointwise-fixed line are already fixed; keep both lists
    pts = sorted(points, key=lambda p: p.key())
    lns = sorted(lines, key=lambda l: l.key())
    return FixedLocus(tuple(pts), tuple(lns), False)


def conjugate_group(G: GroupData, M: Mat3) -> GroupData:
    """The group M G M^-1, re-closed over canonical forms."""
    if M.det().is_zero():
        raise SingularMatrixError("conjugating matrix must be invertible")
    Mi = M.inv()
    new_gens = [M @ g @ Mi for g in G.generators]
    return closure(new_gens, cap=max(GROUP_CAP, 2 * G.proj_order))


def groups_projectively_equal(G1: GroupData, G2: GroupData) -> bool:
    if G1.proj_order != G2.proj_order:
        return False
    return set(G1.elements) == set(G2.elements)
