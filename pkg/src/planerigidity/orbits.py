"""Orbit enumeration on P^2, the complete small-orbit search, and the
general-position tests for point configurations.

The small-orbit search uses one uniform argument: a point whose orbit is
smaller than the group has a nontrivial stabilizer, hence is fixed by some
element of prime order, hence lies in that element's eigenvector geometry.
1-dimensional eigenspaces give candidate points; 2-dimensional ones give
pointwise-fixed lines, which contribute whole orbit families plus finitely
many exceptional members.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .cyclo import CycloNum, zeta, sqrt_candidates
from .errors import MethodInapplicableError, NotInvariantError, OrbitTooLargeError
from .linalg import Mat3, rank, root_of_unity_eigenvalues
from .projgroup import (GroupData, ProjElement, ProjLine, ProjPoint,
                        line_from_plane_basis, line_through)

# invariant conics of the standard monomial tetrahedral/octahedral action;
# family members meeting them are surfaced as exceptional orbits
def _special_conics():
    w = zeta(3)
    one = CycloNum.one(3)
    zero = CycloNum.zero(3)
    return (
        ("C1", (one, one, one, zero, zero, zero)),
        ("C2", (w, -(1 + w), one, zero, zero, zero)),
        ("C3", (w, one, -(1 + w), zero, zero, zero)),
    )


@dataclass(frozen=True)
class Orbit:
    points: tuple  # ProjPoint, deterministic order, points[0] is the min-key member

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def rep(self) -> ProjPoint:
        return self.points[0]

    def point_set(self):
        return frozenset(self.points)

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.points) + "}"


@dataclass(frozen=True)
class LineFamily:
    line: ProjLine
    line_orbit_size: int
    induced_p1_order: int
    exceptional_orbits: tuple  # Orbit

    @property
    def generic_orbit_size(self) -> int:
        return self.line_orbit_size * self.induced_p1_order


@dataclass(frozen=True)
class SmallOrbitReport:
    bound: int
    sporadic: tuple   # Orbit
    families: tuple   # LineFamily
    complete: bool
    note: str = ""


@dataclass(frozen=True)
class GenPosReport:
    ok: bool
    kind: str = ""            # "", "collinear", "conic", "singular_cubic"
    indices: tuple = ()
    singular_index: int = -1


# ---------------------------------------------------------------------------
# plain orbits

def _bounded_orbit_set(G: GroupData, start: ProjPoint, cap: int):
    """Set of orbit points, or None once the orbit exceeds cap."""
    gens = [ProjElement(g) for g in G.generators]
    seen = {start}
    queue = [start]
    while queue:
        p = queue.pop()
        for g in gens:
            q = g.apply(p)
            if q not in seen:
                if len(seen) >= cap:
                    return None
                seen.add(q)
                queue.append(q)
    return seen


def orbit(G: GroupData, point: ProjPoint, cap: int = 0) -> Orbit:
    """The G-orbit of a point, in canonical order: breadth-first from the
    minimal-key member, generators in sorted order."""
    cap = cap or G.proj_order
    raw = _bounded_orbit_set(G, point, cap)
    if raw is None:
        raise OrbitTooLargeError(f"orbit exceeds cap {cap}")
    start = min(raw, key=lambda p: p.key())
    gens = sorted((ProjElement(g) for g in G.generators), key=lambda e: e.key())
    out = [start]
    seen = {start}
    head = 0
    while head < len(out):
        p = out[head]
        head += 1
        for g in gens:
            q = g.apply(p)
            if q not in seen:
                seen.add(q)
                out.append(q)
    return Orbit(tuple(out))


def orbit_size_at_most(G: GroupData, point: ProjPoint, bound: int):
    """The orbit if its size is <= bound, else None (cheap early exit)."""
    raw = _bounded_orbit_set(G, point, bound)
    if raw is None:
        return None
    return orbit(G, point, cap=bound)


def line_orbit(G: GroupData, line: ProjLine):
    """Orbit of a line under the dual action, canonical order."""
    gens = sorted((ProjElement(g) for g in G.generators), key=lambda e: e.key())
    raw = {line}
    queue = [line]
    while queue:
        l = queue.pop()
        for g in gens:
            m = g.apply_line(l)
            if m not in raw:
                raw.add(m)
                queue.append(m)
    start = min(raw, key=lambda l: l.key())
    out = [start]
    seen = {start}
    head = 0
    while head < len(out):
        l = out[head]
        head += 1
        for g in gens:
            m = g.apply_line(l)
            if m not in seen:
                seen.add(m)
                out.append(m)
    return out


# ---------------------------------------------------------------------------
# general position (no 3 on a line, no 6 on a conic, no 8 on a cubic with a
# singular point among them)

def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    n = math.lcm(p.conductor, q.conductor, r.conductor)
    a = [c.embed(n) for c in p.coords]
    b = [c.embed(n) for c in q.coords]
    c = [x.embed(n) for x in r.coords]
    det = (a[0] * (b[1] * c[2] - b[2] * c[1])
           - a[1] * (b[0] * c[2] - b[2] * c[0])
           + a[2] * (b[0] * c[1] - b[1] * c[0]))
    return det.is_zero()


def _veronese_row(p: ProjPoint):
    x, y, z = p.coords
    return [x * x, y * y, z * z, x * y, x * z, y * z]


def six_on_conic(points) -> bool:
    points = list(points)
    if len(points) != 6 or len(set(points)) != 6:
        raise ValueError("need 6 distinct points")
    return rank([_veronese_row(p) for p in points]) < 6


_CUBIC_MONOMIALS = ((3, 0, 0), (0, 3, 0), (0, 0, 3), (2, 1, 0), (2, 0, 1),
                    (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2), (1, 1, 1))


def _monomial_value(p, exps):
    x, y, z = p
    out = CycloNum.one(1)
    for base, e in ((x, exps[0]), (y, exps[1]), (z, exps[2])):
        for _ in range(e):
            out = out * base
    return out


def _cubic_row(p: ProjPoint):
    return [_monomial_value(p.coords, m) for m in _CUBIC_MONOMIALS]


def _cubic_partial_rows(p: ProjPoint):
    rows = []
    for axis in range(3):
        row = []
        for m in _CUBIC_MONOMIALS:
            e = m[axis]
            if e == 0:
                row.append(CycloNum.zero(1))
            else:
                lower = list(m)
                lower[axis] -= 1
                row.append(_monomial_value(p.coords, tuple(lower)) * e)
        rows.append(row)
    return rows


def _singular_cubic_witness(points):
    """Index of a point at which some cubic through all 8 is singular, or -1."""
    points = list(points)
    for s in range(len(points)):
        rows = []
        for i, p in enumerate(points):
            if i != s:
                rows.append(_cubic_row(p))
        rows.extend(_cubic_partial_rows(points[s]))
        if rank(rows) < 10:
            return s
    return -1


def eight_on_singular_cubic(points) -> bool:
    points = list(points)
    if len(points) != 8 or len(set(points)) != 8:
        raise ValueError("need 8 distinct points")
    return _singular_cubic_witness(points) >= 0


def general_position(points) -> GenPosReport:
    points = list(points)
    n = len(points)
    if not 1 <= n <= 8:
        raise ValueError("general position is defined here for 1..8 points")
    if len(set(points)) != n:
        raise ValueError("points must be distinct")
    for idx in combinations(range(n), 3):
        if collinear(*(points[i] for i in idx)):
            return GenPosReport(False, "collinear", idx)
    if n >= 6:
        for idx in combinations(range(n), 6):
            if six_on_conic([points[i] for i in idx]):
                return GenPosReport(False, "conic", idx)
    if n == 8:
        s = _singular_cubic_witness(points)
        if s >= 0:
            return GenPosReport(False, "singular_cubic", tuple(range(8)), s)
    return GenPosReport(True)


def induced_permutation(g, points):
    """sigma with g(points[i]) = points[sigma[i]], exact."""
    el = g if isinstance(g, ProjElement) else ProjElement(g)
    index = {p: i for i, p in enumerate(points)}
    sigma = []
    for p in points:
        q = el.apply(p)
        if q not in index:
            raise NotInvariantError(f"{q} is not in the point set")
        sigma.append(index[q])
    return tuple(sigma)


# ---------------------------------------------------------------------------
# the complete small-orbit search

def _prime_order_subgroup_reps(G: GroupData):
    """One representative index per cyclic subgroup of prime projective order."""
    orders = [G.element_order(i) for i in range(G.proj_order)]

    def is_prime(t):
        if t < 2:
            return False
        return all(t % d for d in range(2, int(math.isqrt(t)) + 1))

    done = set()
    reps = []
    for i in range(1, G.proj_order):
        t = orders[i]
        if not is_prime(t) or i in done:
            continue
        members = {i}
        acc = G.reps[i]
        for _ in range(t - 2):
            acc = acc @ G.reps[i]
            members.add(G.index[ProjElement(acc)])
        if not (members & done):
            reps.append(i)
        done |= members
    return reps


def _line_plane_basis(line: ProjLine):
    """Two independent points spanning the line {v : l . v = 0}."""
    from .linalg import kernel
    basis = kernel([list(line.coords)])
    if len(basis) != 2:
        raise AssertionError("a line in P^2 has a 2-dimensional cone")
    return basis


def _coords_in_basis(v, p, q):
    """Solve v = a p + b q for vectors in C^3 (v known to be in the span)."""
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = p[i] * q[j] - p[j] * q[i]
        if not det.is_zero():
            di = det.inv()
            a = (v[i] * q[j] - v[j] * q[i]) * di
            b = (p[i] * v[j] - p[j] * v[i]) * di
            return a, b
    raise AssertionError("basis vectors are dependent")


def _induced_projective_2x2(G: GroupData, line: ProjLine, stab_indices):
    """Canonical 2x2 forms of the stabilizer acting on the line; returns
    (order of induced group, indices acting nontrivially)."""
    p, q = _line_plane_basis(line)
    forms = set()
    nontrivial = []
    for i in stab_indices:
        m = G.elements[i].matrix
        a1, b1 = _coords_in_basis(m.apply(p), p, q)
        a2, b2 = _coords_in_basis(m.apply(q), p, q)
        vec = (a1, a2, b1, b2)  # column-major 2x2
        pivot = next(c for c in vec if not c.is_zero())
        inv = pivot.inv()
        canon = tuple(c * inv for c in vec)
        forms.add(canon)
        one = CycloNum.one(1)
        zero = CycloNum.zero(1)
        if canon != (one, zero, zero, one):
            nontrivial.append(i)
    return len(forms), nontrivial


def _lines_intersection(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """The point where two distinct lines meet: cross product of the duals."""
    n = math.lcm(l1.coords[0].n, l2.coords[0].n)
    a = [c.embed(n) for c in l1.coords]
    b = [c.embed(n) for c in l2.coords]
    return ProjPoint([a[1] * b[2] - a[2] * b[1],
                      a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]])


def _conic_value(coeffs, v):
    x, y, z = v
    q0, q1, q2, q3, q4, q5 = coeffs
    return (q0 * x * x + q1 * y * y + q2 * z * z
            + q3 * x * y + q4 * x * z + q5 * y * z)


def _line_conic_points(line: ProjLine, coeffs):
    """Exact intersection of a line with a conic, when the restricted
    quadratic splits over a reachable cyclotomic field; else None."""
    p, q = _line_plane_basis(line)
    a = _conic_value(coeffs, p)
    c = _conic_value(coeffs, q)
    pq = tuple(x + y for x, y in zip(p, q))
    b = _conic_value(coeffs, pq) - a - c
    def point(s, t):
        v = tuple(s * x + t * y for x, y in zip(p, q))
        if all(x.is_zero() for x in v):
            return None
        return ProjPoint(v)
    one = CycloNum.one(1)
    if a.is_zero() and b.is_zero() and c.is_zero():
        return None  # line contained in the conic; not a finite point set
    if a.is_zero():
        pts = [point(one, CycloNum.zero(1))]
        if not (b.is_zero() and c.is_zero()):
            if not b.is_zero():
                pts.append(point(c, -b))
        return [pt for pt in pts if pt is not None]
    disc = b * b - 4 * a * c
    roots = sqrt_candidates(disc)
    if roots is None:
        return None
    out = []
    seen = set()
    for r in roots:
        pt = point(-b + r, 2 * a)
        if pt is not None and pt not in seen:
            seen.add(pt)
            out.append(pt)
    return out


def small_orbits(G: GroupData, bound: int, special_conics=None) -> SmallOrbitReport:
    """All orbits of size <= bound: sporadic orbits plus line families.

    Complete whenever bound < proj_order: a small orbit forces a nontrivial
    stabilizer, hence a fixing element of prime order, hence membership in
    that element's eigen geometry, all of which is scanned below.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    key = ("small_orbits", bound)
    if key in G._cache:
        return G._cache[key]
    if special_conics is None:
        special_conics = _special_conics()

    candidates = []
    cand_seen = set()
    fixed_lines = []
    line_seen = set()
    for i in _prime_order_subgroup_reps(G):
        for lam, sub in root_of_unity_eigenvalues(G.reps[i]):
            if sub.dimension == 1:
                pt = ProjPoint(sub.basis[0])
                if pt not in cand_seen:
                    cand_seen.add(pt)
                    candidates.append(pt)
            elif sub.dimension == 2:
                l = line_from_plane_basis(sub.basis)
                if l not in line_seen:
                    line_seen.add(l)
                    fixed_lines.append(l)

    sporadic = {}

    def add_orbit(o: Orbit):
        sporadic.setdefault(o.rep, o)

    for pt in candidates:
        o = orbit_size_at_most(G, pt, bound)
        if o is not None:
            add_orbit(o)

    families = []
    lines_done = set()
    for l in fixed_lines:
        if l in lines_done:
            continue
        lorb = line_orbit(G, l)
        lines_done |= set(lorb)
        rep_line = lorb[0]
        m = len(lorb)
        stab = [i for i in range(G.proj_order)
                if G.elements[i].apply_line(rep_line) == rep_line]
        h_ord, nontrivial = _induced_projective_2x2(G, rep_line, stab)
        # exceptional candidates: fixed points of the induced action come
        # from the 3x3 eigen geometry of the nontrivially-acting stabilizer
        exc_pts = []
        exc_seen = set()

        def add_candidate(pt):
            if pt is not None and rep_line.contains(pt) and pt not in exc_seen:
                exc_seen.add(pt)
                exc_pts.append(pt)

        for i in nontrivial:
            for lam, sub in root_of_unity_eigenvalues(G.reps[i]):
                if sub.dimension == 1:
                    add_candidate(ProjPoint(sub.basis[0]))
                elif sub.dimension == 2:
                    other = line_from_plane_basis(sub.basis)
                    if other != rep_line:
                        add_candidate(_lines_intersection(other, rep_line))
        for _, coeffs in special_conics:
            pts = _line_conic_points(rep_line, coeffs)
            if pts:
                for pt in pts:
                    add_candidate(pt)
        exc_orbits = {}
        for pt in exc_pts:
            o = orbit_size_at_most(G, pt, bound)
            if o is not None and o.rep not in sporadic:
                exc_orbits.setdefault(o.rep, o)
        exc_sorted = tuple(sorted(exc_orbits.values(),
                                  key=lambda o: (o.size, o.rep.key())))
        if m * h_ord <= bound:
            families.append(LineFamily(rep_line, m, h_ord, exc_sorted))
        else:
            for o in exc_sorted:
                add_orbit(o)

    complete = bound < G.proj_order
    note = ""
    if not complete:
        note = ("group order <= bound: every orbit is small; "
                "only eigen-candidate orbits are listed")
    report = SmallOrbitReport(
        bound=bound,
        sporadic=tuple(sorted(sporadic.values(), key=lambda o: (o.size, o.rep.key()))),
        families=tuple(sorted(families, key=lambda f: f.line.key())),
        complete=complete,
        note=note,
    )
    G._cache[key] = report
    return report


def eigen_orbit_sizes(G: GroupData, g1: ProjElement, g2: ProjElement):
    """Sizes of the orbits of the six eigen-points of two elements whose
    eigenspaces are all 1-dimensional."""
    sizes = []
    for g in (g1, g2):
        i = G.index.get(g)
        rep = G.reps[i] if i is not None else g.matrix
        eig = root_of_unity_eigenvalues(rep)
        if any(sub.dimension != 1 for _, sub in eig):
            raise MethodInapplicableError(
                "element has a repeated eigenvalue; use small_orbits instead")
        for _, sub in eig:
            sizes.append(orbit(G, ProjPoint(sub.basis[0])).size)
    return tuple(sorted(sizes))


def find_element_of_projective_order(G: GroupData, t: int) -> ProjElement:
    for i in range(G.proj_order):
        if G.element_order(i) == t:
            return G.elements[i]
    raise ValueError(f"no element of projective order {t}")
