"""Polyhedral cones and face enumeration for affine arrangements (dimension <= 3).

Both the normal fans of zonotopes and the periodic arrangement of chambers are
enumerated with :func:`arrangement_faces`: flats are found by intersecting
hyperplanes, and the chambers inside each flat by a breadth-first walk that
flips one (restricted) hyperplane at a time, each candidate being decided by
exact Fourier--Motzkin elimination.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg as la
from .lp import EQ, GE, GT, Constraint, fm_solve

MAX_DIM = 3


class DimensionError(ValueError):
    pass


def check_dim(n: int) -> None:
    if n > MAX_DIM:
        raise DimensionError(
            f"ambient dimension {n} is not supported (exact enumeration is limited to n <= {MAX_DIM})")


@dataclass(frozen=True)
class Cone:
    """``{x : a.x >= 0 (a in ineqs), a.x = 0 (a in eqs), a.x > 0 (a in strict)}``."""

    dim: int
    ineqs: tuple = ()
    eqs: tuple = ()
    strict: tuple = ()

    @classmethod
    def make(cls, dim, ineqs=(), eqs=(), strict=()) -> "Cone":
        def norm(rows):
            keys = sorted({la.primitive(r) for r in rows if not la.is_zero(r)})
            return tuple(la.vec(k) for k in keys)
        eqs_n = tuple(sorted({la.line_key(r) for r in eqs if not la.is_zero(r)}))
        return cls(dim, norm(ineqs), tuple(la.vec(k) for k in eqs_n), norm(strict))

    def constraints(self) -> list[Constraint]:
        return ([Constraint(a, GE, Fraction(0)) for a in self.ineqs]
                + [Constraint(a, EQ, Fraction(0)) for a in self.eqs]
                + [Constraint(a, GT, Fraction(0)) for a in self.strict])

    def contains(self, x: Sequence) -> bool:
        return (all(la.dot(a, x) >= 0 for a in self.ineqs)
                and all(la.dot(a, x) == 0 for a in self.eqs)
                and all(la.dot(a, x) > 0 for a in self.strict))

    def closure(self) -> "Cone":
        return Cone.make(self.dim, self.ineqs + self.strict, self.eqs)

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.make(self.dim, self.ineqs + other.ineqs, self.eqs + other.eqs,
                         self.strict + other.strict)

    def is_empty(self) -> bool:
        if not self.strict:
            return False
        return fm_solve(self.constraints(), self.dim) is None

    def point(self) -> la.Vector | None:
        """Some point of the cone (a relative-interior one when strict is nonempty)."""
        return fm_solve(self.constraints(), self.dim)

    def implicit_equalities(self) -> list[la.Vector]:
        out = []
        for a in self.ineqs:
            probe = self.intersect(Cone(self.dim, strict=(a,)))
            if probe.is_empty():
                out.append(a)
        return out

    def relative_interior(self) -> "Cone":
        """Open cone: implicit equalities become equalities, the rest strict."""
        imp = self.implicit_equalities()
        rest = [a for a in self.ineqs if a not in imp]
        return Cone.make(self.dim, (), self.eqs + tuple(imp), rest)

    def lineality(self) -> list[la.Vector]:
        rows = list(self.ineqs) + list(self.eqs) + list(self.strict)
        return la.nullspace(rows, self.dim) if rows else list(la.identity(self.dim))

    def span_dim(self) -> int:
        rows = list(self.eqs) + self.implicit_equalities()
        return self.dim - la.rank(rows) if rows else self.dim

    def candidate_subspaces(self) -> list[list[la.Vector]]:
        """Linear spans ``{a.x = 0 : a in eqs + S}`` over subsets ``S`` of ineqs.

        Every face of the (closed) cone spans one of these.  Returned as
        nullspace bases, deduplicated.
        """
        seen = {}
        m = len(self.ineqs)
        for size in range(0, min(m, self.dim) + 1):
            for sub in combinations(range(m), size):
                rows = list(self.eqs) + [self.ineqs[i] for i in sub]
                if rows:
                    red, _ = la.rref(rows)
                    key = tuple(tuple(r) for r in red)
                else:
                    key = ()
                if key not in seen:
                    seen[key] = la.nullspace(rows, self.dim) if rows else list(la.identity(self.dim))
        return list(seen.values())

    def generators(self) -> tuple[list[tuple[int, ...]], list[la.Vector]]:
        """``(extreme rays, lineality basis)`` of the closed cone.

        Rays are primitive integer vectors of the pointed part
        ``cone cap lineality-complement``.
        """
        closed = self.closure()
        lin = closed.lineality()
        pointed = Cone.make(self.dim, closed.ineqs, closed.eqs + tuple(lin))
        rays = set()
        for basis in pointed.candidate_subspaces():
            if len(basis) != 1:
                continue
            r = basis[0]
            for cand in (r, la.neg(r)):
                if pointed.contains(cand):
                    rays.add(la.primitive(cand))
        return sorted(rays), lin


def project_onto_subspace(v: Sequence, basis: Sequence[Sequence], gram) -> la.Vector:
    """Gram-orthogonal projection of ``v`` onto ``span(basis)``."""
    n = len(v)
    if not basis:
        return la.zeros(n)
    nt = la.transpose(basis)  # columns = basis vectors
    gn = la.matmul(gram, nt)
    lhs = la.matmul(basis, gn)  # B^T G B
    rhs = la.matvec(basis, la.matvec(gram, v))
    coeffs = la.solve(lhs, rhs)
    assert coeffs is not None
    return la.matvec(nt, coeffs)


def project_cone(v: Sequence, cone: Cone, gram) -> la.Vector:
    """Exact gram-nearest point of the closed cone to ``v``.

    Projects onto the span of every candidate face and keeps the feasible
    candidate at minimal distance.
    """
    v = la.vec(v)
    closed = cone.closure()
    if closed.contains(v):
        return v
    best = None
    for basis in closed.candidate_subspaces():
        p = project_onto_subspace(v, basis, gram)
        if not closed.contains(p):
            continue
        d = la.sub(v, p)
        dist = la.quad(gram, d)
        if best is None or dist < best[0]:
            best = (dist, p)
    assert best is not None  # the apex candidate is always feasible
    return best[1]


# ---------------------------------------------------------------------------
# arrangements


@dataclass(frozen=True)
class RawFace:
    sign: tuple[int, ...]
    witness: la.Vector
    dim: int
    directions: tuple  # basis of the face's linear span (t-space vectors)


def _box_constraints(p0, basis, box) -> list[Constraint]:
    cons = []
    for i, (lo, hi) in enumerate(box):
        row = tuple(b[i] for b in basis)
        cons.append(Constraint(row, GT, lo - p0[i]))
        cons.append(Constraint(la.neg(row), GT, p0[i] - hi))
    return cons


def _generic_direction(normals: list[la.Vector], dim: int) -> la.Vector:
    m = 2
    while True:
        d = tuple(Fraction(m) ** i for i in range(dim))
        if all(la.dot(g, d) != 0 for g in normals):
            return d
        m += 1


def arrangement_faces(planes: Sequence[tuple[Sequence, Fraction]],
                      box: Sequence[tuple[Fraction, Fraction]]) -> list[RawFace]:
    """All faces of the arrangement ``{a.t = b}`` that meet the open box.

    ``planes`` is a list of ``(a, b)``; the sign of a face on a plane is
    ``sign(a.t - b)``.
    """
    k = len(box)
    check_dim(k)
    planes = [(la.vec(a), la.frac(b)) for a, b in planes]
    box = [(la.frac(lo), la.frac(hi)) for lo, hi in box]

    def containing(p0, basis) -> frozenset:
        out = set()
        for h, (a, b) in enumerate(planes):
            if la.dot(a, p0) == b and all(la.dot(a, d) == 0 for d in basis):
                out.add(h)
        return frozenset(out)

    full_basis = tuple(la.identity(k))
    origin = la.zeros(k)
    if fm_solve(_box_constraints(origin, full_basis, box), k) is None:
        return []
    flats = {containing(origin, full_basis): (origin, full_basis)}
    queue = deque([containing(origin, full_basis)])
    while queue:
        key = queue.popleft()
        p0, basis = flats[key]
        for h, (a, b) in enumerate(planes):
            if h in key:
                continue
            g = tuple(la.dot(a, d) for d in basis)
            if la.is_zero(g):
                continue
            c = b - la.dot(a, p0)
            u0 = la.solve((g,), (c,))
            sub = la.nullspace((g,))
            p1 = la.add(p0, la.matvec(la.transpose(basis), u0))
            b1 = tuple(la.matvec(la.transpose(basis), s) for s in sub)
            if fm_solve(_box_constraints(p1, b1, box), len(b1)) is None:
                continue
            key1 = containing(p1, b1)
            if key1 not in flats:
                flats[key1] = (p1, b1)
                queue.append(key1)

    faces = []
    for key, (p0, basis) in flats.items():
        faces.extend(_flat_chambers(planes, box, key, p0, basis))
    return faces


def _flat_chambers(planes, box, key, p0, basis) -> list[RawFace]:
    j = len(basis)
    bt = la.transpose(basis) if basis else ()

    def to_t(u):
        return la.add(p0, la.matvec(bt, u)) if j else p0

    def signs_at(t):
        return tuple(la.sign(la.dot(a, t) - b) for a, b in planes)

    if j == 0:
        return [RawFace(signs_at(p0), p0, 0, ())]

    # restricted planes grouped by the hyperplane they cut out of the flat
    groups: dict[tuple, list[tuple[int, int]]] = {}
    normals: dict[tuple, tuple[la.Vector, Fraction]] = {}
    for h, (a, b) in enumerate(planes):
        if h in key:
            continue
        g = tuple(la.dot(a, d) for d in basis)
        if la.is_zero(g):
            continue
        c = b - la.dot(a, p0)
        ints = la.clear_denominators(list(g) + [c])
        first = next(x for x in ints if x != 0)
        orient = 1 if first > 0 else -1
        gk = la.line_key(list(g) + [c])
        groups.setdefault(gk, []).append((h, orient))
        if gk not in normals:
            normals[gk] = (la.scale(orient, g), orient * c)
    gkeys = sorted(groups)
    box_cons = _box_constraints(p0, basis, box)

    start = fm_solve(box_cons, j)
    assert start is not None
    vals = [la.dot(normals[g][0], start) - normals[g][1] for g in gkeys]
    d = _generic_direction([normals[g][0] for g, v in zip(gkeys, vals) if v == 0], j)
    sig0 = tuple(la.sign(v) if v != 0 else la.sign(la.dot(normals[g][0], d))
                 for g, v in zip(gkeys, vals))

    def realize(sig):
        cons = list(box_cons)
        for s, g in zip(sig, gkeys):
            n, c = normals[g]
            cons.append(Constraint(la.scale(s, n), GT, s * c))
        return fm_solve(cons, j)

    w0 = realize(sig0)
    assert w0 is not None
    found = {sig0: w0}
    queue = deque([sig0])
    while queue:
        sig = queue.popleft()
        for i in range(len(sig)):
            nxt = sig[:i] + (-sig[i],) + sig[i + 1:]
            if nxt in found:
                continue
            w = realize(nxt)
            if w is not None:
                found[nxt] = w
                queue.append(nxt)
    out = []
    for sig, w in found.items():
        t = to_t(w)
        out.append(RawFace(signs_at(t), t, j, tuple(basis)))
    return out
