"""Zonotopes, their faces and normal fans, and lattice points.

A zonotope is stored as ``center + sum_i [v_i, w_i]``.  Faces are described
by which end of each segment they are pinned to.  The normal fan lives in the
dual space: ``lambda`` is in the closed cone of a point ``f`` exactly when
``f`` minimizes ``lambda`` over the zonotope.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, floor
from typing import Sequence

from . import linalg as la
from .geometry import Cone, arrangement_faces, check_dim
from .lp import linprog
from .repspec import RepSpec

log = logging.getLogger(__name__)

LO, HI, FREE = "lo", "hi", "free"


class ZonotopeError(ValueError):
    pass


@dataclass(frozen=True)
class FaceDescriptor:
    """Face of a zonotope: each segment pinned at ``v`` (lo), at ``w`` (hi), or free."""

    signs: tuple[str, ...]
    support_value: Fraction | None = None


@dataclass(frozen=True)
class Zonotope:
    center: tuple
    generators: tuple  # ((v, w), ...)

    @classmethod
    def make(cls, center, generators) -> "Zonotope":
        gens = []
        for v, w in generators:
            v, w = la.vec(v), la.vec(w)
            if v == w:
                log.info("dropping zero-length generator at %s", la.fmt_vec(v))
                continue
            gens.append((v, w))
        return cls(la.vec(center), tuple(gens))

    @property
    def dim(self) -> int:
        return len(self.center)

    @cached_property
    def directions(self) -> tuple:
        return tuple(la.sub(w, v) for v, w in self.generators)

    @cached_property
    def affine_dim(self) -> int:
        return la.rank(self.directions) if self.directions else 0

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def translate(self, t: Sequence) -> "Zonotope":
        return Zonotope(la.add(self.center, la.vec(t)), self.generators)

    def transform(self, m: la.Matrix) -> "Zonotope":
        """Image under the linear map ``m``."""
        return Zonotope(la.matvec(m, self.center),
                        tuple((la.matvec(m, v), la.matvec(m, w)) for v, w in self.generators))

    def canonical(self) -> tuple:
        """A normal form: equal zonotopes (as sets) have equal normal forms."""
        center = self.center
        by_line: dict[tuple, la.Vector] = {}
        for (v, w), d in zip(self.generators, self.directions):
            key = la.line_key(d)
            if la.dot(d, key) < 0:
                v, d = w, la.neg(d)
            center = la.add(center, v)
            by_line[key] = la.add(by_line.get(key, la.zeros(self.dim)), d)
        return center, tuple(sorted(by_line.values()))

    # -- support and faces --------------------------------------------------
    def support(self, nu: Sequence) -> Fraction:
        """``max`` of ``nu`` over the zonotope."""
        return la.dot(nu, self.center) + sum(
            (max(la.dot(nu, v), la.dot(nu, w)) for v, w in self.generators), Fraction(0))

    def min_value(self, lam: Sequence) -> Fraction:
        """``u_lambda``: the minimum of ``lambda`` over the zonotope."""
        return la.dot(lam, self.center) + sum(
            (min(la.dot(lam, v), la.dot(lam, w)) for v, w in self.generators), Fraction(0))

    def face_dim(self, face: FaceDescriptor) -> int:
        free = [d for d, s in zip(self.directions, face.signs) if s == FREE]
        return la.rank(free) if free else 0

    def face_point(self, face: FaceDescriptor) -> la.Vector:
        """A point in the relative interior of the face."""
        p = self.center
        for (v, w), s in zip(self.generators, face.signs):
            p = la.add(p, v if s == LO else w if s == HI else la.scale(Fraction(1, 2), la.add(v, w)))
        return p

    @cached_property
    def facets(self) -> tuple:
        """Outward facet normals with bounds: ``((nu, h), ...)`` meaning ``nu.x <= h``."""
        if not self.full_dimensional:
            raise ZonotopeError("zonotope is not full-dimensional")
        n = self.dim
        check_dim(n)
        dirs = [d for d in self.directions]
        cands = set()
        if n == 1:
            cands = {(1,), (-1,)}
        elif n == 2:
            for d in dirs:
                p = la.primitive((-d[1], d[0]))
                cands.update({p, tuple(-x for x in p)})
        else:
            for d1, d2 in combinations(dirs, 2):
                c = (d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
                     d1[0] * d2[1] - d1[1] * d2[0])
                if la.is_zero(c):
                    continue
                p = la.primitive(c)
                cands.update({p, tuple(-x for x in p)})
        out = []
        for nu in sorted(cands):
            flat = [d for d in dirs if la.dot(nu, d) == 0]
            if (la.rank(flat) if flat else 0) == n - 1:
                out.append((nu, self.support(nu)))
        return tuple(out)

    def contains(self, x: Sequence) -> bool:
        x = la.vec(x)
        if self.full_dimensional:
            return all(la.dot(nu, x) <= h for nu, h in self.facets)
        return self.witness(x) is not None

    def witness(self, x: Sequence) -> la.Vector | None:
        """Coefficients ``a in [0,1]^d`` with ``x = center + sum(v_i + a_i (w_i - v_i))``."""
        d = len(self.generators)
        target = la.sub(la.vec(x), self.center)
        for v, _ in self.generators:
            target = la.sub(target, v)
        if d == 0:
            return () if la.is_zero(target) else None
        a_eq = [tuple(dd[r] for dd in self.directions) for r in range(self.dim)]
        a_ub = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
        res = linprog([0] * d, a_ub, [1] * d, a_eq, list(target))
        return res.x if res.status == "optimal" else None

    def tight_facets(self, x: Sequence) -> list[tuple]:
        return [nu for nu, h in self.facets if la.dot(nu, x) == h]

    @cached_property
    def bounding_box(self) -> tuple:
        lo, hi = list(self.center), list(self.center)
        for v, w in self.generators:
            for i in range(self.dim):
                lo[i] += min(v[i], w[i])
                hi[i] += max(v[i], w[i])
        return tuple(zip(lo, hi))

    def lattice_points(self) -> list[tuple[int, ...]]:
        ranges = [range(ceil(lo), floor(hi) + 1) for lo, hi in self.bounding_box]
        return sorted(p for p in product(*ranges) if self.contains(p))


def build_polytopes(r: RepSpec, xi: Sequence) -> tuple[Zonotope, Zonotope, Zonotope]:
    """``(Sigma-bar, Delta_0, xi - rho_bar + Delta_0)`` for the weights of ``r``."""
    if not r.spanning:
        raise ZonotopeError("weights do not span: the window polytope is not full-dimensional")
    n = r.rank
    xi = la.vec(xi)
    if len(xi) != n:
        raise ZonotopeError(f"shift has dimension {len(xi)}, expected {n}")
    zero = la.zeros(n)
    sigma = Zonotope.make(zero, [(la.neg(la.vec(b)), zero) for b in r.weights])
    half = [(la.scale(Fraction(-1, 2), la.vec(b)), zero) for b in r.weights]
    delta0 = Zonotope.make(zero, half)
    delta = Zonotope.make(la.sub(xi, r.datum.rho_bar), half)
    return sigma, delta0, delta


def face_of_functional(z: Zonotope, lam: Sequence) -> tuple[FaceDescriptor, Fraction]:
    """The face of ``z`` on which ``lam`` is minimal, and the minimum ``u_lambda``."""
    signs = []
    for v, w in z.generators:
        a, b = la.dot(lam, v), la.dot(lam, w)
        signs.append(LO if b > a else HI if b < a else FREE)
    u = z.min_value(lam)
    return FaceDescriptor(tuple(signs), u), u


def closure_membership(z: Zonotope, f: Sequence, lam: Sequence) -> bool:
    """Whether ``f`` lies in the closed face where ``lam`` is minimal."""
    f = la.vec(f)
    if not z.contains(f):
        raise ZonotopeError(f"point {la.fmt_vec(f)} is not in the zonotope")
    return la.dot(lam, f) == z.min_value(lam)


def sigma_cone(z: Zonotope, f: Sequence) -> tuple[Cone, Cone]:
    """``(closed, open)`` cone of functionals minimized at ``f``.

    Built from any coefficient witness of ``f``: a segment pinned at ``v``
    forces ``<lam, w - v> >= 0``, pinned at ``w`` forces ``<= 0`` and an
    interior coefficient forces ``= 0``.  Every witness yields the same cone.
    """
    f = la.vec(f)
    a = z.witness(f)
    if a is None:
        raise ZonotopeError(f"point {la.fmt_vec(f)} is not in the zonotope")
    ineqs, eqs = [], []
    for ai, d in zip(a, z.directions):
        if ai == 0:
            ineqs.append(d)
        elif ai == 1:
            ineqs.append(la.neg(d))
        else:
            eqs.append(d)
    closed = Cone.make(z.dim, ineqs, eqs)
    return closed, closed.relative_interior()


def sigma_cone_from_facets(z: Zonotope, f: Sequence) -> tuple[list, Cone]:
    """Independent route: the closed cone is generated by the inward normals of
    the facets through ``f``.  Returns ``(generators, cone)``."""
    gens = [la.neg(la.vec(nu)) for nu in z.tight_facets(la.vec(f))]
    n = z.dim
    if not gens:
        return [], Cone.make(n, (), la.identity(n))
    # H-representation of cone(gens) in dimension <= 3 via its dual
    dual = Cone.make(n, gens)
    rays, lin = dual.generators()
    ineqs = list(rays) + list(lin) + [la.neg(v) for v in lin]
    return gens, Cone.make(n, ineqs)


def normal_fan(z: Zonotope) -> list[tuple[FaceDescriptor, Cone]]:
    """Every face with its closed normal cone, in canonical order ``(dim, signs)``."""
    if not z.full_dimensional:
        raise ZonotopeError("normal fan requires a full-dimensional zonotope")
    n = z.dim
    check_dim(n)
    planes = sorted({la.line_key(d) for d in z.directions})
    cells = arrangement_faces([(p, 0) for p in planes], [(-1, 1)] * n)
    out = {}
    for c in cells:
        face, _ = face_of_functional(z, c.witness)
        key = FaceDescriptor(face.signs)
        if key not in out:
            closed, _ = sigma_cone(z, z.face_point(key))
            out[key] = closed
    return sorted(out.items(), key=lambda kv: (z.face_dim(kv[0]), kv[0].signs))


def lattice_points(z: Zonotope) -> list[tuple[int, ...]]:
    return z.lattice_points()


def facet_hyperplanes(z: Zonotope) -> list[tuple[tuple[int, ...], Fraction]]:
    """Affine hulls of the facets as ``(primitive normal, offset)`` with ``normal.x = offset``.

    Normals are oriented with first nonzero entry positive.
    """
    out = set()
    for nu, h in z.facets:
        key = la.line_key(nu)
        out.add((key, h if key == tuple(nu) else -h))
    return sorted(out)
