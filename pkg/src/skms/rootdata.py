"""Root data: the character lattice, Weyl group, dominant cones and dotted action.

Weights live in ``X(T) = Z^n`` and coweights in ``Y(T) = Z^n`` with the
standard pairing.  A simple reflection acts on weights by
``x -> x - <coroot, x> root`` and on coweights by ``y -> y - <y, root> coroot``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg as la


class RootDatumError(ValueError):
    pass


UNDEFINED = None  # value of an undefined dotted-dominant representative


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    weyl_bound: int = 10**6
    # X(T) matrices of every Weyl group element, identity first
    elements: tuple = field(default=(), repr=False, compare=False)

    # -- group -------------------------------------------------------------
    @property
    def is_torus(self) -> bool:
        return not self.simple_roots

    def reflection(self, i: int) -> la.Matrix:
        """Matrix of the i-th simple reflection on X(T)."""
        a, c = self.simple_roots[i], self.simple_coroots[i]
        n = self.rank
        return tuple(tuple(Fraction(int(r == s) - a[r] * c[s]) for s in range(n))
                     for r in range(n))

    @property
    def weyl_order(self) -> int:
        return len(self.elements)

    def coweight_elements(self) -> tuple[la.Matrix, ...]:
        """Matrices of the contragredient action on Y(T) (same group, transposed)."""
        return tuple(la.transpose(m) for m in self.elements)

    @cached_property
    def w0(self) -> la.Matrix:
        """The unique element sending every simple root to a negative root."""
        for m in self.elements:
            if all(self.height(la.matvec(m, a)) < 0 for a in self.simple_roots):
                return m
        raise RootDatumError("no longest element found")  # pragma: no cover

    # -- roots -------------------------------------------------------------
    @cached_property
    def _height_functional(self) -> la.Vector:
        if self.is_torus:
            return la.zeros(self.rank)
        sol = la.solve(tuple(la.vec(a) for a in self.simple_roots),
                       (1,) * len(self.simple_roots))
        assert sol is not None
        return sol

    def height(self, root: Sequence) -> Fraction:
        """A linear functional that is 1 on every simple root."""
        return la.dot(self._height_functional, root)

    @cached_property
    def roots(self) -> tuple[tuple[Fraction, ...], ...]:
        found = set()
        for m in self.elements:
            for a in self.simple_roots:
                found.add(la.matvec(m, a))
        return tuple(sorted(found))

    @cached_property
    def positive_roots(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(r for r in self.roots if self.height(r) > 0)

    @cached_property
    def rho_bar(self) -> la.Vector:
        total = la.zeros(self.rank)
        for r in self.positive_roots:
            total = la.add(total, r)
        return la.scale(Fraction(1, 2), total)

    @property
    def dim_g_over_b(self) -> int:
        return len(self.positive_roots)

    # -- cones and actions -------------------------------------------------
    def is_dominant(self, chi: Sequence) -> bool:
        return all(la.dot(c, chi) >= 0 for c in self.simple_coroots)

    def is_antidominant(self, lam: Sequence) -> bool:
        return all(la.dot(lam, a) <= 0 for a in self.simple_roots)

    def dominant_representative(self, v: Sequence) -> la.Vector:
        """The dominant element of the plain Weyl orbit of ``v``."""
        v = la.vec(v)
        while True:
            for i, c in enumerate(self.simple_coroots):
                p = la.dot(c, v)
                if p < 0:
                    v = la.sub(v, la.scale(p, la.vec(self.simple_roots[i])))
                    break
            else:
                return v

    def dominant_dotted(self, chi: Sequence) -> la.Vector | None:
        """``chi^+ = w*chi`` when ``chi + rho_bar`` is regular, else ``None``."""
        v = self.dominant_representative(la.add(la.vec(chi), self.rho_bar))
        if any(la.dot(c, v) == 0 for c in self.simple_coroots):
            return UNDEFINED
        return la.sub(v, self.rho_bar)

    def dotted(self, w: la.Matrix, chi: Sequence) -> la.Vector:
        return la.sub(la.matvec(w, la.add(la.vec(chi), self.rho_bar)), self.rho_bar)

    def minus_w0(self, chi: Sequence) -> la.Vector:
        return la.neg(la.matvec(self.w0, la.vec(chi)))

    def weyl_orbit(self, v: Sequence, coweight: bool = False) -> frozenset:
        mats = self.coweight_elements() if coweight else self.elements
        v = la.vec(v)
        return frozenset(la.matvec(m, v) for m in mats)

    def stabilizer(self, v: Sequence, coweight: bool = False) -> list[la.Matrix]:
        mats = self.coweight_elements() if coweight else self.elements
        v = la.vec(v)
        return [m for m in mats if la.matvec(m, v) == v]

    def norm2(self, lam: Sequence) -> Fraction:
        """Squared gram norm of a coweight."""
        return la.quad(self.gram, la.vec(lam))

    def gram_is_invariant(self) -> bool:
        return all(la.matmul(la.matmul(la.transpose(s), self.gram), s) == self.gram
                   for s in self.coweight_elements())

    # -- invariants --------------------------------------------------------
    def invariant_lattice(self) -> list[tuple[int, ...]]:
        """Basis of ``X(T)^W`` as a sublattice of ``Z^n``."""
        rows = []
        for i in range(len(self.simple_roots)):
            s = self.reflection(i)
            rows.extend(tuple(int(s[r][c]) - int(r == c) for c in range(self.rank))
                        for r in range(self.rank))
        basis = la.integer_kernel(rows, self.rank)
        # canonical orientation: first nonzero entry positive, then sorted
        out = []
        for b in basis:
            first = next(x for x in b if x != 0)
            out.append(b if first > 0 else tuple(-x for x in b))
        return out


def _generate_group(gens: list[la.Matrix], n: int, bound: int) -> tuple[la.Matrix, ...]:
    ident = la.identity(n)
    seen = {ident: None}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = la.matmul(s, g)
            if h not in seen:
                if len(seen) >= bound:
                    raise RootDatumError(
                        f"Weyl group exceeds the enumeration bound of {bound} elements")
                seen[h] = None
                order.append(h)
                queue.append(h)
    return tuple(order)


def _int_vectors(vs, n: int, what: str) -> tuple[tuple[int, ...], ...]:
    out = []
    for v in vs:
        v = tuple(v)
        if len(v) != n:
            raise RootDatumError(f"{what} {v} has length {len(v)}, expected {n}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise RootDatumError(f"{what} {v} must have integer entries")
        out.append(v)
    return tuple(out)


def build_root_datum(spec: dict) -> RootDatum:
    """Construct and validate a :class:`RootDatum`.

    ``spec`` is ``{"torus": n}`` or ``{"rank": n, "simple_roots": [...],
    "simple_coroots": [...]}``; either form may carry ``"gram"`` (a matrix of
    rationals on coweights) and ``"weyl_bound"``.
    """
    bound = int(spec.get("weyl_bound", 10**6))
    if "torus" in spec:
        n = int(spec["torus"])
        roots: tuple = ()
        coroots: tuple = ()
    else:
        n = int(spec["rank"])
        roots = _int_vectors(spec.get("simple_roots", ()), n, "simple root")
        coroots = _int_vectors(spec.get("simple_coroots", ()), n, "simple coroot")
    if n < 1:
        raise RootDatumError("rank must be a positive integer")
    if len(roots) != len(coroots):
        raise RootDatumError("need exactly one simple coroot per simple root")

    k = len(roots)
    cartan = [[sum(c * a for c, a in zip(coroots[i], roots[j])) for j in range(k)]
              for i in range(k)]
    for i in range(k):
        if cartan[i][i] != 2:
            raise RootDatumError(
                f"pairing of coroot {i} with root {i} is {cartan[i][i]}, not 2: not a Cartan matrix")
        for j in range(k):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                raise RootDatumError(f"Cartan entry ({i},{j}) = {cartan[i][j]} is invalid")
    if k and la.rank([la.vec(a) for a in roots]) != k:
        raise RootDatumError("simple roots are linearly dependent")

    proto = RootDatum(n, roots, coroots, la.identity(n), bound)
    gens = [proto.reflection(i) for i in range(k)]
    elements = _generate_group(gens, n, bound)

    cow = [la.transpose(m) for m in elements]
    if spec.get("gram") is not None:
        gram = la.mat(spec["gram"])
        if len(gram) != n or any(len(r) != n for r in gram):
            raise RootDatumError(f"gram must be a {n}x{n} matrix")
        if gram != la.transpose(gram):
            raise RootDatumError("gram must be symmetric")
        if not _positive_definite(gram):
            raise RootDatumError("gram must be positive definite")
        for s in (la.transpose(g) for g in gens):
            if la.matmul(la.matmul(la.transpose(s), gram), s) != gram:
                raise RootDatumError("gram is not invariant under the Weyl group")
    else:
        total = [[Fraction(0)] * n for _ in range(n)]
        for m in cow:
            mtm = la.matmul(la.transpose(m), m)
            for r in range(n):
                for c in range(n):
                    total[r][c] += mtm[r][c]
        gram = tuple(tuple(x / len(cow) for x in row) for row in total)
    return RootDatum(n, roots, coroots, gram, bound, elements)


def _positive_definite(g: la.Matrix) -> bool:
    # Sylvester's criterion via exact leading minors
    n = len(g)
    for k in range(1, n + 1):
        sub = [list(r[:k]) for r in g[:k]]
        if _det(sub) <= 0:
            return False
    return True


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def torus(n: int) -> RootDatum:
    return build_root_datum({"torus": n})


def gl(n: int) -> RootDatum:
    """GL(n) with the standard simple roots ``e_i - e_{i+1}``."""
    roots = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        roots.append(r)
    return build_root_datum({"rank": n, "simple_roots": roots, "simple_coroots": roots})
