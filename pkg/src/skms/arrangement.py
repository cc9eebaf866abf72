"""The periodic arrangement on the Weyl-invariant subspace and its cells.

Points of the invariant subspace are written in coordinates ``t`` with
respect to a basis ``B`` of the invariant lattice, so the lattice becomes
``Z^k``.  Every facet hyperplane ``nu.x = h`` of the window polytope gives the
family ``nu.x = -h + m`` (``m`` an integer), which in ``t`` coordinates reads
``(B^T nu).t = m - h``.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import ceil, floor
from typing import Sequence

from . import linalg as la
from .certificates import Certificate
from .geometry import arrangement_faces, check_dim
from .polyhedral import Zonotope, build_polytopes, facet_hyperplanes
from .repspec import RepSpec
from .rootdata import RootDatum

log = logging.getLogger(__name__)

SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}


class ArrangementError(ValueError):
    pass


def invariant_subspace(d: RootDatum) -> list[tuple[int, ...]]:
    """Basis of the Weyl-fixed lattice (also a rational basis of the fixed subspace)."""
    return d.invariant_lattice()


def default_window(k: int) -> list[tuple[Fraction, Fraction]]:
    """Twice the unit cube of the invariant lattice with a margin of 1/2."""
    return [(Fraction(-1, 2), Fraction(5, 2))] * k


@dataclass(frozen=True)
class RestrictedHyperplane:
    """``normal . t = offset`` in invariant-lattice coordinates.

    ``contributors`` lists ``(facet index, m, s)``: the facet ``nu.x = h`` moved
    to ``nu.x = -h + m`` where ``s`` is an integer vector with ``nu.s = m``.
    """

    normal: tuple[int, ...]
    offset: Fraction
    contributors: tuple = ()

    def value(self, t: Sequence) -> Fraction:
        return la.dot(self.normal, t) - self.offset

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": la.fmt(self.offset),
                "contributors": [{"facet": i, "m": m, "translate": list(s)}
                                 for i, m, s in self.contributors]}


@dataclass(frozen=True)
class RestrictedArrangement:
    repspec: RepSpec
    basis: tuple[tuple[int, ...], ...]
    window: tuple[tuple[Fraction, Fraction], ...]
    facets: tuple  # ((nu, h), ...) of the window polytope at xi = 0
    hyperplanes: tuple[RestrictedHyperplane, ...]

    @property
    def datum(self) -> RootDatum:
        return self.repspec.datum

    @property
    def k(self) -> int:
        return len(self.basis)

    def embed(self, t: Sequence) -> la.Vector:
        """Point of ``X(T)_R`` with invariant-lattice coordinates ``t``."""
        return la.matvec(la.transpose(self.basis), t) if self.basis else la.zeros(self.repspec.rank)


def build_restricted_arrangement(r: RepSpec, window=None) -> RestrictedArrangement:
    r.require_usable()
    basis = tuple(invariant_subspace(r.datum))
    k = len(basis)
    if k == 0:
        raise ArrangementError("invariant subspace is zero-dimensional")
    check_dim(k)
    win = tuple((la.frac(lo), la.frac(hi)) for lo, hi in (window or default_window(k)))
    if len(win) != k:
        raise ArrangementError(f"window has {len(win)} coordinates, the invariant subspace has {k}")
    for lo, hi in win:
        if not lo < hi:
            raise ArrangementError("window intervals must have lo < hi")
        if hi - lo < 1:
            log.warning("window side %s is shorter than one lattice period", la.fmt(hi - lo))
    _, _, delta = build_polytopes(r, la.zeros(r.rank))
    facets = tuple(facet_hyperplanes(delta))
    merged: dict[tuple, list] = {}
    for idx, (nu, h) in enumerate(facets):
        a_raw = tuple(la.dot(b, nu) for b in basis)
        if la.is_zero(a_raw):
            if h.denominator == 1:
                raise ArrangementError(
                    f"a translate of facet hyperplane {idx} contains the whole invariant subspace")
            continue
        lo = sum((min(a * w[0], a * w[1]) for a, w in zip(a_raw, win)), Fraction(0))
        hi = sum((max(a * w[0], a * w[1]) for a, w in zip(a_raw, win)), Fraction(0))
        s1 = la.unit_preimage(nu)
        # m - h strictly between lo and hi
        for m in range(floor(lo + h) + 1, ceil(hi + h)):
            rhs = m - h
            normal = la.primitive(a_raw)
            if next(x for x in normal if x != 0) < 0:
                normal = tuple(-x for x in normal)
            scale = Fraction(la.dot(normal, a_raw), la.dot(a_raw, a_raw))  # normal = scale * a_raw
            offset = rhs * scale
            key = (normal, offset)
            merged.setdefault(key, []).append((idx, m, tuple(m * x for x in s1)))
    planes = tuple(RestrictedHyperplane(n, o, tuple(c)) for (n, o), c in sorted(merged.items()))
    return RestrictedArrangement(r, basis, win, facets, planes)


@dataclass(frozen=True)
class Cell:
    id: str
    sign: str
    witness: tuple
    dim: int
    samples: tuple  # witness first, then further interior points
    directions: tuple  # basis of the linear span of the cell's affine hull

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple({"-": -1, "0": 0, "+": 1}[c] for c in self.sign)

    def zero_set(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.sign) if c == "0")


@dataclass(frozen=True)
class Walk:
    """Cells met in order along the segment ``start -> end`` (``t`` coordinates)."""

    cells: tuple[str, ...]
    points: tuple  # one point of each cell on the segment
    direction: tuple[int, ...]  # primitive direction of the segment


@dataclass
class CellComplex:
    arrangement: RestrictedArrangement
    cells: list[Cell]
    seed: int = 0
    lower: dict = field(default_factory=dict)  # id -> frozenset of ids strictly below
    translations: list = field(default_factory=list)  # (id, m, id)
    classes: list = field(default_factory=list)
    walks: list = field(default_factory=list)
    triples: list = field(default_factory=list)  # (C1, C2, C3, C0)

    @cached_property
    def by_id(self) -> dict[str, Cell]:
        return {c.id: c for c in self.cells}

    @cached_property
    def by_sign(self) -> dict[str, Cell]:
        return {c.sign: c for c in self.cells}

    @cached_property
    def upper(self) -> dict[str, frozenset]:
        up: dict[str, set] = {c.id: set() for c in self.cells}
        for hi, lows in self.lower.items():
            for lo in lows:
                up[lo].add(hi)
        return {k: frozenset(v) for k, v in up.items()}

    @property
    def hyperplanes(self):
        return self.arrangement.hyperplanes

    @property
    def k(self) -> int:
        return self.arrangement.k

    def __getitem__(self, cid: str) -> Cell:
        return self.by_id[cid]

    def sign_at(self, t: Sequence) -> str:
        return "".join(SIGN_CHARS[la.sign(h.value(t))] for h in self.hyperplanes)

    def in_window(self, t: Sequence) -> bool:
        return all(lo < x < hi for x, (lo, hi) in zip(t, self.arrangement.window))

    def locate(self, t: Sequence) -> Cell | None:
        if not self.in_window(t):
            return None
        return self.by_sign.get(self.sign_at(t))

    def embed(self, t: Sequence) -> la.Vector:
        return self.arrangement.embed(t)

    def xi(self, cid: str) -> la.Vector:
        """The witness of a cell as a point of ``X(T)_R``."""
        return self.embed(self[cid].witness)

    def leq(self, a: str, b: str) -> bool:
        return a == b or a in self.lower[b]

    def common_lower(self, *ids: str) -> list[str]:
        sets = [self.lower[i] | {i} for i in ids]
        common = frozenset.intersection(*map(frozenset, sets))
        return sorted(common, key=self._order)

    def meet(self, *ids: str) -> str | None:
        """The largest common lower face, or ``None`` if there is none."""
        common = self.common_lower(*ids)
        if not common:
            return None
        top = max(self[c].dim for c in common)
        best = [c for c in common if self[c].dim == top]
        assert len(best) == 1, "common lower faces have no maximum"
        return best[0]

    def _order(self, cid: str):
        return self.index[cid]

    @cached_property
    def index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.cells)}

    def class_of(self, cid: str) -> int:
        for i, cls in enumerate(self.classes):
            if cid in cls:
                return i
        raise KeyError(cid)

    @cached_property
    def class_index(self) -> dict[str, int]:
        return {cid: i for i, cls in enumerate(self.classes) for cid in cls}

    def class_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for cls in self.classes:
            d = self[cls[0]].dim
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def hyperplane_classes(self) -> list[tuple]:
        """Hyperplanes up to lattice translation: ``(normal, offset mod 1)``."""
        keys = {(h.normal, h.offset - floor(h.offset)) for h in self.hyperplanes}
        return sorted(keys)

    def facet_pairs(self) -> list[tuple[str, str, str]]:
        """``(C1, C, C2)``: distinct same-dimension cells on one flat sharing the facet ``C``."""
        out = []
        for c in self.cells:
            ups = [u for u in self.upper[c.id] if self[u].dim == c.dim + 1]
            for i, a in enumerate(sorted(ups, key=self._order)):
                for b in sorted(ups, key=self._order)[i + 1:]:
                    if self[a].zero_set() == self[b].zero_set():
                        out.append((a, c.id, b))
        return out

    def negate_window_complex(self) -> "CellComplex":
        win = [(-hi, -lo) for lo, hi in self.arrangement.window]
        arr = build_restricted_arrangement(self.arrangement.repspec, win)
        return enumerate_cells(arr, seed=self.seed, walks=False)

    def to_json(self) -> dict:
        arr = self.arrangement
        return {
            "basis": [list(b) for b in arr.basis],
            "window": [[la.fmt(lo), la.fmt(hi)] for lo, hi in arr.window],
            "hyperplanes": [h.to_json() for h in arr.hyperplanes],
            "cells": [{"id": c.id, "sign": c.sign, "dim": c.dim,
                       "witness": la.fmt_vec(c.witness),
                       "point": la.fmt_vec(self.embed(c.witness))} for c in self.cells],
            "poset": [[lo, c.id] for c in self.cells
                      for lo in sorted(self.lower[c.id], key=self._order)],
            "translation_classes": self.classes,
            "class_dims": {str(k): v for k, v in self.class_dims().items()},
            "hyperplane_classes": [{"normal": list(n), "offset_mod_1": la.fmt(o)}
                                   for n, o in self.hyperplane_classes()],
            "collinear_triples": {"certification": "segment-certified",
                                  "triples": [list(t) for t in self.triples]},
        }


def _interior_samples(t0, directions, planes, signs, window, rng: random.Random, count=2):
    """Further random points of the cell through ``t0`` (moves inside its affine hull)."""
    if not directions:
        return []
    out = []
    for _ in range(count):
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in directions]
        if all(c == 0 for c in coeffs):
            coeffs[0] = Fraction(1)
        d = tuple(sum((c * v[i] for c, v in zip(coeffs, directions)), Fraction(0))
                  for i in range(len(t0)))
        smax = None
        for h, s in zip(planes, signs):
            if s == 0:
                continue
            rate = la.dot(h.normal, d) * s
            if rate < 0:
                lim = -(h.value(t0) * s) / rate
                smax = lim if smax is None else min(smax, lim)
        for x, di, (lo, hi) in zip(t0, d, window):
            if di > 0:
                lim = (hi - x) / di
            elif di < 0:
                lim = (lo - x) / di
            else:
                continue
            smax = lim if smax is None else min(smax, lim)
        frac = Fraction(rng.randint(1, 99), 100)
        out.append(la.add(t0, la.scale(smax * frac, d)))
    return out


def enumerate_cells(arr: RestrictedArrangement, seed: int = 0, walks: bool = True) -> CellComplex:
    """All cells meeting the open window, with poset, translation classes and walks."""
    planes = arr.hyperplanes
    raw = arrangement_faces([(h.normal, h.offset) for h in planes], arr.window)
    items = []
    for f in raw:
        sign = "".join(SIGN_CHARS[s] for s in f.sign)
        items.append((f.dim, f.sign, sign, f))
    items.sort(key=lambda x: (x[0], x[1]))
    cells = []
    for i, (dim, signs, sign, f) in enumerate(items):
        rng = random.Random(f"{seed}:{sign}")
        samples = [f.witness] + _interior_samples(f.witness, f.directions, planes, signs,
                                                  arr.window, rng)
        cells.append(Cell(f"c{i}", sign, f.witness, dim, tuple(samples), f.directions))
    cc = CellComplex(arr, cells, seed)

    for c in cells:
        lows = set()
        for o in cells:
            if o.id != c.id and o.dim < c.dim and all(
                    a == b or a == "0" for a, b in zip(o.sign, c.sign)):
                lows.add(o.id)
        cc.lower[c.id] = frozenset(lows)

    _translations(cc)
    if walks:
        _walks(cc)
    return cc


def _translations(cc: CellComplex) -> None:
    parent = {c.id: c.id for c in cc.cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    win = cc.arrangement.window
    for c in cc.cells:
        ranges = [range(floor(lo - x) + 1, ceil(hi - x)) for x, (lo, hi) in zip(c.witness, win)]
        for m in product(*ranges):
            if not any(m):
                continue
            target = cc.locate(la.add(c.witness, m))
            if target is None:
                continue
            cc.translations.append((c.id, m, target.id))
            a, b = find(c.id), find(target.id)
            if a != b:
                if cc.index[a] < cc.index[b]:
                    parent[b] = a
                else:
                    parent[a] = b
    groups: dict[str, list[str]] = {}
    for c in cc.cells:
        groups.setdefault(find(c.id), []).append(c.id)
    cc.classes = sorted(groups.values(), key=lambda g: cc.index[g[0]])


def walk_segment(cc: CellComplex, p1: Sequence, p3: Sequence) -> Walk:
    d = la.sub(p3, p1)
    params = {Fraction(0), Fraction(1)}
    for h in cc.hyperplanes:
        rate = la.dot(h.normal, d)
        if rate != 0:
            s = -h.value(p1) / rate
            if 0 < s < 1:
                params.add(s)
    ps = sorted(params)
    full = []
    for a, b in zip(ps, ps[1:]):
        full.extend([a, (a + b) / 2])
    full.append(ps[-1])
    seq_cells, seq_pts = [], []
    for s in full:
        pt = la.add(p1, la.scale(s, d))
        cell = cc.locate(pt)
        assert cell is not None
        if seq_cells and seq_cells[-1] == cell.id:
            continue
        seq_cells.append(cell.id)
        seq_pts.append(pt)
    return Walk(tuple(seq_cells), tuple(seq_pts), la.primitive(d))


def class_representatives(cc: CellComplex) -> list[str]:
    """One cell per translation class: the one whose witness is nearest the window centre."""
    mid = [(lo + hi) / 2 for lo, hi in cc.arrangement.window]

    def dist(cid):
        return max(abs(x - m) for x, m in zip(cc[cid].witness, mid))
    return [min(cls, key=lambda c: (dist(c), cc.index[c])) for cls in cc.classes]


def _walks(cc: CellComplex) -> None:
    """Segments from each class representative to every cell sharing a face with it.

    Segments join the two witnesses and, pairwise, the further sample points.
    Translates of these walks are covered by equivariance.
    """
    seen = {}
    triples = set()
    for rep in class_representatives(cc):
        c1 = cc[rep]
        star_lows = cc.lower[c1.id] | {c1.id}
        for c3 in cc.cells:
            if c3.id == c1.id or not (star_lows & (cc.lower[c3.id] | {c3.id})):
                continue
            for p1, p3 in zip(c1.samples, c3.samples):
                w = walk_segment(cc, p1, p3)
                key = (w.cells, w.direction)
                if key not in seen:
                    seen[key] = w
    cc.walks = [seen[k] for k in sorted(seen, key=lambda k: ([cc.index[c] for c in k[0]], k[1]))]
    for w in cc.walks:
        n = len(w.cells)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    trip = (w.cells[i], w.cells[j], w.cells[k])
                    c0 = cc.meet(*trip)
                    if c0 is not None:
                        triples.add(trip + (c0,))
    cc.triples = sorted(triples, key=lambda t: [cc.index[x] for x in t])


def collinear_triples(cc: CellComplex) -> list[tuple[str, str, str, str]]:
    """Segment-certified collinear triples ``(C1, C2, C3, C0)`` with ``C0`` their largest common face."""
    return list(cc.triples)


def s_c(cc: CellComplex, cid: str, delta: Zonotope | None = None) -> tuple[list, Certificate]:
    """Lattice points of ``xi + Delta`` for ``xi`` in the cell, with a witness-independence
    and monotonicity certificate."""
    arr = cc.arrangement
    if delta is None:
        _, _, delta = build_polytopes(arr.repspec, la.zeros(arr.repspec.rank))
    cell = cc[cid]

    def pts(t):
        return delta.translate(cc.embed(t)).lattice_points()

    base = pts(cell.witness)
    evidence = []
    ok = True
    for t in cell.samples[1:]:
        other = pts(t)
        same = other == base
        ok &= same
        evidence.append({"check": "witness", "point": la.fmt_vec(t), "agrees": same})
    base_set = set(base)
    for lo in sorted(cc.lower[cid], key=cc._order):
        below = set(pts(cc[lo].witness))
        inc = base_set <= below
        ok &= inc
        item = {"check": "inclusion", "lower": lo, "holds": inc}
        if not inc:
            item["missing"] = sorted(base_set - below)
        evidence.append(item)
    cert = Certificate.build("witness_independence", ok, evidence, label=cid)
    return base, cert
