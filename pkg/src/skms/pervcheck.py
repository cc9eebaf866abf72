"""Checker for linear-algebra diagrams on the face poset of an arrangement.

A diagram assigns a vector space ``E_C`` to every cell and, for every pair
``C' <= C``, maps ``gamma: E_C' -> E_C`` and ``delta: E_C -> E_C'``.  The
checks are: functoriality of both families, ``gamma delta = id`` (m),
invertibility of ``phi`` across facets (i), and ``phi_13 = phi_23 phi_12`` on
collinear triples (t), where ``phi_12 = gamma_{C'2} delta_{1C'}`` for any
common lower face ``C'``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import linalg as la
from .certificates import Certificate


class DiagramError(ValueError):
    pass


def _zero(rows: int, cols: int) -> la.Matrix:
    return tuple(la.zeros(cols) for _ in range(rows))


def _shape(m) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def _mul(a, b, rows: int, cols: int) -> la.Matrix:
    """``a b`` with explicit result shape (handles zero-dimensional spaces)."""
    if not a or not b or not a[0]:
        return _zero(rows, cols)
    return la.matmul(a, b)


@dataclass
class PervDiagram:
    cells: list[str]
    dims: dict[str, int]
    lower: dict[str, frozenset]  # strict lower sets (transitively closed)
    gamma: dict[tuple[str, str], la.Matrix]  # (C', C): E_C' -> E_C
    delta: dict[tuple[str, str], la.Matrix]  # (C', C): E_C -> E_C'
    facet_pairs: list = field(default_factory=list)  # (C1, C, C2)
    triples: list = field(default_factory=list)  # (C1, C2, C3, C0)

    def __post_init__(self):
        if not self.cells:
            raise DiagramError("the poset is empty")
        for (lo, hi) in set(self.gamma) | set(self.delta):
            if lo not in self.lower.get(hi, ()):
                raise DiagramError(f"map given for {lo} -> {hi} but {lo} is not below {hi}")
        for hi in self.cells:
            for lo in self.lower[hi]:
                for name, maps, shape in (("gamma", self.gamma, (self.dims[hi], self.dims[lo])),
                                          ("delta", self.delta, (self.dims[lo], self.dims[hi]))):
                    if (lo, hi) not in maps:
                        raise DiagramError(f"{name} missing for {lo} <= {hi}")
                    m = la.mat(maps[(lo, hi)])
                    if shape[0] == 0 or shape[1] == 0:
                        m = _zero(*shape)
                    elif _shape(m) != shape:
                        raise DiagramError(
                            f"{name} for {lo} <= {hi} has shape {_shape(m)}, expected {shape}")
                    maps[(lo, hi)] = m

    # -- construction -----------------------------------------------------
    @classmethod
    def from_complex(cls, cc, dims, gamma, delta) -> "PervDiagram":
        return cls([c.id for c in cc.cells], dict(dims), dict(cc.lower), dict(gamma),
                   dict(delta), list(cc.facet_pairs()), list(cc.triples))

    @classmethod
    def constant(cls, cc, dim: int = 1) -> "PervDiagram":
        eye = la.identity(dim)
        maps = {(lo, c.id): eye for c in cc.cells for lo in cc.lower[c.id]}
        return cls.from_complex(cc, {c.id: dim for c in cc.cells}, maps, dict(maps))

    @classmethod
    def from_json(cls, data: dict) -> "PervDiagram":
        try:
            cells = [str(c) for c in data["cells"]]
            dims = {str(k): int(v) for k, v in data["dims"].items()}
            rel: dict[str, set] = {c: set() for c in cells}
            for lo, hi in data["poset"]:
                rel[str(hi)].add(str(lo))
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"malformed diagram: {exc}") from exc
        # transitive closure
        changed = True
        while changed:
            changed = False
            for c in cells:
                extra = set().union(*(rel[x] for x in rel[c])) - rel[c] if rel[c] else set()
                if extra:
                    rel[c] |= extra
                    changed = True

        def maps(key):
            out = {}
            for item in data.get(key, []):
                out[(str(item["lower"]), str(item["upper"]))] = la.mat(item["matrix"])
            return out
        return cls(cells, dims, {c: frozenset(v) for c, v in rel.items()}, maps("gamma"),
                   maps("delta"), [tuple(p) for p in data.get("facet_pairs", [])],
                   [tuple(t) for t in data.get("collinear_triples", [])])

    @classmethod
    def load(cls, path) -> "PervDiagram":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        def dump(maps):
            return [{"lower": lo, "upper": hi, "matrix": [la.fmt_vec(r) for r in m]}
                    for (lo, hi), m in sorted(maps.items())]
        return {"cells": self.cells, "dims": self.dims,
                "poset": sorted([lo, hi] for hi in self.cells for lo in self.lower[hi]),
                "gamma": dump(self.gamma), "delta": dump(self.delta),
                "facet_pairs": [list(p) for p in self.facet_pairs],
                "collinear_triples": [list(t) for t in self.triples]}

    # -- maps -------------------------------------------------------------
    def leq(self, a: str, b: str) -> bool:
        return a == b or a in self.lower[b]

    def g(self, lo: str, hi: str) -> la.Matrix:
        return la.identity(self.dims[hi]) if lo == hi else self.gamma[(lo, hi)]

    def d(self, lo: str, hi: str) -> la.Matrix:
        return la.identity(self.dims[hi]) if lo == hi else self.delta[(lo, hi)]

    def common_lower(self, a: str, b: str) -> list[str]:
        la_ = self.lower[a] | {a}
        lb = self.lower[b] | {b}
        return [c for c in self.cells if c in la_ and c in lb]

    def phi_via(self, c1: str, c2: str, via: str) -> la.Matrix:
        return _mul(self.g(via, c2), self.d(via, c1), self.dims[c2], self.dims[c1])


def phi(dg: PervDiagram, c1: str, c2: str) -> tuple[la.Matrix, bool]:
    """``phi_{C1 C2}`` and whether all common lower faces give the same matrix."""
    vias = dg.common_lower(c1, c2)
    if not vias:
        raise DiagramError(f"{c1} and {c2} have no common lower face")
    mats = [dg.phi_via(c1, c2, v) for v in vias]
    return mats[0], all(m == mats[0] for m in mats)


def _rank(m) -> int:
    return la.rank(m) if m and m[0] else 0


def check_axioms(dg: PervDiagram) -> Certificate:
    children = []

    # functoriality
    for name, fn, compose in (
            ("functoriality_gamma", dg.g,
             lambda a, b, c: _mul(dg.g(b, c), dg.g(a, b), dg.dims[c], dg.dims[a])),
            ("functoriality_delta", dg.d,
             lambda a, b, c: _mul(dg.d(a, b), dg.d(b, c), dg.dims[a], dg.dims[c]))):
        ok, ev = True, []
        for c in dg.cells:
            for b in dg.lower[c]:
                for a in dg.lower[b]:
                    holds = compose(a, b, c) == fn(a, c)
                    if not holds:
                        ok = False
                        ev.append({"chain": [a, b, c], "holds": False})
        ev.insert(0, {"chains_checked": sum(len(dg.lower[b]) for c in dg.cells for b in dg.lower[c])})
        children.append(Certificate.build("perverse_axioms", ok, ev, label=name))

    # (m)
    ok, ev = True, []
    for c in dg.cells:
        for lo in sorted(dg.lower[c]):
            prod_ = _mul(dg.g(lo, c), dg.d(lo, c), dg.dims[c], dg.dims[c])
            holds = prod_ == la.identity(dg.dims[c])
            inj = _rank(dg.d(lo, c)) == dg.dims[c]
            surj = _rank(dg.g(lo, c)) == dg.dims[c]
            if not (holds and inj and surj):
                ok = False
                ev.append({"lower": lo, "upper": c, "gamma_delta_is_id": holds,
                           "delta_injective": inj, "gamma_surjective": surj})
    children.append(Certificate.build("perverse_axioms", ok, ev, label="m"))

    # well-definedness of phi
    ok, ev = True, []
    pairs = sorted({(a, b) for a in dg.cells for b in dg.cells if a != b and dg.common_lower(a, b)})
    for a, b in pairs:
        _, same = phi(dg, a, b)
        if not same:
            ok = False
            ev.append({"pair": [a, b], "well_defined": False})
    children.append(Certificate.build("perverse_axioms", ok, ev, label="phi_well_defined"))

    # (i)
    ok, ev = True, []
    for c1, c, c2 in dg.facet_pairs:
        m, _ = phi(dg, c1, c2)
        inv = dg.dims[c1] == dg.dims[c2] and _rank(m) == dg.dims[c1]
        ok &= inv
        ev.append({"pair": [c1, c2], "facet": c, "invertible": inv,
                   "phi": [la.fmt_vec(r) for r in m]})
    children.append(Certificate.build("perverse_axioms", ok, ev, label="i"))

    # (t)
    ok, ev = True, []
    for c1, c2, c3, c0 in dg.triples:
        p13, _ = phi(dg, c1, c3)
        p12, _ = phi(dg, c1, c2)
        p23, _ = phi(dg, c2, c3)
        comp = _mul(p23, p12, dg.dims[c3], dg.dims[c1])
        holds = comp == p13
        if not holds:
            ok = False
            ev.append({"triple": [c1, c2, c3], "common_face": c0, "holds": False,
                       "phi_13": [la.fmt_vec(r) for r in p13],
                       "phi_23_phi_12": [la.fmt_vec(r) for r in comp]})
    ev.insert(0, {"triples_checked": len(dg.triples)})
    children.append(Certificate.build("perverse_axioms", ok, ev, label="t"))
    return Certificate.build("perverse_axioms", True, [], children, label="perverse diagram")


def verdicts(cert: Certificate) -> dict[str, bool]:
    return {c.label: c.passed for c in cert.children}


def small_matrices(rows: int, cols: int, entries: Sequence[int] = (-1, 0, 1)):
    """All ``rows x cols`` matrices over the given entries (for brute-force search)."""
    for vals in product(entries, repeat=rows * cols):
        yield tuple(tuple(la.frac(vals[r * cols + c]) for c in range(cols)) for r in range(rows))
