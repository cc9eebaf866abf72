"""Weight data of the representation and the lambda-dependent quantities built on it."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .rootdata import RootDatum


class RepSpecError(ValueError):
    pass


@dataclass(frozen=True)
class RepSpec:
    datum: RootDatum
    weights: tuple[tuple[int, ...], ...]
    quasi_symmetric: bool
    spanning: bool
    unimodular: bool

    @property
    def dim_g_over_b(self) -> int:
        return self.datum.dim_g_over_b

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def diagnostics(self) -> dict[str, bool]:
        return {"quasi_symmetric": self.quasi_symmetric,
                "spanning": self.spanning,
                "unimodular": self.unimodular}

    def require_usable(self) -> None:
        """Raise unless the spec is quasi-symmetric and spanning."""
        bad = [k for k in ("quasi_symmetric", "spanning") if not getattr(self, k)]
        if bad:
            raise RepSpecError("representation is not " + " and not ".join(
                b.replace("_", "-") for b in bad))

    def positive_indices(self, lam: Sequence) -> tuple[int, ...]:
        """Indices ``i`` (0-based) with ``<lam, beta_i> > 0``."""
        return tuple(i for i, b in enumerate(self.weights) if la.dot(lam, b) > 0)

    def beta_lambda(self, lam: Sequence) -> la.Vector:
        total = la.zeros(self.rank)
        for i in self.positive_indices(lam):
            total = la.add(total, la.vec(self.weights[i]))
        return total

    def d_lambda(self, lam: Sequence) -> int:
        return len(self.positive_indices(lam)) - self.dim_g_over_b


def lines(weights: Sequence[Sequence[int]]) -> dict[tuple[int, ...], list[int]]:
    """Group weight indices by the line through the origin they span.

    Zero weights are collected under the all-zero key.
    """
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, b in enumerate(weights):
        groups[la.line_key(b)].append(i)
    return dict(groups)


def validate(datum: RootDatum, weights: Sequence[Sequence[int]]) -> RepSpec:
    n = datum.rank
    ws = []
    for b in weights:
        b = tuple(b)
        if len(b) != n:
            raise RepSpecError(f"weight {list(b)} has dimension {len(b)}, expected {n}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in b):
            raise RepSpecError(f"weight {list(b)} must have integer entries")
        ws.append(b)
    ws = tuple(ws)
    qs = True
    for key, idx in lines(ws).items():
        total = [sum(ws[i][c] for i in idx) for c in range(n)]
        if any(total):
            qs = False
    spanning = la.rank([la.vec(b) for b in ws]) == n if ws else False
    unimodular = not any(sum(b[c] for b in ws) for c in range(n))
    return RepSpec(datum, ws, qs, spanning, unimodular)


def line_sums(r: RepSpec) -> dict[tuple[int, ...], tuple[Fraction, ...]]:
    """Per-line weight sums; all zero exactly when ``r`` is quasi-symmetric."""
    out = {}
    for key, idx in lines(r.weights).items():
        total = la.zeros(r.rank)
        for i in idx:
            total = la.add(total, la.vec(r.weights[i]))
        out[key] = total
    return out
