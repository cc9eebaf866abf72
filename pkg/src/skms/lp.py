"""Exact feasibility and linear programming.

Two solvers, both on :class:`~fractions.Fraction`:

* :func:`fm_solve` -- Fourier--Motzkin elimination with strict inequalities,
  returning a point that satisfies every strict constraint.  Meant for the
  low-dimensional systems (at most three unknowns) that cells and cones give.
* :func:`linprog` -- dense two-phase simplex with Bland's rule for systems with
  many unknowns (zonotope coefficient witnesses).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .linalg import clear_denominators, frac

GE, GT, EQ = ">=", ">", "="


@dataclass(frozen=True)
class Constraint:
    """``coeffs . x  rel  rhs`` with ``rel`` one of ``>=``, ``>``, ``=``."""

    coeffs: tuple
    rel: str
    rhs: Fraction

    @classmethod
    def make(cls, coeffs, rel, rhs=0) -> "Constraint":
        if rel not in (GE, GT, EQ):
            raise ValueError(f"unknown relation {rel!r}")
        return cls(tuple(frac(c) for c in coeffs), rel, frac(rhs))

    def holds(self, x: Sequence) -> bool:
        lhs = sum((a * b for a, b in zip(self.coeffs, x)), Fraction(0))
        if self.rel == GE:
            return lhs >= self.rhs
        if self.rel == GT:
            return lhs > self.rhs
        return lhs == self.rhs


def _normalize(coeffs, rhs, strict):
    """Scale so that the constraint has a canonical form (used for dedup)."""
    ints = clear_denominators(list(coeffs) + [rhs])
    g = reduce(gcd, (abs(a) for a in ints), 0) or 1
    ints = tuple(a // g for a in ints)
    return ints[:-1], ints[-1], strict


def _const_ok(rhs, strict) -> bool:
    # 0 >= rhs  or  0 > rhs
    return 0 > rhs if strict else 0 >= rhs


def fm_solve(constraints: Sequence[Constraint], nvars: int) -> tuple | None:
    """A point satisfying all constraints, or ``None`` if the system is infeasible.

    Equalities are eliminated by substitution first; the remaining
    inequalities go through Fourier--Motzkin.  Back-substitution takes the
    midpoint of each admissible interval, so strict constraints hold with
    slack.
    """
    eqs = [(list(c.coeffs), c.rhs) for c in constraints if c.rel == EQ]
    ineqs = [(list(c.coeffs), c.rhs, c.rel == GT) for c in constraints if c.rel != EQ]

    # substitution x_p = (rhs - sum_{j != p} a_j x_j) / a_p
    subs: list[tuple[int, list[Fraction], Fraction]] = []
    while eqs:
        coeffs, rhs = eqs.pop()
        p = next((j for j, a in enumerate(coeffs) if a != 0), None)
        if p is None:
            if rhs != 0:
                return None
            continue
        ap = coeffs[p]
        expr = [-a / ap if j != p else Fraction(0) for j, a in enumerate(coeffs)]
        const = rhs / ap
        subs.append((p, expr, const))

        def apply(cs, r):
            f = cs[p]
            if f == 0:
                return cs, r
            cs = [c + f * e for c, e in zip(cs, expr)]
            cs[p] = Fraction(0)
            return cs, r - f * const

        eqs = [apply(cs, r) for cs, r in eqs]
        ineqs = [(*apply(cs, r), s) for cs, r, s in ineqs]

    eliminated = {p for p, _, _ in subs}
    order = [j for j in range(nvars) if j not in eliminated]

    # stages[k] holds the system before eliminating order[k]
    stages = []
    system = ineqs
    for j in order:
        seen = {}
        for cs, r, s in system:
            if all(c == 0 for c in cs):
                if not _const_ok(r, s):
                    return None
                continue
            key = _normalize(cs, r, s)
            seen.setdefault(key, (cs, r, s))
        system = list(seen.values())
        stages.append(system)
        lower = [t for t in system if t[0][j] > 0]
        upper = [t for t in system if t[0][j] < 0]
        rest = [t for t in system if t[0][j] == 0]
        new = list(rest)
        for lc, lr, ls in lower:
            for uc, ur, us in upper:
                a, b = lc[j], -uc[j]
                cs = [b * x + a * y for x, y in zip(lc, uc)]
                cs[j] = Fraction(0)
                new.append((cs, b * lr + a * ur, ls or us))
        system = new
    for cs, r, s in system:
        if not _const_ok(r, s):
            return None

    x = [Fraction(0)] * nvars
    for j, stage in reversed(list(zip(order, stages))):
        lo = hi = None
        lo_strict = hi_strict = False
        for cs, r, s in stage:
            a = cs[j]
            if a == 0:
                continue
            rest = sum((c * x[i] for i, c in enumerate(cs) if i != j), Fraction(0))
            bound = (r - rest) / a
            if a > 0:
                if lo is None or bound > lo or (bound == lo and s):
                    lo, lo_strict = bound, s
            else:
                if hi is None or bound < hi or (bound == hi and s):
                    hi, hi_strict = bound, s
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and (lo_strict or hi_strict)):
                return None  # cannot happen for a consistent elimination
            x[j] = (lo + hi) / 2
        elif lo is not None:
            x[j] = lo + 1
        elif hi is not None:
            x[j] = hi - 1
        else:
            x[j] = Fraction(0)
    for p, expr, const in reversed(subs):
        x[p] = const + sum((e * x[i] for i, e in enumerate(expr)), Fraction(0))
    point = tuple(x)
    assert all(c.holds(point) for c in constraints), "FM back-substitution failed"
    return point


def feasible(constraints: Sequence[Constraint], nvars: int) -> bool:
    return fm_solve(constraints, nvars) is not None


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple | None = None
    value: Fraction | None = None


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), maximize=False) -> LPResult:
    """Optimize ``c . x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Dense tableau, two phases, Bland's rule (no cycling).
    """
    c = [frac(v) for v in c]
    n = len(c)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack_of: list[int | None] = []
    n_slack = len(A_ub)
    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        rows.append([frac(v) for v in a] + [Fraction(int(k == i)) for k in range(n_slack)])
        rhs.append(frac(b))
        slack_of.append(n + i)
    for a, b in zip(A_eq, b_eq):
        rows.append([frac(v) for v in a] + [Fraction(0)] * n_slack)
        rhs.append(frac(b))
        slack_of.append(None)
    m = len(rows)
    ntot = n + n_slack

    # make rhs nonnegative; a slack whose row was negated can't start basic
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            slack_of[i] = None

    basis = []
    art = []
    for i in range(m):
        if slack_of[i] is not None:
            basis.append(slack_of[i])
        else:
            basis.append(ntot + len(art))
            art.append(i)
    width = ntot + len(art)
    tab = [r + [Fraction(int(basis[i] == ntot + k)) for k in range(len(art))]
           for i, r in enumerate(rows)]

    def pivot(r: int, col: int) -> None:
        p = tab[r][col]
        tab[r] = [v / p for v in tab[r]]
        rhs[r] = rhs[r] / p
        for i in range(m):
            if i != r and tab[i][col] != 0:
                f = tab[i][col]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
                rhs[i] -= f * rhs[r]
        basis[r] = col

    def run(cost: list[Fraction], allowed: int) -> str:
        # minimize cost . x over columns < allowed
        while True:
            reduced = []
            for j in range(allowed):
                if j in basis:
                    continue
                rc = cost[j] - sum((cost[basis[i]] * tab[i][j] for i in range(m)), Fraction(0))
                if rc < 0:
                    reduced.append(j)
                    break  # Bland: smallest index
            if not reduced:
                return "optimal"
            col = reduced[0]
            best = None
            for i in range(m):
                if tab[i][col] > 0:
                    ratio = rhs[i] / tab[i][col]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            pivot(best[1], col)

    if art:
        cost1 = [Fraction(0)] * ntot + [Fraction(1)] * len(art)
        run(cost1, width)
        if sum((rhs[i] for i in range(m) if basis[i] >= ntot), Fraction(0)) != 0:
            return LPResult("infeasible")
        # drive remaining artificials out of the basis
        for i in range(m):
            if basis[i] >= ntot:
                col = next((j for j in range(ntot) if tab[i][j] != 0), None)
                if col is not None:
                    pivot(i, col)
    cost2 = [-v if maximize else v for v in c] + [Fraction(0)] * (width - n)
    status = run(cost2, ntot)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * width
    for i in range(m):
        x[basis[i]] = rhs[i]
    x = tuple(x[:n])
    value = sum((a * b for a, b in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value)
