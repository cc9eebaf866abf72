"""Exact rational linear algebra on tuples of :class:`~fractions.Fraction`.

Vectors are tuples, matrices are tuples of row tuples.  Nothing here ever
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


def frac(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def neg(u: Sequence) -> Vector:
    return tuple(-a for a in u)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def quad(g: Sequence[Sequence], u: Sequence, v: Sequence | None = None) -> Fraction:
    """Bilinear form ``u^T g v`` (``v`` defaults to ``u``)."""
    return dot(u, matvec(g, u if v is None else v))


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [[frac(x) for x in r] for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination after clearing denominators."""
    rows = [list(clear_denominators(r)) for r in m if not is_zero(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r, prev = 0, 1
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            rows[i] = [(piv * rows[i][j] - rows[i][c] * rows[r][j]) // prev
                       for j in range(ncols)]
        prev = piv
        r += 1
        if r == len(rows):
            break
    return r


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Rational basis of ``{x : m x = 0}``."""
    if not m:
        assert ncols is not None
        return list(identity(ncols))
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``m x = b`` or ``None`` if inconsistent."""
    if not m:
        return None
    ncols = len(m[0])
    aug = [list(r) + [frac(bi)] for r, bi in zip(m, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def clear_denominators(u: Sequence) -> tuple[int, ...]:
    """Integer vector positively proportional to ``u`` (not made primitive)."""
    d = reduce(lcm, (frac(a).denominator for a in u), 1)
    return tuple(int(frac(a) * d) for a in u)


def primitive(u: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the ray through ``u`` (gcd 1, same direction)."""
    ints = clear_denominators(u)
    g = reduce(gcd, (abs(a) for a in ints), 0)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(a // g for a in ints)


def line_key(u: Sequence) -> tuple[int, ...]:
    """Primitive integer representative of the line through ``u``.

    The first nonzero entry is made positive, so ``u`` and ``-u`` share a key.
    """
    p = primitive(u)
    for a in p:
        if a != 0:
            return p if a > 0 else tuple(-x for x in p)
    return p


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the lattice ``{x in Z^n : m x = 0}``.

    Unimodular column operations bring ``m`` to column echelon form; the
    transform columns sitting over zero columns span the kernel lattice, which
    is saturated by construction.
    """
    a = [list(map(int, r)) for r in m]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(i: int, j: int, q: int) -> None:
        # column j -= q * column i
        for row in a:
            row[j] -= q * row[i]
        for row in u:
            row[j] -= q * row[i]

    def swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    col = 0
    for row in range(len(a)):
        if col >= ncols:
            break
        while True:
            nz = [j for j in range(col, ncols) if a[row][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(a[row][j]))
            swap(col, piv)
            done = True
            for j in range(col + 1, ncols):
                if a[row][j] != 0:
                    colop(col, j, a[row][j] // a[row][col])
                    if a[row][j] != 0:
                        done = False
            if done:
                break
        if any(a[row][j] != 0 for j in range(col, ncols)):
            col += 1
    return [tuple(u[i][j] for i in range(ncols)) for j in range(col, ncols)]


def fmt(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(u: Sequence) -> list[str]:
    return [fmt(a) for a in u]


def unit_preimage(nu: Sequence[int]) -> tuple[int, ...]:
    """Integer vector ``s`` with ``nu . s = 1`` for a primitive integer vector ``nu``."""
    g, coeffs = 0, [0] * len(nu)
    for i, a in enumerate(nu):
        a = int(a)
        if a == 0:
            continue
        if g == 0:
            g, coeffs[i] = abs(a), (1 if a > 0 else -1)
            continue
        # extended Euclid on (g, a)
        old_r, r, old_s, s, old_t, t = g, a, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[i] = old_t
        g = old_r
    if g != 1:
        raise ValueError(f"{list(nu)} is not primitive")
    return tuple(coeffs)
