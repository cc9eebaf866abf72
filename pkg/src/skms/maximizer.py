"""The cone of functionals that see a point from the epsilon side, and its q-maximizer.

For a point ``f`` of a zonotope ``Z`` and a direction ``eps``, ``tau_f`` is
the open normal cone of ``f`` cut by ``<lam, eps> > 0``.  On its closure the
ratio ``q(lam) = <lam, eps> / |lam|`` has a unique maximizing ray, which is the
gram-nearest point of the closed cone to the gram-dual of ``eps``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from . import linalg as la
from .geometry import Cone, project_cone
from .polyhedral import Zonotope, sigma_cone
from .rootdata import RootDatum

log = logging.getLogger(__name__)

FINITE, NEG_INF = "finite", "neg_infinity"


class MaximizerDefect(RuntimeError):
    """An outcome the underlying theory rules out."""


@total_ordering
@dataclass(frozen=True)
class QValue:
    kind: str
    q_squared: Fraction | None = None

    @classmethod
    def neg_infinity(cls) -> "QValue":
        return cls(NEG_INF)

    @classmethod
    def finite(cls, q2) -> "QValue":
        q2 = la.frac(q2)
        if q2 <= 0:
            raise ValueError("finite q values are strictly positive")
        return cls(FINITE, q2)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def _key(self):
        return (0, Fraction(0)) if self.kind == NEG_INF else (1, self.q_squared)

    def __lt__(self, other: "QValue") -> bool:
        return self._key() < other._key()

    def to_json(self):
        return "-inf" if self.kind == NEG_INF else {"q_squared": la.fmt(self.q_squared)}


@dataclass(frozen=True)
class MaxRay:
    direction: tuple[int, ...]
    q: QValue


def q_squared(lam: Sequence, eps: Sequence, gram) -> Fraction:
    """``<lam, eps>^2 / |lam|^2``; meaningful as a q value only when the pairing is positive."""
    return la.dot(lam, eps) ** 2 / la.quad(gram, la.vec(lam))


def _check_eps(eps) -> la.Vector:
    eps = la.vec(eps)
    if la.is_zero(eps):
        raise ValueError("epsilon must be nonzero")
    return eps


def tau_cone(z: Zonotope, f: Sequence, eps: Sequence) -> Cone:
    """Open cone ``sigma_f cap {<lam, eps> > 0}``."""
    eps = _check_eps(eps)
    _, open_cone = sigma_cone(z, f)
    return open_cone.intersect(Cone(z.dim, strict=(eps,)))


def tau_is_empty(z: Zonotope, f: Sequence, eps: Sequence) -> bool:
    # the open half-space meets sigma_f iff it meets its closure
    eps = _check_eps(eps)
    closed, _ = sigma_cone(z, f)
    return closed.intersect(Cone(z.dim, strict=(eps,))).is_empty()


def tau_closure(z: Zonotope, f: Sequence, eps: Sequence) -> Cone:
    eps = _check_eps(eps)
    closed, _ = sigma_cone(z, f)
    return closed.intersect(Cone(z.dim, ineqs=(eps,)))


def lambda_f(z: Zonotope, f: Sequence, eps: Sequence, gram) -> MaxRay | QValue:
    """The maximizing ray of ``q`` on the closure of ``tau_f``, or ``-inf`` if ``tau_f`` is empty."""
    eps = _check_eps(eps)
    if tau_is_empty(z, f, eps):
        return QValue.neg_infinity()
    sharp = la.matvec(la.inverse(gram), eps)
    p = project_cone(sharp, tau_closure(z, f, eps), gram)
    if la.is_zero(p):
        raise MaximizerDefect(f"projection vanished at f={la.fmt_vec(f)} although tau_f is nonempty")
    ray = la.primitive(p)
    if la.dot(ray, eps) <= 0:
        raise MaximizerDefect("maximizing ray does not pair positively with epsilon")
    return MaxRay(ray, QValue.finite(q_squared(ray, eps, gram)))


def q_value(z: Zonotope, f: Sequence, eps: Sequence, gram) -> QValue:
    res = lambda_f(z, f, eps, gram)
    return res.q if isinstance(res, MaxRay) else res


def verify_concavity(lam1: Sequence, lam2: Sequence, eps: Sequence, gram,
                     samples: int | Sequence = 7) -> bool:
    """Strict concavity of ``q`` along the chord between two unit functionals.

    With ``|lam1| = |lam2| = 1`` the claim ``q(lam_t) > (1-t) q(lam1) + t q(lam2)``
    is equivalent to ``|lam_t|^2 < 1`` since the numerator is linear in ``t``.
    """
    lam1, lam2, eps = la.vec(lam1), la.vec(lam2), _check_eps(eps)
    if lam1 == lam2:
        raise ValueError("the two functionals must be distinct")
    for lam in (lam1, lam2):
        if la.quad(gram, lam) != 1:
            raise ValueError(f"{la.fmt_vec(lam)} is not on the unit sphere")
        if la.dot(lam, eps) <= 0:
            raise ValueError(f"{la.fmt_vec(lam)} does not pair positively with epsilon")
    ts = ([Fraction(k, samples + 1) for k in range(1, samples + 1)]
          if isinstance(samples, int) else [la.frac(t) for t in samples])
    for t in ts:
        if not 0 < t < 1:
            raise ValueError("sample parameters must lie in (0, 1)")
        lt = la.add(la.scale(1 - t, lam1), la.scale(t, lam2))
        if not la.quad(gram, lt) < 1:
            return False
    return True


def verify_antidominant(d: RootDatum, z: Zonotope, f: Sequence, eps: Sequence) -> bool | None:
    """Whether the maximizing ray at ``f`` is antidominant.

    Returns ``None`` (and logs why) when the gram form is not Weyl invariant,
    since the statement is only claimed in that case.  A point with empty
    ``tau_f`` passes vacuously.
    """
    if not d.gram_is_invariant():
        log.warning("antidominance check skipped: gram form is not Weyl invariant")
        return None
    res = lambda_f(z, f, eps, d.gram)
    if not isinstance(res, MaxRay):
        return True
    ok = d.is_antidominant(res.direction)
    if not ok:
        log.error("maximizing ray %s at %s is not antidominant", res.direction, la.fmt_vec(f))
    return ok
