"""Windows of dominant weights and the inequality certificates built on them.

Everything here works with weights only: a window ``L_C`` is the set of
dominant lattice points of ``xi_C - rho_bar + Delta_0``; generators of the
excluded part of a decomposition are pairs ``(mu, lambda_mu)``; and each claim
(inclusion, orthogonality, termination of the peeling procedure, duality)
becomes a finite list of exact comparisons stored as evidence.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from . import linalg as la
from .arrangement import CellComplex, class_representatives
from .certificates import Certificate
from .geometry import Cone, arrangement_faces
from .maximizer import MaxRay, QValue, lambda_f, verify_antidominant
from .polyhedral import Zonotope, build_polytopes, sigma_cone
from .repspec import RepSpec
from .rootdata import RootDatum


class PreconditionError(ValueError):
    pass


def weight(v: Sequence) -> tuple:
    """Integral vectors as int tuples (keeps evidence compact and hashable)."""
    v = la.vec(v)
    return tuple(int(x) if x.denominator == 1 else x for x in v)


def dominant_points(d: RootDatum, pi: Zonotope) -> list[tuple]:
    return [p for p in pi.lattice_points() if d.is_dominant(p)]


def window_polytope(r: RepSpec, xi: Sequence) -> Zonotope:
    return build_polytopes(r, xi)[2]


def window_at(r: RepSpec, xi: Sequence) -> tuple:
    """``L`` for the window polytope translated by ``xi``."""
    return tuple(dominant_points(r.datum, window_polytope(r, xi)))


@dataclass(frozen=True)
class WindowSet:
    cell: str
    weights: tuple
    independent: bool  # same set at every sample point of the cell


def window(cc: CellComplex, cid: str) -> WindowSet:
    r = cc.arrangement.repspec
    cell = cc[cid]
    base = window_at(r, cc.embed(cell.witness))
    same = all(window_at(r, cc.embed(t)) == base for t in cell.samples[1:])
    return WindowSet(cid, base, same)


# ---------------------------------------------------------------------------
# one window polytope with one direction


def _require_fixed(d: RootDatum, eps) -> la.Vector:
    eps = la.vec(eps)
    if la.is_zero(eps):
        raise PreconditionError("epsilon must be nonzero")
    if any(la.matvec(d.reflection(i), eps) != eps for i in range(len(d.simple_roots))):
        raise PreconditionError("epsilon is not fixed by the Weyl group")
    return eps


def pi_epsilon(pi: Zonotope, eps: Sequence, d: RootDatum) -> tuple[Callable, list, list]:
    """``(membership test for Pi_eps, L_eps, L)``.

    ``chi`` lies in ``Pi_eps`` iff ``chi`` is in ``Pi`` and ``chi - kappa eps``
    stays in ``Pi`` for some ``kappa > 0``: the admissible ``kappa`` form an
    interval starting at 0, so this only asks every facet through ``chi`` to
    have outward normal pairing nonnegatively with ``eps``.
    """
    eps = _require_fixed(d, eps)

    def member(chi) -> bool:
        chi = la.vec(chi)
        if not pi.contains(chi):
            return False
        return all(la.dot(nu, eps) >= 0 for nu in pi.tight_facets(chi))

    big = dominant_points(d, pi)
    return member, [p for p in big if member(p)], big


class Side:
    """Cached data for ``Pi = xi - rho_bar + Delta_0`` and a direction ``eps``."""

    def __init__(self, r: RepSpec, xi: Sequence, eps: Sequence):
        self.r = r
        self.d = r.datum
        self.xi = la.vec(xi)
        self.eps = _require_fixed(self.d, eps)
        self.pi = window_polytope(r, self.xi)
        self.member, self.l_eps, self.big = pi_epsilon(self.pi, self.eps, self.d)
        self._lam: dict = {}

    @property
    def excluded(self) -> list:
        keep = set(self.l_eps)
        return [p for p in self.big if p not in keep]

    def lam(self, chi) -> MaxRay | QValue:
        chi = weight(chi)
        if chi not in self._lam:
            self._lam[chi] = lambda_f(self.pi, chi, self.eps, self.d.gram)
        return self._lam[chi]

    def q(self, chi) -> QValue:
        res = self.lam(chi)
        return res.q if isinstance(res, MaxRay) else res

    def generators(self) -> list["InducedGenerator"]:
        out = []
        for mu in self.excluded:
            res = self.lam(mu)
            if not isinstance(res, MaxRay):
                raise PreconditionError(f"excluded weight {mu} has q = -inf")
            lam = res.direction
            out.append(InducedGenerator(mu, lam, weight(self.r.beta_lambda(lam)),
                                        self.r.d_lambda(lam), res.q))
        return out


@dataclass(frozen=True)
class InducedGenerator:
    mu: tuple
    lam: tuple
    beta_lambda: tuple
    d_lambda: int
    q: QValue

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "lambda": list(self.lam),
                "beta_lambda": list(self.beta_lambda), "d_lambda": self.d_lambda,
                "q": self.q.to_json()}


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class Term:
    zeta: tuple | None  # None when the dotted-dominant representative is undefined
    subset: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.subset)


def complex_terms(r: RepSpec, chi: Sequence, lam: Sequence) -> list[Term]:
    """One term per nonempty subset of ``positive_indices(lam)`` (undefined ones kept as ``None``)."""
    chi = la.vec(chi)
    if not r.datum.is_dominant(chi):
        raise PreconditionError(f"{la.fmt_vec(chi)} is not dominant")
    pos = r.positive_indices(lam)
    out = []
    for size in range(1, len(pos) + 1):
        for sub in combinations(pos, size):
            total = chi
            for i in sub:
                total = la.add(total, la.vec(r.weights[i]))
            z = r.datum.dominant_dotted(total)
            out.append(Term(None if z is None else weight(z), sub))
    return out


def _antidominant_cone(d: RootDatum) -> Cone:
    return Cone.make(d.rank, [la.neg(la.vec(a)) for a in d.simple_roots])


def mainprop_lambdas(r: RepSpec, pi: Zonotope, chi) -> list[tuple]:
    """One functional for every sign pattern ``{i : <lam, beta_i> > 0}`` realised on
    the closed normal cone of ``chi`` intersected with the antidominant cone."""
    d = r.datum
    closed, _ = sigma_cone(pi, chi)
    k = closed.intersect(_antidominant_cone(d))
    normals = {la.line_key(b) for b in r.weights if any(b)}
    normals |= {la.line_key(a) for a in k.ineqs + k.eqs}
    faces = arrangement_faces([(n, 0) for n in sorted(normals)], [(-1, 1)] * d.rank)
    seen = {}
    for f in faces:
        if k.contains(f.witness):
            lam = la.primitive(f.witness)
            key = r.positive_indices(lam)
            if key not in seen or lam < seen[key]:
                seen[key] = lam
    return [seen[k] for k in sorted(seen)]


def _mainprop_for(side: Side, chi) -> tuple[bool, dict]:
    r, d = side.r, side.d
    res = side.lam(chi)
    item: dict = {"chi": list(chi)}
    if not isinstance(res, MaxRay):
        item["q"] = "-inf"
        item["in_L_eps"] = side.member(chi)
        return item["in_L_eps"], item
    lam = res.direction
    item["lambda"] = list(lam)
    item["q"] = res.q.to_json()
    anti = d.is_antidominant(lam)
    item["antidominant"] = anti
    ok = anti and not side.member(chi)

    outside = []
    lams = mainprop_lambdas(r, side.pi, chi)
    for mu_lam in lams + [lam]:
        for t in complex_terms(r, chi, mu_lam):
            if t.zeta is not None and not side.pi.contains(t.zeta):
                outside.append({"lambda": list(mu_lam), "subset": list(t.subset),
                                "zeta": list(t.zeta)})
    item["lambdas_tested"] = len(lams) + 1
    item["terms_in_pi"] = not outside
    if outside:
        item["outside"] = outside
    ok &= not outside

    drops = []
    for t in complex_terms(r, chi, lam):
        if t.zeta is None:
            drops.append(list(t.subset))
            continue
        if t.zeta == tuple(chi) or not side.pi.contains(t.zeta):
            continue
        qz = side.q(t.zeta)
        if not qz < res.q:
            ok = False
            item.setdefault("q_violations", []).append(
                {"zeta": list(t.zeta), "q": qz.to_json()})
    item["q_decreases"] = "q_violations" not in item
    if drops:
        item["dropped_subsets"] = drops
    return ok, item


def verify_mainprop(pi_or_side, eps=None, r: RepSpec | None = None) -> Certificate:
    """Antidominance of ``lambda_chi``, containment of complex terms, and decrease of q,
    for every dominant ``chi`` of the window."""
    side = pi_or_side if isinstance(pi_or_side, Side) else _side_from_pi(pi_or_side, eps, r)
    if not side.d.gram_is_invariant():
        raise PreconditionError("gram form is not Weyl invariant")
    ok, evidence = True, []
    for chi in side.big:
        good, item = _mainprop_for(side, chi)
        ok &= good
        evidence.append(item)
    return Certificate.build("mainprop", ok, evidence)


def _side_from_pi(pi: Zonotope, eps, r: RepSpec) -> Side:
    xi = la.add(pi.center, r.datum.rho_bar)
    side = Side(r, xi, eps)
    if side.pi.canonical() != pi.canonical():
        raise PreconditionError("polytope is not a translate of the window polytope")
    return side


def peel(pi_or_side, eps=None, r: RepSpec | None = None) -> Certificate:
    """Expansion DAG from the excluded weights down to weights with ``q = -inf``."""
    side = pi_or_side if isinstance(pi_or_side, Side) else _side_from_pi(pi_or_side, eps, r)
    sources = side.excluded
    edges, qs = [], {}
    ok = True
    problems = []
    stack = list(sources)
    expanded = set()
    while stack:
        chi = stack.pop()
        if chi in expanded:
            continue
        expanded.add(chi)
        res = side.lam(chi)
        qs[chi] = res.q if isinstance(res, MaxRay) else res
        if not isinstance(res, MaxRay):
            if not side.member(chi):
                ok = False
                problems.append({"leaf_not_in_L_eps": list(chi)})
            continue
        targets = sorted({t.zeta for t in complex_terms(side.r, chi, res.direction)
                          if t.zeta is not None and t.zeta != chi})
        for z in targets:
            if not side.pi.contains(z):
                ok = False
                problems.append({"term_outside": [list(chi), list(z)]})
                continue
            qz = side.q(z)
            qs[z] = qz
            if not qz < qs[chi]:
                ok = False
                problems.append({"q_not_decreasing": [list(chi), list(z)]})
            edges.append((chi, z))
            stack.append(z)
    depth, acyclic = _longest_path(sources, edges)
    ok &= acyclic and depth <= len(side.big)
    evidence = [{"sources": [list(s) for s in sources],
                 "edges": sorted([list(a), list(b)] for a, b in edges),
                 "q": {",".join(str(x) for x in k): v.to_json() for k, v in sorted(qs.items())},
                 "depth": depth, "acyclic": acyclic, "window_size": len(side.big)}]
    evidence.extend(problems)
    return Certificate.build("generation_dag", ok, evidence)


def _longest_path(sources, edges) -> tuple[int, bool]:
    out: dict = {}
    for a, b in edges:
        out.setdefault(a, []).append(b)
    memo: dict = {}
    onstack: set = set()
    acyclic = True

    def depth(v) -> int:
        nonlocal acyclic
        if v in memo:
            return memo[v]
        if v in onstack:
            acyclic = False
            return 0
        onstack.add(v)
        best = 0
        for w in out.get(v, ()):
            best = max(best, 1 + depth(w))
        onstack.discard(v)
        memo[v] = best
        return best

    return max((depth(s) for s in sources), default=0), acyclic


# ---------------------------------------------------------------------------
# decompositions


def sod_side_certificate(side: Side, target: Sequence | None = None, label: str = "") -> Certificate:
    """Inclusion, generation and orthogonality for ``L = L_eps`` plus the excluded part."""
    children = []
    incl_ev = []
    ok = True
    if target is not None:
        target = list(target)
        big, l_eps = set(side.big), set(side.l_eps)
        sub = set(target) <= big
        eq = set(target) == l_eps
        ok = sub and eq
        item = {"target_subset_of_L": sub, "L_eps_equals_target": eq,
                "L": [list(p) for p in side.big], "L_eps": [list(p) for p in side.l_eps],
                "target": [list(p) for p in target]}
        if not eq:
            item["symmetric_difference"] = [list(p) for p in sorted(l_eps ^ set(target))]
        incl_ev.append(item)
    children.append(Certificate.build("window_inclusion", ok, incl_ev))
    children.append(verify_mainprop(side))
    children.append(peel(side))
    gens = side.generators()
    orth_ev, orth_ok = [], True
    for g in gens:
        base = la.dot(g.lam, g.mu)
        for z in side.l_eps:
            val = la.dot(g.lam, z)
            holds = val > base
            orth_ok &= holds
            orth_ev.append({"mu": list(g.mu), "lambda": list(g.lam), "zeta": list(z),
                            "lhs": val, "rhs": base, "holds": holds})
    children.append(Certificate.build("orthogonality", orth_ok, orth_ev))
    gen_ev = [{"epsilon": list(weight(side.eps)), "xi": list(weight(side.xi)),
               "generators": [g.to_json() for g in gens]}]
    return Certificate.build("orthogonality", True, gen_ev, children, label=label or "sod")


def sod_certificate(cc: CellComplex, c: str, c_prime: str, xi_c=None, xi_cp=None) -> Certificate:
    """Decomposition of the window of ``c`` toward the larger cell ``c_prime``.

    ``xi_c`` and ``xi_cp`` (invariant-lattice coordinates) default to the witnesses.
    """
    if c == c_prime or not cc.leq(c, c_prime):
        raise PreconditionError(f"{c} is not a face of {c_prime}")
    tc = la.vec(xi_c) if xi_c is not None else cc[c].witness
    tp = la.vec(xi_cp) if xi_cp is not None else cc[c_prime].witness
    r = cc.arrangement.repspec
    eps = la.sub(cc.embed(tp), cc.embed(tc))
    side = Side(r, cc.embed(tc), eps)
    target = window_at(r, cc.embed(tp))
    return sod_side_certificate(side, target, label=f"sod {c} < {c_prime}")


def duality_weight(r: RepSpec, chi: Sequence, lam: Sequence) -> tuple[tuple, int]:
    """``(-2 rho_bar - chi - beta_lambda, d_lambda)``."""
    w = la.sub(la.sub(la.scale(-2, r.datum.rho_bar), la.vec(chi)), r.beta_lambda(lam))
    return weight(w), r.d_lambda(lam)


def verify_window_duality(cc: CellComplex, cid: str, xi=None) -> Certificate:
    """``-w0`` carries ``L_C`` onto the window at ``-xi_C``."""
    r = cc.arrangement.repspec
    t = la.vec(xi) if xi is not None else cc[cid].witness
    here = window_at(r, cc.embed(t))
    there = window_at(r, la.neg(cc.embed(t)))
    image = sorted(weight(r.datum.minus_w0(p)) for p in here)
    ok = image == sorted(there)
    neg = cc.locate(la.neg(t))
    ev = [{"cell": cid, "negated_cell": neg.id if neg else None,
           "pairs": [[list(p), list(weight(r.datum.minus_w0(p)))] for p in here],
           "L_negated": [list(p) for p in there], "bijective": ok}]
    return Certificate.build("duality_bijection", ok, ev, label=f"window duality {cid}")


def arrange_witnesses(cc: CellComplex, c: str, c1: str, c2: str):
    """Points ``x1 in C1``, ``x2 in C2`` with ``x1 + x2 = 2 xi_C``, or ``None``."""
    xc = cc[c].witness
    cands = [(la.sub(p, xc), False) for p in cc[c1].samples]
    cands += [(la.sub(p, xc), True) for p in cc[c2].samples]
    for u, flipped in cands:
        if flipped:
            u = la.neg(u)
        t = Fraction(1)
        for _ in range(64):
            a = la.add(xc, la.scale(t, u))
            b = la.sub(xc, la.scale(t, u))
            la_, lb = cc.locate(a), cc.locate(b)
            if la_ is not None and lb is not None and la_.id == c1 and lb.id == c2:
                return a, b
            t /= 2
    return None


def _face_lattice(pi: Zonotope, lam) -> list[tuple]:
    u = pi.min_value(lam)
    return [p for p in pi.lattice_points() if la.dot(lam, p) == u]


def verify_ddual(cc: CellComplex, c: str, c1: str, c2: str, arranged=None) -> Certificate:
    """The weight map ``chi -> -2 rho_bar - chi - beta_lambda`` matches the lattice points of
    the closed ``lambda``-faces at ``xi_C`` and ``-xi_C`` for every tested ``lambda``."""
    if arranged is None:
        arranged = arrange_witnesses(cc, c, c1, c2)
    if arranged is None:
        raise PreconditionError(f"collinearity of {c1}, {c}, {c2} is not certified")
    r = cc.arrangement.repspec
    d = r.datum
    x1, _ = arranged
    xi = cc.embed(cc[c].witness)
    eps = la.sub(cc.embed(x1), xi)
    here, there = Side(r, xi, eps), Side(r, la.neg(xi), eps)
    lams = set()
    anti = _antidominant_cone(d)
    for side in (here, there):
        for g in side.generators():
            lams.add(g.lam)
            closed, _ = sigma_cone(side.pi, g.mu)
            rays, _ = closed.intersect(anti).generators()
            lams.update(ray for ray in rays if la.dot(ray, eps) > 0)
    ok, ev = True, []
    for lam in sorted(lams):
        src = _face_lattice(here.pi, lam)
        dst = sorted(_face_lattice(there.pi, lam))
        image = sorted(duality_weight(r, p, lam)[0] for p in src)
        match = image == dst
        ok &= match
        ev.append({"lambda": list(lam), "d_lambda": r.d_lambda(lam),
                   "pairs": [[list(p), list(duality_weight(r, p, lam)[0])] for p in src],
                   "target": [list(p) for p in dst], "bijective": match})
    return Certificate.build("duality_bijection", ok, ev, label=f"ddual {c} < {c1}, {c2}")


def mutation_pair(cc: CellComplex, c: str, c1: str, c2: str) -> Certificate:
    for x in (c1, c2):
        if x == c or not cc.leq(c, x):
            raise PreconditionError(f"{c} is not a face of {x}")
    arranged = arrange_witnesses(cc, c, c1, c2)
    if arranged is None:
        raise PreconditionError(f"collinearity of {c1}, {c}, {c2} is not certified")
    x1, x2 = arranged
    xc = cc[c].witness
    children = [
        sod_certificate(cc, c, c1, xc, x1),
        sod_certificate(cc, c, c2, xc, x2),
        verify_ddual(cc, c, c1, c2, (x1, x2)),
        verify_ddual(cc, c, c2, c1, (x2, x1)),
        verify_window_duality(cc, c, xc),
        verify_window_duality(cc, c1, x1),
        verify_window_duality(cc, c2, x2),
    ]
    ev = [{"C": c, "C1": c1, "C2": c2, "xi_C": list(weight(xc)),
           "xi_C1": list(weight(x1)), "xi_C2": list(weight(x2))}]
    return Certificate.build("mutation_pair", True, ev, children, label=f"mutation {c1} | {c} | {c2}")


def mainprop_directions(cc: CellComplex, cid: str, eps: Sequence) -> list[tuple]:
    """``+-eps`` and the primitive directions from ``cid`` toward every larger cell,
    in invariant-lattice coordinates."""
    out = [la.primitive(eps), la.primitive(la.neg(la.vec(eps)))]
    w = cc[cid].witness
    for up in sorted(cc.upper[cid], key=cc._order):
        out.append(la.primitive(la.sub(cc[up].witness, w)))
    return list(dict.fromkeys(out))


def mainprop_sweep(cc: CellComplex, eps: Sequence | None = None, jobs: int = 1) -> Certificate:
    """Term containment and q-decrease checks, the peel DAG and maximizer antidominance
    for every class representative and every direction of :func:`mainprop_directions`."""
    r = cc.arrangement.repspec
    eps = la.vec(eps) if eps is not None else la.vec(cc.arrangement.basis[0])
    tasks = [(rep, e) for rep in class_representatives(cc)
             for e in mainprop_directions(cc, rep, eps)]

    def run(task):
        rep, e = task
        side = Side(r, cc.xi(rep), cc.embed(e))
        anti = [{"chi": list(chi), "antidominant": verify_antidominant(r.datum, side.pi, chi, side.eps)}
                for chi in side.big]
        anti_ok = all(a["antidominant"] is not False for a in anti)
        children = [verify_mainprop(side), peel(side),
                    Certificate.build("mainprop", anti_ok, anti, label="antidominance")]
        return Certificate.build("mainprop", True, [{"cell": rep, "direction": list(e)}], children,
                                 label=f"{rep} direction {list(e)}")
    return Certificate.build("mainprop", True, [{"tasks": len(tasks)}], _map(run, tasks, jobs),
                             label="mainprop")


# ---------------------------------------------------------------------------
# the full report


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _t_checks(cc: CellComplex, windows: dict) -> Certificate:
    r = cc.arrangement.repspec
    sides: dict = {}
    ok, ev = True, []
    done = set()
    for w in cc.walks:
        eps = cc.embed(w.direction)
        for j in range(len(w.cells) - 1):
            a, b = w.cells[j], w.cells[j + 1]
            if not cc.leq(a, b):
                continue  # the step goes down: nothing to check
            skey = (a, b, w.direction)
            if skey not in sides:
                sides[skey] = Side(r, cc.embed(w.points[j]), eps).generators()
            gens = sides[skey]
            for k in range(j + 1, len(w.cells)):
                end = w.cells[k]
                if (skey, end) in done:
                    continue
                done.add((skey, end))
                bad = []
                for g in gens:
                    base = la.dot(g.lam, g.mu)
                    for mu in windows[end]:
                        if not la.dot(g.lam, mu) > base:
                            bad.append({"chi": list(g.mu), "lambda": list(g.lam), "mu": list(mu)})
                ok &= not bad
                item = {"step": [a, b], "direction": list(w.direction), "end": end,
                        "generators": [[list(g.mu), list(g.lam)] for g in gens],
                        "end_window": [list(m) for m in windows[end]], "holds": not bad}
                if bad:
                    item["violations"] = bad
                ev.append(item)
    return Certificate.build("orthogonality", ok, ev, label="(T) perpendicularity along walks")


def schober_report(cc: CellComplex, r: RepSpec | None = None, jobs: int = 1,
                   windows: dict | None = None) -> Certificate:
    """(M) window inclusions, (I) mutation pairs, (T) walk inequalities, and equivariance.

    ``windows`` may override the computed ``L_C`` (used for fault injection).
    """
    from .arrangement import s_c

    r = r or cc.arrangement.repspec
    ws = {c.id: window(cc, c.id) for c in cc.cells}
    if windows is None:
        windows = {cid: w.weights for cid, w in ws.items()}

    # (M)
    m_ok, m_ev = True, []
    for c in cc.cells:
        for lo in sorted(cc.lower[c.id], key=cc._order):
            inc = set(windows[c.id]) <= set(windows[lo])
            m_ok &= inc
            item = {"upper": c.id, "lower": lo, "holds": inc}
            if not inc:
                item["missing"] = [list(p) for p in sorted(set(windows[c.id]) - set(windows[lo]))]
            m_ev.append(item)
    m_cert = Certificate.build("window_inclusion", m_ok, m_ev, label="(M) window inclusions")
    indep = [s_c(cc, c.id)[1] for c in cc.cells]
    indep_cert = Certificate.build("witness_independence", all(w.independent for w in ws.values()),
                                   [], indep, label="window independence of witness")

    # (I)
    pairs = cc.facet_pairs()
    i_children = _map(lambda p: mutation_pair(cc, p[1], p[0], p[2]), pairs, jobs)
    i_cert = Certificate.build("mutation_pair", True, [{"pairs": [list(p) for p in pairs]}],
                               i_children, label="(I) mutation pairs")

    # (T)
    t_cert = _t_checks(cc, windows)

    # equivariance
    e_ok, e_ev = True, []
    for src, m, dst in cc.translations:
        shift = weight(cc.embed(m))
        moved = sorted(weight(la.add(p, shift)) for p in windows[src])
        holds = moved == sorted(windows[dst])
        e_ok &= holds
        if not holds:
            e_ev.append({"cell": src, "m": list(m), "image": dst, "holds": False})
    e_ev.insert(0, {"translations_checked": len(cc.translations)})
    e_cert = Certificate.build("equivariance", e_ok, e_ev, label="translation equivariance")

    summary = [{"cells": len(cc.cells), "classes": len(cc.classes),
                "class_dims": {str(k): v for k, v in cc.class_dims().items()},
                "representatives": class_representatives(cc),
                "walks": len(cc.walks), "facet_pairs": len(pairs)}]
    return Certificate.build("schober_MIT", True, summary,
                             [m_cert, indep_cert, i_cert, t_cert, e_cert], label="schober report")
