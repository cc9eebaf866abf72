from fractions import Fraction

import pytest

from skms import linalg as la
from skms.maximizer import QValue
from skms.polyhedral import build_polytopes
from skms.schober import (PreconditionError, Side, Term, complex_terms, duality_weight,
                          mutation_pair, peel, pi_epsilon, schober_report, sod_certificate,
                          verify_ddual, verify_mainprop, verify_window_duality, window)
from conftest import d2_rep, gl2_rep

F = Fraction


def cell_at(cc, *t):
    return cc.locate(tuple(F(x) for x in t)).id


def test_windows(d2, gl2):
    assert window(d2, cell_at(d2, F(1, 2))).weights == ((0,), (1,))
    assert window(d2, cell_at(d2, 0)).weights == ((-1,), (0,), (1,))
    assert window(d2, cell_at(d2, F(-1, 4))).weights == ((-1,), (0,))
    assert window(gl2, cell_at(gl2, 1)).weights == ((1, 1),)


def test_pi_epsilon_d2():
    r = d2_rep()
    pi = build_polytopes(r, (0,))[2]
    member, l_eps, big = pi_epsilon(pi, (1,), r.datum)
    assert big == [(-1,), (0,), (1,)] and l_eps == [(0,), (1,)]
    assert member((1,)) and not member((-1,))
    _, l_eps, _ = pi_epsilon(pi, (-1,), r.datum)
    assert l_eps == [(-1,), (0,)]
    with pytest.raises(ValueError):
        pi_epsilon(pi, (0,), r.datum)


def test_epsilon_must_be_fixed():
    with pytest.raises(ValueError):
        Side(gl2_rep(), (0, 0), (1, 0))


def test_complex_terms_d2():
    terms = complex_terms(d2_rep(), (-1,), (1,))
    assert terms == [Term((0,), (2,)), Term((0,), (3,)), Term((1,), (2, 3))]
    assert [t.p for t in terms] == [1, 1, 2]
    assert complex_terms(d2_rep(), (-1,), (0,)) == []


def test_complex_terms_drop_singular_gl2():
    r = gl2_rep()
    # (0,0) + (0,1) + rho_bar = (1/2, 1/2) is singular
    terms = complex_terms(r, (0, 0), (-1, 1))
    assert any(t.zeta is None for t in terms)
    for t in terms:
        total = [sum(r.weights[i][k] for i in t.subset) for k in range(2)]
        shifted = [x + rho for x, rho in zip(total, r.datum.rho_bar)]
        # for GL(2) the shifted weight is singular exactly when its coordinates agree
        assert (t.zeta is None) == (shifted[0] == shifted[1])


def test_mainprop_and_peel_d2():
    side = Side(d2_rep(), (0,), (1,))
    cert = verify_mainprop(side)
    assert cert.passed
    first = cert.evidence[0]
    assert first["chi"] == [-1] and first["lambda"] == [1]
    dag = peel(side)
    assert dag.passed
    ev = dag.evidence[0]
    assert ev["depth"] == 1 and ev["sources"] == [[-1]]
    assert sorted(b for a, b in ev["edges"]) == [[0], [1]]
    mirror = Side(d2_rep(), (0,), (-1,))
    assert mirror.excluded == [(1,)] and verify_mainprop(mirror).passed


def test_peel_empty_when_nothing_excluded():
    side = Side(d2_rep(), (F(1, 2),), (1,))
    assert side.excluded == []
    ev = peel(side).evidence[0]
    assert ev["sources"] == [] and ev["depth"] == 0


def test_sod_d2(d2):
    zero, right, left = cell_at(d2, 0), cell_at(d2, F(1, 2)), cell_at(d2, F(-1, 4))
    cert = sod_certificate(d2, zero, right)
    assert cert.passed
    gens = cert.evidence[0]["generators"]
    assert [(g["mu"], g["lambda"]) for g in gens] == [([-1], [1])]
    mirror = sod_certificate(d2, zero, left)
    assert [(g["mu"], g["lambda"]) for g in mirror.evidence[0]["generators"]] == [([1], [-1])]
    with pytest.raises(PreconditionError):
        sod_certificate(d2, right, zero)


def test_sod_reports_symmetric_difference(d2):
    zero, right = cell_at(d2, 0), cell_at(d2, F(1, 2))
    cert = sod_certificate(d2, zero, right, xi_cp=(F(3, 2),))
    assert not cert.passed
    inc = cert.children[0].evidence[0]
    assert inc["symmetric_difference"] == [[0], [2]]


def test_duality_weight_examples():
    assert duality_weight(d2_rep(), (-1,), (1,)) == ((-1,), 2)
    assert duality_weight(d2_rep(), (3,), (0,)) == ((-3,), 0)
    from skms.repspec import validate
    from skms.rootdata import gl
    std = validate(gl(2), [(1, 0), (0, 1), (-1, 0), (0, -1)])
    # -2 rho_bar = (-1, 1) and beta_lambda = (-1, -1)
    assert duality_weight(std, (0, 0), (-1, -1)) == ((0, 2), 1)


@pytest.mark.parametrize("name", ["d2", "gl2", "hexagon"])
def test_window_duality_every_cell(name, request):
    cc = request.getfixturevalue(name)
    for c in cc.cells:
        assert verify_window_duality(cc, c.id).passed


def test_ddual_d2_fixed_point(d2):
    zero, right, left = cell_at(d2, 0), cell_at(d2, F(1, 2)), cell_at(d2, F(-1, 4))
    cert = verify_ddual(d2, zero, right, left)
    assert cert.passed
    item = next(e for e in cert.evidence if e["lambda"] == [1])
    assert item["d_lambda"] == 2 and item["pairs"] == [[[-1], [-1]]]
    swapped = verify_ddual(d2, zero, left, right)
    assert swapped.passed and swapped.evidence[0]["lambda"] == [-1]


def test_mutation_pair_d2_and_rejection(d2):
    zero, right, left = cell_at(d2, 0), cell_at(d2, F(1, 2)), cell_at(d2, F(-1, 4))
    assert mutation_pair(d2, zero, right, left).passed
    with pytest.raises(PreconditionError):
        mutation_pair(d2, zero, right, right)
    with pytest.raises(PreconditionError):
        mutation_pair(d2, zero, right, cell_at(d2, F(3, 2)))


@pytest.mark.parametrize("name", ["d2", "gl2"])
def test_report_passes(name, request):
    cc = request.getfixturevalue(name)
    cert = schober_report(cc)
    assert cert.passed
    assert [c.label for c in cert.children] == [
        "(M) window inclusions", "window independence of witness", "(I) mutation pairs",
        "(T) perpendicularity along walks", "translation equivariance"]


def test_report_detects_corrupted_window(d2):
    wins = {c.id: window(d2, c.id).weights for c in d2.cells}
    target = cell_at(d2, F(1, 2))
    wins[target] = wins[target] + ((5,),)
    cert = schober_report(d2, windows=wins)
    assert not cert.passed
    failing = {f.label for f in cert.failures()}
    assert "(M) window inclusions" in failing
    bad = [e for e in cert.children[0].evidence if not e["holds"]]
    assert {e["upper"] for e in bad} == {target} and bad[0]["missing"] == [[5]]


def test_report_is_thread_count_independent(gl2):
    a = schober_report(gl2, jobs=1).to_json()
    b = schober_report(gl2, jobs=4).to_json()
    assert a == b


def test_q_order_in_mainprop_evidence():
    side = Side(d2_rep(), (0,), (1,))
    assert side.q((-1,)) == QValue.finite(1)
    assert side.q((0,)) == QValue.neg_infinity()
    assert la.dot((1,), (0,)) > la.dot((1,), (-1,))
