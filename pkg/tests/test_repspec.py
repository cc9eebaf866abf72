import pytest
from hypothesis import given, strategies as st

from skms.repspec import RepSpecError, line_sums, validate
from skms.rootdata import gl, torus
from conftest import D2, GL2_STD, HEX


def test_diagnostics():
    assert validate(torus(1), D2).diagnostics == {
        "quasi_symmetric": True, "spanning": True, "unimodular": True}
    assert validate(torus(1), [(-1,), (2,)]).diagnostics["quasi_symmetric"] is False
    assert all(validate(torus(2), HEX).diagnostics.values())


def test_dimension_mismatch():
    with pytest.raises(RepSpecError):
        validate(torus(2), [(1,), (-1,)])


def test_beta_and_d_lambda():
    r = validate(torus(1), D2)
    assert r.beta_lambda((1,)) == (2,)
    assert r.d_lambda((1,)) == 2
    assert r.beta_lambda((0,)) == (0,)
    assert r.d_lambda((0,)) == 0
    g = validate(gl(2), GL2_STD)
    assert g.beta_lambda((-1, -1)) == (-1, -1)
    assert g.d_lambda((-1, -1)) == 1
    assert g.d_lambda((0, 0)) == -1


def test_positive_indices():
    r = validate(torus(1), D2)
    assert r.positive_indices((1,)) == (2, 3)
    assert r.positive_indices((0,)) == ()
    h = validate(torus(2), HEX)
    assert h.positive_indices((1, 0)) == (0, 4)


def test_line_sums_vanish():
    for s in line_sums(validate(torus(2), HEX)).values():
        assert all(x == 0 for x in s)


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_opposite_lambda_relations(lam):
    r = validate(gl(2), GL2_STD * 2)
    neg = tuple(-x for x in lam)
    assert r.beta_lambda(lam) == tuple(-x for x in r.beta_lambda(neg))
    nonzero = sum(1 for b in r.weights if sum(x * y for x, y in zip(lam, b)) != 0)
    assert r.d_lambda(lam) + r.d_lambda(neg) == nonzero - 2 * r.dim_g_over_b
    pos, negi = set(r.positive_indices(lam)), set(r.positive_indices(neg))
    assert not pos & negi
    assert len(pos | negi) == nonzero
