from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from skms.rootdata import RootDatumError, build_root_datum, gl, torus
from oracles import weyl_orbit_bruteforce

F = Fraction


def test_torus_is_trivial():
    d = torus(1)
    assert d.rho_bar == (0,)
    assert d.weyl_order == 1
    assert d.w0 == ((1,),)
    assert d.is_dominant((-5,))
    assert d.dominant_dotted((-5,)) == (-5,)
    assert d.minus_w0((3,)) == (-3,)
    assert d.weyl_orbit((7,)) == {(7,)}


def test_gl2_basics():
    d = gl(2)
    assert d.rho_bar == (F(1, 2), F(-1, 2))
    assert d.weyl_order == 2
    assert d.is_dominant((1, 0)) and not d.is_dominant((0, 1))
    assert d.is_antidominant((-1, 1))
    assert d.minus_w0((1, 2)) == (-2, -1)
    assert d.weyl_orbit((1, 0)) == {(1, 0), (0, 1)}
    assert d.weyl_orbit((1, 1)) == {(1, 1)}
    assert d.invariant_lattice() == [(1, 1)]


def test_dominant_dotted_gl2():
    d = gl(2)
    # (0,1) + rho_bar = (1/2, 1/2) lies on the wall
    assert d.dominant_dotted((0, 1)) is None
    # (-1,1) + rho_bar = (-1/2, 1/2); swapping gives (1/2, -1/2), i.e. chi+ = (0, 0)
    assert d.dominant_dotted((-1, 1)) == (0, 0)
    assert d.dominant_dotted((2, -1)) == (2, -1)


def test_bad_cartan_pairing():
    with pytest.raises(RootDatumError, match="Cartan"):
        build_root_datum({"rank": 1, "simple_roots": [(3,)], "simple_coroots": [(1,)]})


def test_non_invariant_gram_rejected():
    with pytest.raises(RootDatumError):
        build_root_datum({"rank": 2, "simple_roots": [(1, -1)], "simple_coroots": [(1, -1)],
                          "gram": [[1, 0], [0, 2]]})


def test_sl2_has_no_fixed_vectors():
    d = build_root_datum({"rank": 1, "simple_roots": [(2,)], "simple_coroots": [(1,)]})
    assert d.invariant_lattice() == []


weights2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@given(weights2)
def test_orbit_matches_reflection_closure(v):
    d = gl(2)
    assert d.weyl_orbit(v) == weyl_orbit_bruteforce(d, v)


@given(weights2)
def test_dotted_undefined_iff_singular(chi):
    d = gl(2)
    shifted = tuple(F(x) + r for x, r in zip(chi, d.rho_bar))
    singular = len(d.stabilizer(shifted)) > 1
    assert (d.dominant_dotted(chi) is None) == singular


@given(weights2)
def test_dotted_idempotent_and_fixes_dominant(chi):
    d = gl(2)
    plus = d.dominant_dotted(chi)
    if plus is not None:
        assert d.is_dominant(plus)
        assert d.dominant_dotted(plus) == plus
    if d.is_dominant(chi) and plus is not None:
        assert plus == tuple(chi)


@given(weights2)
def test_minus_w0_involution_and_norm(chi):
    d = gl(2)
    assert d.minus_w0(d.minus_w0(chi)) == tuple(chi)
    assert d.norm2(d.minus_w0(chi)) == d.norm2(chi)
    if d.is_dominant(chi):
        assert d.is_dominant(d.minus_w0(chi))
    assert len({d.norm2(v) for v in d.weyl_orbit(chi)}) == 1


def test_rank3_weyl_group_order():
    # GL(3): simple roots e1-e2, e2-e3; the Weyl group is S3
    d = gl(3)
    assert d.weyl_order == 6
    assert d.rho_bar == (1, 0, -1)
    assert d.minus_w0((1, 0, 0)) == (0, 0, -1)
