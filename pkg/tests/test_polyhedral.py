import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skms import linalg as la
from skms.polyhedral import (ZonotopeError, Zonotope, build_polytopes, closure_membership,
                             face_of_functional, facet_hyperplanes, normal_fan, sigma_cone,
                             sigma_cone_from_facets)
from conftest import d2_rep, gl2_rep, hex_rep
from oracles import random_instance, zonotope_lattice_bruteforce

F = Fraction


def d2_delta(xi=0):
    return build_polytopes(d2_rep(), (xi,))[2]


def hex_delta0():
    return build_polytopes(hex_rep(), (0, 0))[1]


def test_window_polytopes():
    assert d2_delta().bounding_box == ((-1, 1),)
    g = build_polytopes(validate_gl2_std(), (0, 0))[2]
    assert g.bounding_box == ((-1, 0), (0, 1))
    assert sorted(facet_hyperplanes(hex_delta0())) == [
        ((0, 1), -1), ((0, 1), 1), ((1, -1), -1), ((1, -1), 1), ((1, 0), -1), ((1, 0), 1)]


def validate_gl2_std():
    from skms.repspec import validate
    from skms.rootdata import gl
    return validate(gl(2), [(1, 0), (0, 1), (-1, 0), (0, -1)])


def test_face_of_functional():
    face, u = face_of_functional(d2_delta(), (1,))
    assert u == -1 and d2_delta().face_point(face) == (-1,)
    face, u = face_of_functional(hex_delta0(), (1, 1))
    assert u == -2 and hex_delta0().face_point(face) == (-1, -1)
    face, u = face_of_functional(hex_delta0(), (0, 0))
    assert u == 0 and hex_delta0().face_dim(face) == 2


def test_closure_membership():
    z = d2_delta()
    assert closure_membership(z, (-1,), (1,))
    assert not closure_membership(z, (0,), (1,))
    assert closure_membership(z, (F(1, 3),), (0,))
    with pytest.raises(ZonotopeError):
        closure_membership(z, (2,), (1,))


def test_sigma_cones():
    z = d2_delta()
    closed, _ = sigma_cone(z, (-1,))
    assert closed.contains((1,)) and not closed.contains((-1,))
    closed, _ = sigma_cone(z, (F(1, 2),))
    assert closed.generators() == ([], [])
    closed, _ = sigma_cone(hex_delta0(), (-1, -1))
    assert closed.generators() == ([(0, 1), (1, 0)], [])


def test_normal_fan_counts():
    assert len(normal_fan(d2_delta())) == 3
    fan = normal_fan(hex_delta0())
    dims = sorted(hex_delta0().face_dim(f) for f, _ in fan)
    assert dims == [0] * 6 + [1] * 6 + [2]


def test_lattice_points():
    assert d2_delta(F(1, 2)).lattice_points() == [(0,), (1,)]
    assert d2_delta().lattice_points() == [(-1,), (0,), (1,)]
    g = build_polytopes(validate_gl2_std(), (0, 0))[2]
    assert g.lattice_points() == [(-1, 0), (-1, 1), (0, 0), (0, 1)]
    assert len(hex_delta0().lattice_points()) == 7


def test_zero_generators_dropped(caplog):
    caplog.set_level("INFO")
    z = Zonotope.make((0,), [((0,), (0,)), ((0,), (1,))])
    assert len(z.generators) == 1
    assert "zero-length" in caplog.text


def test_fan_partition_sampled():
    rng = random.Random(7)
    for z in (hex_delta0(), build_polytopes(gl2_rep(), (0, 0))[1]):
        fan = normal_fan(z)
        opens = [c.relative_interior() for _, c in fan]
        for _ in range(500):
            lam = (F(rng.randint(-50, 50), rng.randint(1, 9)), F(rng.randint(-50, 50), rng.randint(1, 9)))
            assert sum(1 for c in opens if c.contains(lam)) == 1


def test_order_reversal_hexagon():
    z = hex_delta0()
    fan = normal_fan(z)
    for f1, c1 in fan:
        for f2, c2 in fan:
            below = all(a == b or b == "free" for a, b in zip(f1.signs, f2.signs))
            contained = all(c1.contains(r) for r in c2.generators()[0]) and all(
                c1.contains(v) and c1.contains(la.neg(v)) for v in c2.generators()[1])
            assert below == contained


@pytest.mark.parametrize("rep", [hex_rep, gl2_rep], ids=["hexagon", "gl2"])
def test_signed_weyl_images_are_translates(rep):
    r = rep()
    d = r.datum
    delta = build_polytopes(r, (0, 0))[2]
    c0, gens0 = delta.canonical()
    for w in d.elements:
        for sgn in (1, -1):
            m = tuple(la.scale(sgn, row) for row in w)
            img_c, img_g = delta.transform(m).canonical()
            assert img_g == gens0
            shift = la.sub(img_c, c0)
            assert all(x.denominator == 1 for x in shift)
            if sgn == -1 and w == d.w0:
                assert la.is_zero(shift)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_sigma_cone_two_routes(seed):
    z, f, _, _ = random_instance(random.Random(seed), 1 + seed % 3)
    closed, _ = sigma_cone(z, f)
    _, other = sigma_cone_from_facets(z, f)
    for r in other.generators()[0] + [la.neg(v) for v in other.generators()[1]]:
        assert closed.contains(r)
    for r in closed.generators()[0]:
        assert other.contains(r)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_membership_matches_cone(seed, lam):
    z, f, _, _ = random_instance(random.Random(seed), 1 + seed % 3)
    lam = lam[: z.dim]
    closed, _ = sigma_cone(z, f)
    assert closure_membership(z, f, lam) == closed.contains(lam)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_lattice_points_two_routes(seed):
    z, _, _, _ = random_instance(random.Random(seed), 1 + seed % 3)
    assert z.lattice_points() == zonotope_lattice_bruteforce(z)


@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.integers(1, 6))
def test_min_value_positively_homogeneous(lam, t):
    z = hex_delta0()
    assert z.min_value(la.scale(t, lam)) == t * z.min_value(lam)


def test_min_value_linear_on_each_cone():
    z = hex_delta0()
    for face, cone in normal_fan(z):
        rays, _ = cone.generators()
        p = z.face_point(face)
        for r in rays:
            assert z.min_value(r) == la.dot(r, p)
