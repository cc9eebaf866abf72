import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skms import linalg as la
from skms.geometry import Cone, project_cone
from skms.maximizer import (MaxRay, QValue, lambda_f, q_value, tau_is_empty,
                            verify_antidominant, verify_concavity)
from skms.polyhedral import build_polytopes
from skms.rootdata import build_root_datum
from skms.repspec import validate
from conftest import d2_rep, gl2_rep, hex_rep
from oracles import brute_maximizer, random_instance, tau_generators

F = Fraction
ID1 = ((F(1),),)
ID2 = la.identity(2)


def d2_delta():
    return build_polytopes(d2_rep(), (0,))[2]


def test_tau_emptiness():
    z = d2_delta()
    assert not tau_is_empty(z, (-1,), (1,))
    assert tau_is_empty(z, (0,), (1,))
    assert tau_is_empty(z, (1,), (1,))
    with pytest.raises(ValueError):
        tau_is_empty(z, (0,), (0,))


def test_project_cone_small_cases():
    half_line = Cone.make(1, [(1,)])
    assert project_cone((-3,), half_line, ID1) == (0,)
    assert project_cone((2,), half_line, ID1) == (2,)
    quadrant = Cone.make(2, [(1, 0), (0, 1)])
    assert project_cone((1, 2), quadrant, ID2) == (1, 2)
    assert project_cone((-1, -2), quadrant, ID2) == (0, 0)
    assert project_cone((3, -2), quadrant, ID2) == (3, 0)


def test_lambda_f_examples():
    z = d2_delta()
    res = lambda_f(z, (-1,), (1,), ID1)
    assert isinstance(res, MaxRay) and res.direction == (1,) and res.q.q_squared == 1
    assert lambda_f(z, (0,), (1,), ID1) == QValue.neg_infinity()
    hexz = build_polytopes(hex_rep(), (0, 0))[1]
    res = lambda_f(hexz, (-1, -1), (1, 1), ID2)
    assert res.direction == (1, 1) and res.q.q_squared == 2


def test_qvalue_order():
    assert QValue.neg_infinity() < QValue.finite(F(1, 4)) < QValue.finite(2)
    with pytest.raises(ValueError):
        QValue.finite(0)


def test_concavity():
    with pytest.raises(ValueError):
        verify_concavity((1,), (1,), (1,), ID1)
    assert verify_concavity((1, 0), (0, 1), (1, 1), ID2)
    # unit vectors with a non-identity form
    g = ((F(2), F(0)), (F(0), F(1)))
    assert verify_concavity((F(2, 3), F(1, 3)), (0, 1), (1, 1), g, samples=[F(1, 3), F(1, 2)])


def test_antidominance_gl2_window():
    r = gl2_rep()
    pi = build_polytopes(r, (0, 0))[2]
    for chi in pi.lattice_points():
        if r.datum.is_dominant(chi):
            assert verify_antidominant(r.datum, pi, chi, (1, 1)) is True


def test_antidominance_skipped_for_non_invariant_gram(caplog):
    d = build_root_datum({"rank": 2, "simple_roots": [(1, -1)], "simple_coroots": [(1, -1)]})
    object.__setattr__(d, "gram", ((F(1), F(0)), (F(0), F(2))))
    r = validate(d, [(1, 0), (0, 1), (-1, 0), (0, -1)])
    pi = build_polytopes(r, (0, 0))[2]
    assert verify_antidominant(d, pi, (0, 0), (1, 1)) is None
    assert "skipped" in caplog.text


def test_torus_antidominance_is_vacuous():
    r = hex_rep()
    pi = build_polytopes(r, (0, 0))[1]
    for chi in pi.lattice_points():
        assert verify_antidominant(r.datum, pi, chi, (1, 0)) is True


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_agrees_with_bruteforce(seed):
    z, f, eps, g = random_instance(random.Random(seed), 1 + seed % 3)
    oracle = brute_maximizer(z, f, eps, g)
    res = lambda_f(z, f, eps, g)
    if oracle is None:
        assert res == QValue.neg_infinity()
    else:
        ray, q2, unique = oracle
        assert unique
        assert res.direction == ray and res.q.q_squared == q2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_beats_every_extreme_ray(seed):
    z, f, eps, g = random_instance(random.Random(seed), 1 + seed % 3)
    res = lambda_f(z, f, eps, g)
    if not isinstance(res, MaxRay):
        return
    for r in tau_generators(z, f, eps):
        if la.dot(r, eps) > 0 and la.primitive(r) != res.direction:
            assert QValue.finite(la.dot(r, eps) ** 2 / la.quad(g, r)) < res.q


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_scale_and_translation_invariance(seed, shift):
    z, f, eps, g = random_instance(random.Random(seed), 1 + seed % 3)
    shift = shift[: z.dim]
    res = lambda_f(z, f, eps, g)
    doubled = lambda_f(z, f, la.scale(2, eps), g)
    moved = lambda_f(z.translate(shift), la.add(f, shift), eps, g)
    if isinstance(res, MaxRay):
        assert doubled.direction == res.direction == moved.direction
        assert doubled.q.q_squared == 4 * res.q.q_squared
        assert moved.q == res.q
    else:
        assert doubled == moved == res


def test_q_value_wrapper():
    z = d2_delta()
    assert q_value(z, (-1,), (1,), ID1) == QValue.finite(1)
    assert q_value(z, (1,), (1,), ID1) == QValue.neg_infinity()
