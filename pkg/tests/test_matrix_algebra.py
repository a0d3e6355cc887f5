"""Tests for SL(2,C) utilities, H^3 points and unitarizability."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from bryantlab import sl2c


def random_sl2c(rng):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return m / np.sqrt(np.linalg.det(m))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_star_reverses_products(seed):
    rng = np.random.default_rng(seed)
    a, b = random_sl2c(rng), random_sl2c(rng)
    assert_allclose(sl2c.star(a @ b), sl2c.star(b) @ sl2c.star(a), atol=1e-12)


def test_moebius_action_is_group_action():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = random_sl2c(rng), random_sl2c(rng)
        z = complex(rng.normal(), rng.normal())
        lhs = sl2c.moebius_apply(a @ b, z)
        rhs = sl2c.moebius_apply(a, sl2c.moebius_apply(b, z))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_moebius_infinity_handling():
    a = np.array([[2.0, 1.0], [0.0, 0.5]])
    assert sl2c.moebius_apply(a, sl2c.INF) == sl2c.INF
    b = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert sl2c.moebius_apply(b, 0.0) == sl2c.INF
    assert sl2c.moebius_apply(b, sl2c.INF) == 0.0


def test_herm_point_equivariance():
    rng = np.random.default_rng(11)
    F = random_sl2c(rng)
    a = random_sl2c(rng)
    lhs = sl2c.herm_point(a @ F)
    rhs = a @ sl2c.herm_point(F) @ sl2c.star(a)
    assert_allclose(lhs, rhs, atol=1e-12)


def test_herm_point_rejects_non_unimodular():
    with pytest.raises(sl2c.NotUnimodular):
        sl2c.herm_point(np.diag([2.0, 1.0]))


def test_identity_frame_is_ball_origin():
    f = sl2c.herm_point(np.eye(2))
    assert_allclose(sl2c.to_ball(f), np.zeros(3), atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_ball_round_trip(seed):
    rng = np.random.default_rng(seed)
    y = rng.uniform(-0.55, 0.55, size=3)
    assert_allclose(sl2c.to_ball(sl2c.from_ball(y)), y, atol=1e-12)


def test_su2_defect_zero_on_su2():
    rng = np.random.default_rng(2)
    for _ in range(10):
        assert sl2c.su2_defect(sl2c.random_su2(rng)) <= 1e-14


def test_su2_defect_sign_invariant():
    rng = np.random.default_rng(3)
    m = random_sl2c(rng)
    assert sl2c.su2_defect(m) == pytest.approx(sl2c.su2_defect(-m), abs=1e-14)


def test_unitarizability_of_conjugated_su2_set():
    rng = np.random.default_rng(4)
    b = np.array([[1.3, 0.2 + 0.1j], [0.4 - 0.2j, 1.0]])
    b = b / np.sqrt(np.linalg.det(b))
    gens = [b @ sl2c.random_su2(rng) @ np.linalg.inv(b) for _ in range(4)]
    res = sl2c.unitarizability(gens)
    assert res.defect <= 1e-12
    assert not res.clipped
    c = res.conjugator
    ci = np.linalg.inv(c)
    assert max(sl2c.su2_defect(c @ g @ ci) for g in gens) <= 1e-10


def test_unitarizability_defect_invariant_under_su2_conjugation():
    rng = np.random.default_rng(6)
    gens = [random_sl2c(rng) for _ in range(3)]
    base = sl2c.unitarizability(gens).defect
    for _ in range(5):
        u = sl2c.random_su2(rng)
        ui = np.linalg.inv(u)
        moved = sl2c.unitarizability([u @ g @ ui for g in gens]).defect
        assert abs(moved - base) <= 1e-10


def test_indefinite_invariant_form_is_flagged():
    # a hyperbolic element preserves only indefinite Hermitian forms: the
    # stacked system is singular but the positivity clip must flag failure
    res = sl2c.unitarizability([np.diag([2.0, 0.5])])
    assert res.defect <= 1e-14
    assert res.clipped


def test_generic_pair_has_positive_defect():
    rng = np.random.default_rng(9)
    gens = [random_sl2c(rng) for _ in range(2)]
    assert sl2c.unitarizability(gens).defect > 1e-3
