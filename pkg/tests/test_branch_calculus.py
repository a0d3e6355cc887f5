"""Tests for the branch-point expression calculus."""

import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from bryantlab import cexpr as cx

RNG = np.random.default_rng(20260822)


def random_expr(rng, n_terms=2, n_points=2, integer_only=False):
    pts = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n_points)]
    exps = []
    for p in pts:
        base = rng.integers(-2, 3) if integer_only else rng.uniform(-1.5, 1.5)
        exps.append(float(base))
    terms = []
    for _ in range(n_terms):
        fac = [(p, e + float(RNG.integers(0, 3))) for p, e in zip(pts, exps)]
        coeff = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        terms.append(cx.term(coeff, *fac))
    return sum(terms[1:], terms[0])


def test_algebra_normalizes_like_terms():
    e = cx.factor(1.0, 2.0, 3.0) + cx.factor(1.0, 2.0, -3.0)
    assert e.is_zero()
    e2 = cx.term(2.0, (0.0, 1.0), (0.0, 1.5))
    assert e2.terms[0].factors == ((0.0 + 0.0j, 2.5),)


def test_branch_class_invariant_enforced():
    with pytest.raises(ValueError):
        cx.factor(0.0, 0.5) + cx.factor(0.0, 0.25)
    with pytest.raises(ValueError):
        cx.factor(0.0, 0.5) + cx.const(1.0)  # non-integer point absent in a term


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_differentiate_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    e = random_expr(rng)
    de = cx.differentiate(e)
    z = complex(rng.uniform(2.5, 3.5), rng.uniform(2.5, 3.5))  # away from points
    h = 1e-5
    fd = (cx.eval_principal(e, z + h) - cx.eval_principal(e, z - h)) / (2 * h)
    scale = max(1.0, abs(fd))
    assert abs(cx.eval_principal(de, z) - fd) <= 1e-6 * scale


def test_documented_schwarzian_power_law():
    # g' = mu z^(mu-1)  =>  S(g) = (1 - mu^2) / (2 z^2)
    for mu in (0.3, -0.7, 2.0):
        S = cx.schwarzian_from_derivative(cx.factor(0.0, mu - 1.0, mu))
        for z in (0.5 + 0.5j, -1.0 + 2.0j):
            assert_allclose(cx.eval_principal(S, z), (1 - mu**2) / (2 * z**2),
                            rtol=1e-12)


def test_schwarzian_is_rational_for_single_term_input():
    e = cx.term(2.0, (0.0, -0.5), (1.0, 2.0), (3.0, -2.0))
    S = cx.schwarzian_from_derivative(e)
    for t in S.terms:
        for _, a in t.factors:
            assert abs(a - round(a)) < 1e-9


def test_schwarzian_moebius_cocycle_vanishes():
    rng = np.random.default_rng(7)
    gp = cx.term(1.3, (0.0, -0.5), (1.0, 2.0))
    samples = [0.4 + 0.3j, -0.7 + 0.1j, 2.5 - 1.0j]
    for _ in range(20):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m = m / np.sqrt(np.linalg.det(m))
        assert cx.moebius_invariance_check(gp, m, samples) <= 1e-9


def test_zero_derivative_raises():
    with pytest.raises(cx.ZeroDerivative):
        cx.schwarzian_from_derivative(cx.const(0.0))


def test_residue_theorem_rational():
    # rational function with deg(num) <= deg(den) - 2: residues sum to zero
    rng = np.random.default_rng(3)
    for _ in range(5):
        poles = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(3)]
        e = cx.term(1.7 - 0.3j, (poles[0], -1.0), (poles[1], -2.0), (poles[2], -1.0))
        total = sum(cx.residue(e, p) for p in poles)
        assert abs(total) <= 1e-9


def test_residue_known_values():
    e = cx.factor(2.0, -1.0, 5.0) + cx.factor(2.0, -3.0, 1.0)
    assert_allclose(cx.residue(e, 2.0), 5.0, atol=1e-11)
    # residue of 1/((z-a)(z-b)) at a is 1/(a-b)
    a, b = 0.3 + 0.1j, -1.2 + 0.8j
    e2 = cx.term(1.0, (a, -1.0), (b, -1.0))
    assert_allclose(cx.residue(e2, a), 1 / (a - b), rtol=1e-10)


def test_taylor_coeffs_geometric_series():
    # 1/(z-1) = -(1 + z + z^2 + ...) near 0
    c = cx.taylor_coeffs(cx.factor(1.0, -1.0), 0.0, 6)
    assert_allclose(c, -np.ones(6), atol=1e-10)


def test_noninteger_exponent_rejected():
    with pytest.raises(cx.NonIntegerExponent):
        cx.residue(cx.factor(0.0, -0.5), 0.0)


def test_radius_conflict():
    e = cx.term(1.0, (0.0, -1.0), (0.5, 1.0))
    with pytest.raises(cx.RadiusConflict):
        cx.laurent_coeffs(e, 0.0, -1, 0, radius=0.9)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.floats(-1.5, 1.5).filter(lambda a: abs(a) > 0.05))
def test_loop_winding_multiplier(k, alpha):
    # k turns around p multiply (z-p)^alpha by exp(2 pi i k alpha)
    p = 0.3 + 0.2j
    e = cx.factor(p, alpha)
    circle = [p + 1.5 * cmath.exp(2j * cmath.pi * t / 48) for t in range(48 * k + 1)]
    v0 = cx.eval_principal(e, circle[0])
    v, _ = cx.eval_continued(e, circle)
    assert abs(v - v0 * cmath.exp(2j * cmath.pi * k * alpha)) <= 1e-9 * abs(v0)


def test_continuation_homotopy_independence():
    # two paths between the same endpoints, same side of the branch point
    e = cx.factor(0.0, 0.5)
    a, b = 1.0 + 0.0j, 0.0 + 2.0j
    path1 = [a, 1.0 + 1.0j, b]
    path2 = [a, 2.0 + 0.5j, 2.0 + 2.0j, b]
    v1, _ = cx.eval_continued(e, path1)
    v2, _ = cx.eval_continued(e, path2)
    assert abs(v1 - v2) <= 1e-12


def test_path_too_close_raises():
    e = cx.factor(0.0, 0.5)
    with pytest.raises(cx.PathTooClose):
        cx.eval_continued(e, [1.0, -1.0], clearance=0.1)


def test_json_round_trip():
    e = cx.term(1.5 - 2.0j, (0.0, -0.5), (1.0 + 1.0j, 2.0)) \
        + cx.term(0.25j, (0.0, 1.5), (1.0 + 1.0j, -1.0))
    assert cx.expr_from_json(cx.expr_to_json(e)) == e


def test_invert_chart_degree_bookkeeping():
    # e = z^2 (z-1): degree 3 at infinity -> pole of order 3 in w at 0
    e = cx.term(1.0, (0.0, 2.0), (1.0, 1.0))
    w = cx.invert_chart(e)
    assert cx.min_exponent(w, 0.0) == pytest.approx(-3.0)
    zs = np.array([0.2 + 0.1j, -0.4 + 0.3j])
    assert_allclose(cx.eval_principal(w, zs), cx.eval_principal(e, 1.0 / zs),
                    rtol=1e-12)


def test_min_exponent_and_degree_bound():
    e = cx.term(1.0, (0.0, -2.0), (1.0, 1.0)) + cx.term(2.0, (0.0, 1.0))
    assert cx.min_exponent(e, 0.0) == -2.0
    assert cx.degree_bound(e) == 1.0
