"""Tests for the lift integrator, loop planner and monodromy machinery."""

import cmath
import math

import numpy as np
import pytest

import bryantlab.cexpr as cx
from bryantlab.holonomy import (
    DegenerateDifferential,
    DualData,
    LiftTransport,
    LoopPlanningFailed,
    NotDualizable,
    RationalMap,
    SecondaryData,
    SurfaceSpec,
    branch_divisor,
    check_compat,
    coefficient_matrix,
    dual_spec,
    extract_gauss_maps,
    hopf_expr,
    integrate_lift,
    invert_spec,
    loop_polyline,
    monodromy,
    monodromy_rep,
)
from bryantlab.sl2c import INF, su2_defect


def horosphere_spec(a=1.0 + 0.0j):
    return SurfaceSpec((INF,), SecondaryData(cx.const(0.0), cx.const(a), 0.0),
                       basepoint=0.0)


def enneper_spec(a):
    return SurfaceSpec((INF,), SecondaryData(cx.const(1.0), cx.const(a * a), 0.0),
                       basepoint=0.0)


def catenoid_spec(l, delta=1, b=0.0):
    gp = cx.factor(0.0, l - 1.0, (delta**2 - l**2) / 4.0)
    om = cx.factor(0.0, -l - 1.0)
    g0 = (delta**2 - l**2) / (4.0 * l) + b
    return SurfaceSpec((0.0, INF), SecondaryData(gp, om, g0), basepoint=1.0)


def trinoid_spec(mu1, mu2, mu3, base=0.45 - 0.65j):
    c1, c2, c3 = (-m * (m + 2) / 2.0 for m in (mu1, mu2, mu3))
    (q1, _), (q2, _) = cx.roots_with_multiplicity(
        np.array([c3, c2 - c1 - c3, c1]))
    s, d2 = q1 + q2, (q1 - q2) ** 2
    Q = cx.term(0.5 * c3, (q1, 1.0), (q2, 1.0), (0.0, -2.0), (1.0, -2.0))
    G = RationalMap((4.0, -2 * s, d2), (4.0, -2 * s))
    dG = cx.term(1.0, (q1, 1.0), (q2, 1.0), (s / 2, -2.0))
    return SurfaceSpec((0.0, 1.0, INF), DualData(G, Q, dG), basepoint=base)


def test_horosphere_closed_form():
    a = 1.3 - 0.4j
    spec = horosphere_spec(a)
    for zt in (2.0, -2.0, 1.4 + 1.4j, -0.3 + 1.9j, 0.1 - 0.1j):
        F = integrate_lift(spec, [0.0, zt])
        np.testing.assert_allclose(F, [[1.0, 0.0], [a * zt, 1.0]], atol=1e-10)


def test_enneper_closed_form_and_gauss_maps():
    a = 0.7 + 0.2j
    spec = enneper_spec(a)
    for zt in (1.0, 0.3 + 0.9j, -0.8 - 0.5j):
        F = integrate_lift(spec, [0.0, zt])
        ch, sh = cmath.cosh(a * zt), cmath.sinh(a * zt)
        Fex = np.array([[ch, sh / a - zt * ch], [a * sh, ch - a * zt * sh]])
        np.testing.assert_allclose(F, Fex, atol=1e-9)
    zs = np.linspace(0, 0.5 + 0.5j, 1200)
    tr = LiftTransport(spec)
    frames = [tr.F.copy()]
    for z in zs[1:]:
        tr.advance([z])
        frames.append(tr.F.copy())
    zm, g, G = extract_gauss_maps(zs, frames)
    np.testing.assert_allclose(g, zm, atol=1e-6)
    np.testing.assert_allclose(G, np.tanh(a * zm) / a, atol=1e-6)


def test_unimodular_along_random_paths():
    rng = np.random.default_rng(7)
    for _ in range(10):
        cp = rng.normal(size=4) + 1j * rng.normal(size=4)
        gp = cx.const(cp[0]) + cx.factor(cp[1], 1.0)
        om = cx.const(cp[2]) + cx.factor(cp[3], 1.0)
        spec = SurfaceSpec((INF,), SecondaryData(gp, om, complex(cp[0] * cp[3])),
                           basepoint=0.0)
        path = [0.0] + list(rng.normal(scale=0.8, size=3)
                            + 1j * rng.normal(scale=0.8, size=3))
        F = integrate_lift(spec, path)
        assert abs(np.linalg.det(F) - 1.0) <= 1e-10


@pytest.mark.parametrize("l", [0.4, 0.8, 1.6])
def test_catenoid_monodromy_eigenvalues(l):
    M = monodromy(catenoid_spec(l), 0)
    ev = sorted(np.linalg.eigvals(M), key=lambda z: z.imag)
    ex = sorted([cmath.exp(-1j * math.pi * l), cmath.exp(1j * math.pi * l)],
                key=lambda z: z.imag)
    err = max(abs(a - b) for a, b in zip(ev, ex))
    err_flip = max(abs(a + b) for a, b in zip(ev, sorted(ex, key=lambda z: -z.imag)))
    assert min(err, err_flip) <= 1e-8
    assert su2_defect(M) <= 1e-8


def test_warped_catenoid_monodromy_trivial():
    M = monodromy(catenoid_spec(1.0, delta=2, b=0.5), 0)
    assert min(np.abs(M - np.eye(2)).max(), np.abs(M + np.eye(2)).max()) <= 1e-8


def test_secondary_gauss_map_multiplier():
    l = 0.8
    spec = catenoid_spec(l)
    tr = LiftTransport(spec)
    tr.advance(loop_polyline(spec, 0)[1:])
    g0 = spec.data.g_base
    np.testing.assert_allclose(tr.g, g0 * cmath.exp(2j * math.pi * l),
                               atol=1e-10)


def test_monodromy_product_is_plus_minus_identity():
    assert monodromy_rep(catenoid_spec(0.8)).product_defect <= 1e-9
    assert monodromy_rep(trinoid_spec(-0.3, -0.3, -0.3)).product_defect <= 1e-9


def test_dual_system_homotopy_invariance():
    spec = trinoid_spec(-0.5, -0.4, -0.25)
    M1 = integrate_lift(spec, loop_polyline(spec, 0, vertices=48))
    M2 = integrate_lift(spec, loop_polyline(spec, 0, vertices=97))
    np.testing.assert_allclose(M1, M2, atol=1e-9)


def test_secondary_homotopy_invariance():
    spec = catenoid_spec(0.6)
    base = spec.basepoint
    # two homotopic paths from base to -2j that stay clear of the puncture
    F1 = integrate_lift(spec, [base, 1.0 - 2.0j, -2.0j])
    F2 = integrate_lift(spec, [base, 2.0, 2.0 - 2.0j, -2.0j])
    np.testing.assert_allclose(F1, F2, atol=1e-10)


def test_coefficient_matrix_traceless_and_sides():
    spec = catenoid_spec(0.8)
    A, side = coefficient_matrix(spec, 1.3 + 0.2j, g_value=0.3 + 0.1j)
    assert side == "right"
    assert abs(A[0, 0] + A[1, 1]) <= 1e-14
    tsp = trinoid_spec(-0.3, -0.3, -0.3)
    A, side = coefficient_matrix(tsp, 0.3 + 0.8j)
    assert side == "left"
    assert abs(np.trace(A)) <= 1e-12
    with pytest.raises(ValueError):
        coefficient_matrix(spec, 1.0 + 1.0j)


def test_loop_planning_failure_near_puncture():
    spec = SurfaceSpec((0.0, INF),
                       SecondaryData(cx.const(0.0), cx.factor(0.0, -1.0), 0.0),
                       basepoint=0.05)
    with pytest.raises(LoopPlanningFailed):
        loop_polyline(spec, 0)


def test_transport_rejects_grazing_paths():
    spec = catenoid_spec(0.8)
    with pytest.raises(cx.PathTooClose):
        integrate_lift(spec, [1.0, 1e-9])


def test_degenerate_differential_raises():
    spec = SurfaceSpec((INF,), SecondaryData(cx.const(0.0), cx.const(0.0), 0.0),
                       basepoint=0.0)
    zs = np.linspace(0, 1, 5)
    frames = [integrate_lift(spec, [0.0, z]) if z else np.eye(2) for z in zs]
    with pytest.raises(DegenerateDifferential):
        extract_gauss_maps(zs, frames)


def test_dual_spec_of_trinoid():
    spec = trinoid_spec(-0.3, -0.3, -0.3)
    dsp = dual_spec(spec)
    assert isinstance(dsp.data, SecondaryData)
    # dual Hopf differential is -Q
    zs = [0.3 + 0.4j, -0.7 + 0.2j, 1.9 - 0.8j]
    qd = cx.eval_principal(hopf_expr(dsp), np.array(zs))
    q = cx.eval_principal(hopf_expr(spec), np.array(zs))
    np.testing.assert_allclose(qd, -q, rtol=1e-12)
    # g of the dual surface is the hyperbolic Gauss map of the original
    assert abs(dsp.data.g_base - spec.data.G(spec.basepoint)) <= 1e-12
    with pytest.raises(NotDualizable):
        dual_spec(dsp)


def test_branch_divisor_of_rational_maps():
    assert branch_divisor(RationalMap((1.0, 0.0), (1.0,))) == {}
    bd = branch_divisor(RationalMap((1.0, 0.0, 0.0), (1.0,)))  # z^2
    assert bd[0.0] == 1 and bd[INF] == 1
    # (pz^3 - z)/(z^2 - p) at p=1.5 has simple branch points only
    p = 1.5
    bd = branch_divisor(RationalMap((p, 0.0, -1.0, 0.0), (1.0, 0.0, -p)))
    assert all(k == 1 for k in bd.values())
    assert sum(bd.values()) == 4  # 2*deg - 2


def test_check_compat_trinoid_and_mismatch():
    spec = trinoid_spec(-0.3, -0.3, -0.3)
    rep = check_compat(spec.data.G, spec.data.Q, punctures=spec.punctures)
    assert rep.ok and not rep.mismatches
    assert len(rep.end_rows) == 3
    bad = check_compat(RationalMap((1.0, 0.0, 0.0), (1.0,)), cx.const(1.0),
                       punctures=(INF,))
    assert not bad.ok
    assert any(abs(p) <= 1e-12 for p, _, _ in bad.mismatches)


def test_invert_spec_maps_points_and_data():
    spec = catenoid_spec(0.8)
    inv = invert_spec(spec)
    assert any(cmath.isinf(p.real) for p in inv.punctures)
    assert any(p == 0 for p in inv.punctures)
    # integer-exponent data transforms exactly: omega(z)dz -> -omega(1/w)/w^2 dw
    om = cx.term(2.0, (0.0, -2.0)) + cx.const(1.0)
    sp2 = SurfaceSpec((0.0, INF), SecondaryData(cx.const(0.0), om, 0.0),
                      basepoint=1.0)
    w = 0.4 + 0.3j
    lhs = cx.eval_principal(invert_spec(sp2).data.omega, w)
    rhs = -cx.eval_principal(om, 1.0 / w) / w**2
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


def test_loop_polyline_geometry():
    spec = trinoid_spec(-0.3, -0.3, -0.3)
    loop = loop_polyline(spec, 0)
    assert loop[0] == spec.basepoint and loop[-1] == spec.basepoint
    # the circle keeps its design distance from the encircled puncture:
    # 0.4x the distance to the nearest singular point (the pole of G at 1/2)
    dmin = min(abs(z) for z in loop)
    np.testing.assert_allclose(dmin, 0.2, rtol=1e-9)
