"""Tests for the classification rules: facts, enumeration, certificates."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bryantlab import cexpr as cx
from bryantlab.constraints import (FrobeniusProblem, GridTooCoarse,
                                   IrregularSingularPoint, SurfaceType,
                                   UnsupportedBound, canonical_dg,
                                   enumerate_types, facts_check,
                                   general_class_bounds, log_term_coefficient,
                                   reducibility_classify, verify_nonexistence,
                                   NONEXISTENCE_IDS)
from bryantlab.constraints import _ab_closed_form, _phi_triple_report
from bryantlab.curvature import DivisorData


# --- fact predicates -------------------------------------------------------

def test_facts_clean_catenoid_divisor():
    end = (-2, -0.2, 0.0)
    assert facts_check(DivisorData(ends=(end, end))) == []


def test_facts_single_end_cannot_have_order_minus_two():
    codes = [c for c, _ in facts_check(DivisorData(ends=((-2, 0.0, 0.0),)))]
    assert "single-end-order" in codes


def test_facts_horosphere_divisor_is_exempt():
    assert facts_check(DivisorData(ends=((0, 0.0, 0.0),))) == []


def test_facts_branch_point_count_on_torus():
    # two regular embedded ends of order 0: the dual map could branch only
    # at the two ends, one short of the minimum on positive genus
    end = (0, 2.0, 2.0)
    codes = [c for c, _ in
             facts_check(DivisorData(ends=(end, end), genus=1))]
    assert "three-branch-points" in codes


def test_facts_branch_point_count_satisfied_with_umbilics():
    end = (-1, 1.0, 1.0)
    d = DivisorData(ends=(end, end), umbilics=(1, 1), genus=1)
    assert facts_check(d) == []


def test_facts_delegates_per_end_rules():
    d = DivisorData(ends=((-2, -1.5, 0.0), (-2, -0.2, 0.0)))
    codes = [c for c, _ in facts_check(d)]
    assert "mu-floor" in codes


def test_facts_irregular_ends_skip_branch_count():
    d = DivisorData(ends=((-3, 0.5, math.inf),), genus=1)
    codes = [c for c, _ in facts_check(d)]
    assert "three-branch-points" not in codes


# --- order windows ---------------------------------------------------------

def test_bounds_single_end_genus_zero():
    gb = general_class_bounds(0, 1, 4.0)
    assert gb.feasible
    assert gb.d1_values == (-6, -5, -4)


def test_bounds_single_end_genus_one():
    gb = general_class_bounds(1, 1, 4.0)
    assert gb.d1_values == (-4, -3)


def test_bounds_maximal_end_count_forces_order_minus_two():
    gb = general_class_bounds(0, 5, 4.0)
    assert gb.forced_orders == (-2, -2, -2, -2, -2)
    assert general_class_bounds(0, 4, 4.0).forced_orders is None


def test_bounds_single_maximal_end_pins_conical_order():
    gb = general_class_bounds(2, 1, 4.0)
    assert gb.mu1_equals_order_plus_two
    assert gb.d1_values == (0, 1, 2, 3, 4)


def test_bounds_genus_window():
    assert not general_class_bounds(2, 1, 2.0).genus_ok
    assert general_class_bounds(1, 1, 2.0).genus_ok


def test_bounds_single_end_torus_window_can_be_empty():
    gb = general_class_bounds(1, 1, 2.0)
    assert gb.d1_values == ()
    assert not gb.feasible


def test_bounds_end_count_window():
    assert general_class_bounds(0, 5, 4.0).n_ok
    assert not general_class_bounds(0, 6, 4.0).n_ok
    assert general_class_bounds(1, 3, 4.0).n_max == 3


def test_bounds_reject_bad_arguments():
    with pytest.raises(ValueError):
        general_class_bounds(0, 1, 0.0)
    with pytest.raises(ValueError):
        general_class_bounds(-1, 1, 4.0)
    with pytest.raises(ValueError):
        general_class_bounds(0, 0, 4.0)


# --- admissible types ------------------------------------------------------

EXPECTED_8PI = {
    (0, (0,), "classified"),
    (0, (-4,), "classified"),
    (0, (-5,), "classified"),
    (0, (-6,), "classified"),
    (0, (-1, -3), "impossible"),
    (0, (-1, -4), "classified"),
    (0, (-2, -2), "classified"),
    (0, (-2, -3), "impossible"),
    (0, (-2, -4), "classified"),
    (0, (-2, -5), "existence"),
    (0, (-3, -3), "unknown"),
    (0, (-3, -4), "unknown"),
    (0, (0, -2, -2), "classified"),
    (0, (0, -2, -3), "impossible"),
    (0, (1, -2, -3), "impossible"),
    (0, (-1, -1, -2), "classified"),
    (0, (-1, -2, -2), "classified"),
    (0, (-1, -2, -3), "unknown"),
    (0, (-2, -2, -2), "existence"),
    (0, (-2, -2, -3), "unknown"),
    (0, (-2, -2, -4), "unknown"),
    (0, (-2, -3, -3), "unknown"),
    (0, (2, -2, -2, -2), "impossible"),
    (0, (1, -2, -2, -2), "unknown"),
    (0, (0, -2, -2, -2), "existence"),
    (0, (-1, -2, -2, -2), "unknown"),
    (0, (-2, -2, -2, -2), "existence"),
    (0, (-2, -2, -2, -3), "unknown"),
    (0, (-2, -2, -2, -2, -2), "unknown"),
    (1, (-3,), "unknown"),
    (1, (-4,), "unknown"),
    (1, (0, 0), "impossible"),
    (1, (-1, -1), "unknown"),
    (1, (-2, -2), "unknown"),
    (1, (-2, -3), "unknown"),
    (1, (-2, -2, -2), "unknown"),
}

EXPECTED_4PI = {
    (0, (0,), "classified"),
    (0, (-4,), "classified"),
    (0, (-2, -2), "classified"),
    (0, (-2, -3), "impossible"),
    (0, (-2, -2, -2), "impossible"),
}


def test_enumerate_eight_pi_table():
    got = {(t.genus, t.end_orders, t.status) for t in enumerate_types(4.0)}
    assert got == EXPECTED_8PI


def test_enumerate_four_pi_table():
    got = {(t.genus, t.end_orders, t.status) for t in enumerate_types(2.0)}
    assert got == EXPECTED_4PI


def test_enumerate_four_pi_classified_surfaces():
    names = {t.end_orders: t.description for t in enumerate_types(2.0)
             if t.status == "classified"}
    assert names[(0,)] == "horosphere"
    assert names[(-4,)] == "Enneper cousins"
    assert "catenoid cousins" in names[(-2, -2)]


def test_enumerate_emits_the_five_impossible_sphere_types():
    bad = {t.label for t in enumerate_types(4.0)
           if t.status == "impossible" and t.genus == 0}
    assert bad == {"O(-1,-3)", "O(-2,-3)", "O(0,-2,-3)", "O(1,-2,-3)",
                   "O(2,-2,-2,-2)"}


def test_enumerate_end_count_bounds():
    types = enumerate_types(4.0)
    assert max(t.n for t in types if t.genus == 0) == 5
    assert max(t.n for t in types if t.genus == 1) == 3
    assert all(t.genus <= 1 for t in types)


def test_enumerate_is_sorted_and_labeled():
    types = enumerate_types(4.0)
    keys = [(t.genus, t.n) for t in types]
    assert keys == sorted(keys)
    assert types[0].label == "O(0)"
    assert any(t.label == "I(-2,-2)" for t in types)


def test_enumerate_records_rules():
    by_key = {t.key: t for t in enumerate_types(4.0)}
    assert "totally-umbilic-surface" in by_key[(0, (0,))].rules
    assert "angle-functional-bound" in by_key[(0, (2, -2, -2, -2))].rules
    assert "three-branch-points" in by_key[(1, (0, 0))].rules
    assert "dual-classification-absence" in by_key[(0, (-1, -3))].rules


def test_enumerate_variant_rows_survive_transcription():
    by_key = {t.key: t for t in enumerate_types(4.0)}
    cat = by_key[(0, (-2, -2))]
    assert ("(0,8pi]", "H1", "classified") in cat.variants
    assert by_key[(0, (-2, -4))].variants[1][2] == "existence"


def test_enumerate_generic_bound_stays_agnostic():
    types = enumerate_types(3.0)
    assert types
    assert all(t.status in ("unknown", "impossible") for t in types)


def test_enumerate_bound_validation():
    with pytest.raises(UnsupportedBound):
        enumerate_types(4.5)
    with pytest.raises(ValueError):
        enumerate_types(0.0)


def test_surface_type_validation():
    with pytest.raises(ValueError):
        SurfaceType(genus=0, end_orders=(-3, -2), status="maybe")
    with pytest.raises(ValueError):
        SurfaceType(genus=0, end_orders=(-3, -2))  # ascending order
    t = SurfaceType(genus=1, end_orders=(-2, -3))
    assert t.label == "I(-2,-3)"


# --- reducibility of cone metrics ------------------------------------------

def test_reducibility_examples():
    assert reducibility_classify((2.0, 3.0)) == "H3"
    mu = 0.3
    assert reducibility_classify((mu, -mu - 1.0, 2.0)) == "H1"
    assert reducibility_classify((0.5, 1.0, 1.0)) == "impossible"
    assert reducibility_classify((0.5, 1.5, 2.5)) == "irreducible-possible"


def test_reducibility_requires_orders():
    with pytest.raises(ValueError):
        reducibility_classify(())


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 5), st.integers(0, 4), st.randoms(use_true_random=False))
def test_reducibility_depends_only_on_nonintegral_count(n_int, n_non, rnd):
    if n_int + n_non == 0:
        return
    orders = [float(rnd.randint(-3, 5)) for _ in range(n_int)]
    orders += [rnd.randint(-3, 3) + rnd.uniform(0.05, 0.95)
               for _ in range(n_non)]
    rnd.shuffle(orders)
    expected = {0: "H3", 1: "impossible", 2: "H1"}.get(
        n_non, "irreducible-possible")
    assert reducibility_classify(orders) == expected


# --- canonical differentials -----------------------------------------------

def test_canonical_dg_residues_match_quadrature():
    # generic data, apexes to the right of the fractional-power branch point
    report = canonical_dg(
        divisor=[(0.3 + 0.2j, 0.7), (1.5 - 0.4j, 2.0)],
        alphas=[0.7, -4.0],
        apexes=[2.5 + 0.1j, 3.1 - 0.6j],
        beta_infinity=1.0,
    )
    assert not report.residue_free
    for apex, closed in zip(report.apexes, report.residues):
        quad = cx.residue(report.expr, apex)
        assert abs(quad - closed) < 1e-9 * max(1.0, abs(closed))


def test_canonical_dg_three_end_family_is_residue_free():
    for mu in (-0.9, -0.5, -0.2):
        a, b = _ab_closed_form(mu)
        report = canonical_dg(
            divisor=[(0.0, mu), (1.0, 3.0)],
            alphas=[mu, 3.0],
            apexes=[a, b],
            beta_infinity=-1.0 - mu,
        )
        assert report.residue_free
        assert max(abs(r) for r in report.residues) < 1e-10
        assert report.infinity_ok
        assert abs(report.infinity_exponent - (-1.0 - mu)) < 1e-12


def test_canonical_dg_infinity_bookkeeping_can_fail():
    a, b = _ab_closed_form(-0.5)
    report = canonical_dg(
        divisor=[(0.0, -0.5), (1.0, 3.0)],
        alphas=[-0.5, 3.0],
        apexes=[a, b],
        beta_infinity=0.25,
    )
    assert not report.infinity_ok


def test_canonical_dg_dual_exponent_choice():
    report = canonical_dg(
        divisor=[(0.0, 1.0)], alphas=[-3.0], apexes=[2.0],
        beta_infinity=1.0)
    assert report.alphas == (-3.0,)
    assert report.infinity_exponent == 3.0


def test_canonical_dg_rejects_bad_exponent():
    with pytest.raises(ValueError):
        canonical_dg(divisor=[(0.0, 1.0)], alphas=[0.5], apexes=[2.0],
                     beta_infinity=1.0)


def test_canonical_dg_rejects_colliding_points():
    with pytest.raises(ValueError):
        canonical_dg(divisor=[(0.0, 1.0)], alphas=[1.0], apexes=[0.0],
                     beta_infinity=1.0)
    with pytest.raises(ValueError):
        canonical_dg(divisor=[(0.0, 1.0)], alphas=[1.0], apexes=[2.0, 2.0],
                     beta_infinity=1.0)


# --- log-term coefficient --------------------------------------------------

def test_log_term_vanishes_for_scaling_equation():
    # z^2 X'' = 2 X has the pure power basis z^2, z^-1: no logarithm
    c = log_term_coefficient(FrobeniusProblem(
        cx.const(1.0), cx.term(2.0, (0.0, -2.0)), 0.0))
    assert abs(c) < 1e-12


def test_log_term_equal_roots_always_log():
    c = log_term_coefficient(FrobeniusProblem(
        cx.factor(0.0, -1.0), cx.const(1e-30), 0.0))
    assert c == 1.0


def test_log_term_single_gap_closed_form():
    # omega ~ z^-2 (z-1)^(-mu-2) (z-a)^2 (z-b)^2 at z = 0: the coefficient
    # is -(mu+2) + 2/a + 2/b, for any scale
    mu, a, b = -0.4, 1.7 + 0.3j, -2.2 + 1.1j
    omega = cx.term(2.3, (0.0, -2.0), (1.0, -mu - 2.0), (a, 2.0), (b, 2.0))
    qhat = cx.term(2.3, (0.7, 1.0), (1.0, -2.0))
    c = log_term_coefficient(FrobeniusProblem(omega, qhat, 0.0))
    closed = -(mu + 2) + 2 / a + 2 / b
    assert abs(c - closed) < 1e-6 * abs(closed)


def test_log_term_double_gap_hand_case():
    # omega ~ z^-3, q = const c: roots 0, -2; recursion gives exactly c/2
    for const in (0.8, 1.0 - 0.6j):
        c = log_term_coefficient(FrobeniusProblem(
            cx.factor(0.0, -3.0), cx.const(const), 0.0))
        assert abs(c - const / 2) < 1e-10


def test_log_term_three_end_family_closed_form():
    for mu in np.linspace(-0.9, -0.1, 9):
        a, b = _ab_closed_form(mu)
        omega = cx.term(1.0, (0.0, -mu - 2.0), (1.0, -2.0),
                        (a, 2.0), (b, 2.0))
        qhat = cx.term(1.0, (1.0, 1.0), (0.0, -2.0))
        c = log_term_coefficient(FrobeniusProblem(omega, qhat, 1.0))
        closed = -(mu + 2) / 3
        assert abs(c - closed) < 1e-6 * abs(closed)


def test_log_term_single_pole_family_closed_form():
    for mu in (-0.9, -0.5, -0.1):
        q = 4 / (mu + 2)
        omega = cx.term(1.0, (0.0, -2.0), (1.0, -mu - 2.0), (q, 4.0))
        qhat = cx.term(1.0, (q, 1.0), (1.0, -2.0))
        c = log_term_coefficient(FrobeniusProblem(omega, qhat, 0.0))
        closed = 4 / q - (mu + 2)
        assert abs(c - closed) < 1e-8


def test_log_term_independent_of_quadratic_scale():
    mu = -0.3
    a, b = _ab_closed_form(mu)
    vals = []
    for theta in (1.0, 3.7):
        omega = cx.term(theta, (0.0, -mu - 2.0), (1.0, -2.0),
                        (a, 2.0), (b, 2.0))
        qhat = cx.term(theta, (1.0, 1.0), (0.0, -2.0))
        vals.append(log_term_coefficient(FrobeniusProblem(omega, qhat, 1.0)))
    assert abs(vals[0] - vals[1]) < 1e-9


def test_log_term_validates_stated_roots():
    omega = cx.factor(0.0, -3.0)
    qhat = cx.const(0.5)
    good = log_term_coefficient(FrobeniusProblem(
        omega, qhat, 0.0, indicial_roots=(0.0, -2.0)))
    assert abs(good - 0.25) < 1e-10
    with pytest.raises(ValueError):
        log_term_coefficient(FrobeniusProblem(
            omega, qhat, 0.0, indicial_roots=(1.0, -2.0)))


def test_log_term_rejects_irregular_point():
    with pytest.raises(IrregularSingularPoint):
        log_term_coefficient(FrobeniusProblem(
            cx.const(1.0), cx.factor(0.0, -3.0), 0.0))


def test_log_term_rejects_nonintegral_gap():
    with pytest.raises(ValueError):
        log_term_coefficient(FrobeniusProblem(
            cx.factor(0.0, -0.5), cx.const(1e-30), 0.0))


# --- nonexistence certificates ---------------------------------------------

def test_certificate_ids_and_aliases():
    assert set(NONEXISTENCE_IDS) == {
        "O(-1,-3)/O(-2,-3)", "O(0,-2,-3)", "O(1,-2,-3)", "O(2,-2,-2,-2)"}
    cert = verify_nonexistence("O(-1,-3)")
    assert cert.prop_id == "O(-1,-3)/O(-2,-3)"
    with pytest.raises(ValueError):
        verify_nonexistence("O(-7)")


def test_certificate_dual_absence():
    cert = verify_nonexistence("O(-1,-3)/O(-2,-3)")
    assert cert.verdict == "impossible"
    assert cert.margin is None
    assert cert.targets == ((0, (-1, -3)), (0, (-2, -3)))
    for step in cert.details["steps"]:
        assert all(check.get("ok", True) for check in step["checks"])


def test_certificate_umbilic_family_collapse():
    cert = verify_nonexistence("O(0,-2,-3)", grid=7)
    assert cert.verdict == "impossible"
    assert cert.grid["max_collapse_deviation"] < 1e-8
    for row in cert.details["per_mu"]:
        case1, case2 = row["case1"], row["case2"]
        c = case1["collapse_value"]
        assert abs(case1["a"] - c) < 1e-8
        assert abs(case1["b"] - c) < 1e-8
        assert abs(case1["q"] - c) < 1e-8
        assert abs(row["case1_log_term_at_collapse"]) < 1e-8
        assert abs(case2["residue_quadratic"] - 2.0) < 1e-12
        assert abs(case2["residue"] - case2["residue_closed_form"]) < 1e-9
        assert abs(case2["log_term"]) < 1e-8


def test_certificate_log_obstruction():
    cert = verify_nonexistence("O(1,-2,-3)", grid=5)
    assert cert.verdict == "impossible"
    assert abs(cert.margin - 0.35) < 1e-9
    for row in cert.details["per_mu"]:
        assert abs(row["log_term"] - row["log_term_closed_form"]) < 1e-8
        assert max(abs(r) for r in row["apex_residues"]) < 1e-10
        assert row["infinity_ok"]


def test_certificate_angle_functional():
    cert = verify_nonexistence("O(2,-2,-2,-2)", grid=61)
    assert cert.verdict == "impossible"
    assert cert.margin > 0
    assert cert.grid["global_grid_min"] >= 1 - 1e-9
    for rep in cert.details["triples"]:
        m2, m3, m4 = rep["triple"]
        assert 1 <= m2 <= m3 <= m4 <= 12
        assert (m2 + m3 + m4) % 2 == 1 and m2 + m3 + m4 >= 7
        assert m2 + m3 != m4
        assert rep["grid_min"] >= 1 - 1e-9
        assert rep["interior_min"] > 1
        assert rep["partials_negative"]
        # endpoint samples carry sqrt-of-cancellation noise of order 1e-7
        assert rep["grid_min"] <= rep["boundary_closed_form_min"] + 1e-6


def test_angle_functional_boundary_closed_forms():
    rep = _phi_triple_report(1, 3, 3, 161)
    assert abs(rep["grid_min"] - 1.0) < 1e-6
    rep = _phi_triple_report(1, 1, 3, 161)
    assert abs(rep["grid_min"] - math.sqrt(5.0)) < 1e-6


def test_angle_functional_detects_degenerate_triple():
    with pytest.raises(GridTooCoarse):
        _phi_triple_report(1, 2, 3, 41)


def test_certificate_json_round_trip():
    cert = verify_nonexistence("O(-2,-3)")
    blob = json.loads(cert.to_json())
    assert blob["prop_id"] == "O(-1,-3)/O(-2,-3)"
    assert blob["verdict"] == "impossible"
