"""Product-formula error measurements against the analytic envelopes."""
import itertools

import numpy as np
import pytest

from cliffsim import linalg, trotter
from cliffsim.clifford import Blade
from cliffsim.trotter import HamiltonianTerm

X_TERM = HamiltonianTerm(0.7, Blade(1, (0,)))
Y_TERM = HamiltonianTerm(0.4, Blade(1, (1,)))

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_exact_unitary_empty_terms():
    np.testing.assert_allclose(trotter.exact_unitary([], 2.0), np.eye(2), atol=1e-14)


def test_exact_unitary_single_term_closed_form():
    t = 0.9
    got = trotter.exact_unitary([X_TERM], t)
    want = np.cos(0.7 * t) * I2 - 1j * np.sin(0.7 * t) * X
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_commuting_terms_factorize():
    # the {0,1} and {2,3} blades are -I(x)Z and -Z(x)I, which commute
    terms = [HamiltonianTerm(0.3, Blade(2, (0, 1))), HamiltonianTerm(0.8, Blade(2, (2, 3)))]
    t = 1.1
    exact = trotter.exact_unitary(terms, t)
    split = (linalg.expm_i(terms[0].dense(), -t) @ linalg.expm_i(terms[1].dense(), -t))
    np.testing.assert_allclose(exact, split, atol=1e-12)
    for r in (1, 3, 10):
        np.testing.assert_allclose(trotter.product_formula(terms, t, r), exact, atol=1e-10)
        assert trotter.trotter_report(terms, t, r).measured_error <= 1e-10


def test_single_term_product_formula_is_exact():
    for r in (1, 7):
        np.testing.assert_allclose(
            trotter.product_formula([X_TERM], 1.3, r),
            trotter.exact_unitary([X_TERM], 1.3), atol=1e-12)


def test_product_formula_rejects_r_zero():
    with pytest.raises(ValueError):
        trotter.product_formula([X_TERM], 1.0, 0)


def test_mixed_registers_rejected():
    with pytest.raises(ValueError):
        trotter.exact_unitary([X_TERM, HamiltonianTerm(1.0, Blade(2, (0,)))], 1.0)


def test_first_order_error_ratio():
    e10 = trotter.trotter_report([X_TERM, Y_TERM], 1.0, 10).measured_error
    e100 = trotter.trotter_report([X_TERM, Y_TERM], 1.0, 100).measured_error
    assert 8.0 <= e10 / e100 <= 12.0


def test_bound_full_holds_on_sweep():
    for r in (1, 2, 5, 10, 20, 50, 100):
        rep = trotter.trotter_report([X_TERM, Y_TERM], 1.0, r)
        assert rep.measured_error <= rep.bound_full + 1e-12
        assert rep.bound_full == pytest.approx(
            rep.bound_simple * np.exp(2 * 0.7 * 1.0 / r), rel=1e-12)


def test_error_vanishes_with_r():
    e10 = trotter.trotter_report([X_TERM, Y_TERM], 1.0, 10).measured_error
    e1000 = trotter.trotter_report([X_TERM, Y_TERM], 1.0, 1000).measured_error
    assert e1000 < e10


def test_product_formula_unitary():
    terms = trotter.random_instance(2, 4, seed=11)
    for r in (1, 10):
        assert linalg.unitarity_defect(trotter.product_formula(terms, 2.0, r)) <= 1e-10


def test_reordering_within_shared_envelope():
    terms = trotter.random_instance(2, 4, seed=11)
    base = trotter.trotter_report(terms, 1.0, 20)
    shuffled = list(terms)[::-1]
    other = trotter.trotter_report(shuffled, 1.0, 20)
    assert abs(base.measured_error - other.measured_error) <= 2.0 * base.bound_simple


def test_loglog_slope_is_minus_one():
    terms = trotter.random_instance(2, 4, seed=11)
    rs = [10, 18, 32, 56, 100, 178, 316, 562, 1000]
    reports = trotter.error_sweep(terms, 1.0, rs)
    errs = np.array([rep.measured_error for rep in reports])
    slope = np.polyfit(np.log(rs), np.log(errs), 1)[0]
    assert -1.1 <= slope <= -0.9


def test_error_sweep_matches_individual_reports():
    reports = trotter.error_sweep([X_TERM, Y_TERM], 0.7, [4, 16])
    for rep in reports:
        single = trotter.trotter_report([X_TERM, Y_TERM], 0.7, rep.r)
        assert rep.measured_error == pytest.approx(single.measured_error, abs=1e-12)
        assert rep.bound_full == single.bound_full


def test_noncommuting_pair_count():
    assert trotter.noncommuting_pair_count([X_TERM, Y_TERM]) == 1
    commuting = [HamiltonianTerm(1.0, Blade(2, (0, 1))), HamiltonianTerm(1.0, Blade(2, (2, 3)))]
    assert trotter.noncommuting_pair_count(commuting) == 0


def test_random_instance_properties():
    terms = trotter.random_instance(2, 4, seed=5)
    assert terms == trotter.random_instance(2, 4, seed=5)
    blades = [term.blade.indices for term in terms]
    assert len(set(blades)) == 4
    assert all(term.blade.indices for term in terms)  # identity excluded
    assert all(0.2 <= abs(term.coeff) <= 1.0 for term in terms)


def test_report_fields_consistent():
    rep = trotter.trotter_report([X_TERM, Y_TERM], 2.0, 8)
    assert rep.r == 8 and rep.t == 2.0
    assert rep.omega == 1
    assert rep.measured_error >= 0.0
    assert rep.bound_commutator >= 0.0
