"""Resolvent LCU schedule and filter against quadrature and inverse oracles."""
from math import exp, log

import numpy as np
import pytest
import scipy.integrate

from lcusim.linalg import EigenDecomposition, eig_hermitian
from lcusim.models import HubbardSpec, build_hubbard, normalize_spectrum
from lcusim.resolvent import (certify, exact_resolvent, filter_values,
                              filter_values_direct, fit_schedule, lcu_resolvent,
                              resolvent_values, truncation_bound, truncation_tail)

STANDARD = dict(broadening=0.1, eps=0.05, norm_h=1.0)


def test_schedule_reference_point():
    sched = fit_schedule(**STANDARD)
    assert abs(sched.t_cut - 10.0 * log(400.0)) < 1e-12
    assert sched.dt == 0.025
    assert sched.n_c == 2397
    assert len(sched.alphas) == 2398
    # l1 close to 1/Gamma: within (1/Gamma)(1 +/- Gamma*eps)
    assert 10.0 * (1.0 - 0.1 * 0.05) <= sched.l1 <= 10.0 * (1.0 + 0.1 * 0.05)
    assert abs(sched.l1 - np.sum(sched.alphas)) < 1e-12


def test_schedule_step_capped_by_operator_norm():
    sched = fit_schedule(0.1, 0.9, norm_h=10.0)
    assert sched.dt == 0.3


def test_schedule_refined_step_is_cubic_in_eps():
    eps, width = 0.05, 2.0
    sched = fit_schedule(0.1, eps, norm_h=2.0, width=width)
    expected = eps - (width / 3.0) * eps ** 2 + (2.0 * width ** 2 / 9.0) * eps ** 3
    assert abs(sched.dt - expected) < 1e-15
    assert sched.refined


def test_schedule_rejects_bad_parameters():
    for kwargs in (dict(broadening=0.0, eps=0.05), dict(broadening=0.1, eps=1.5),
                   dict(broadening=0.1, eps=0.05, norm_h=0.0),
                   dict(broadening=0.1, eps=0.05, width=-1.0)):
        with pytest.raises(ValueError):
            fit_schedule(**kwargs)


def test_query_cost_matches_analytic_form():
    sched = fit_schedule(**STANDARD)
    analytic = log(2.0 / (0.1 * 0.05)) / 0.1 ** 2
    assert abs(sched.query_cost - analytic) <= 0.005 * analytic


def test_truncation_tail_below_analytic_bound():
    for eps in (0.05, 0.01):
        sched = fit_schedule(0.1, eps)
        assert truncation_tail(sched) <= truncation_bound(sched)
        assert truncation_bound(sched) <= eps / 2.0 + 1e-12


def test_closed_form_equals_direct_sum():
    sched = fit_schedule(**STANDARD)
    lam = np.linspace(0.0, 1.0, 37)
    for omega in (0.0, 0.31, 0.97):
        closed = filter_values(sched, lam, omega)
        direct = filter_values_direct(sched, lam, omega)
        assert np.max(np.abs(closed - direct)) < 1e-10


def test_scalar_resolvent_value():
    """1x1 zero Hamiltonian at omega = 0: the filter approximates -10i."""
    eig = EigenDecomposition(values=np.zeros(1), vectors=np.eye(1, dtype=complex))
    sched = fit_schedule(0.1, 0.001)
    value = lcu_resolvent(eig, 0.0, sched, np.ones(1, dtype=complex))[0]
    assert abs(value - (-10.0j)) <= 0.001


def test_far_from_spectrum_magnitude():
    """|omega - lam| >> Gamma: entries approach 1/|omega - lam| within eps."""
    values = np.array([0.0, 0.2, 0.5])
    eig = EigenDecomposition(values=values, vectors=np.eye(3, dtype=complex))
    sched = fit_schedule(**STANDARD)
    omega = 5.0
    for k, lam in enumerate(values):
        unit = np.zeros(3, dtype=complex)
        unit[k] = 1.0
        entry = lcu_resolvent(eig, omega, sched, unit)[k]
        assert abs(abs(entry) - 1.0 / abs(omega - lam)) <= 0.05


def test_exact_resolvent_identity_check():
    ham = build_hubbard(HubbardSpec(sites=2))
    eig = eig_hermitian(ham)
    rng = np.random.default_rng(4)
    psi = rng.standard_normal(eig.dim) + 1j * rng.standard_normal(eig.dim)
    psi /= np.linalg.norm(psi)
    omega, broadening = 0.7, 0.1
    applied = exact_resolvent(eig, omega, broadening, psi)
    undone = (omega + 1j * broadening) * applied - ham @ applied
    assert np.max(np.abs(undone - psi)) < 1e-10
    with pytest.raises(ValueError):
        exact_resolvent(eig, omega, 0.0, psi)


def test_quadrature_oracle_matches_within_truncation_bound():
    """Numerically integrating -i e^{i(omega + iG - lam)t} on [0, t_cut]
    lands within e^{-G t_cut}/G of the true scalar resolvent."""
    broadening, lam, omega = 0.1, 0.35, 0.6
    sched = fit_schedule(broadening, 0.05)

    def integrand_real(t):
        return (-1j * np.exp(1j * (omega + 1j * broadening - lam) * t)).real

    def integrand_imag(t):
        return (-1j * np.exp(1j * (omega + 1j * broadening - lam) * t)).imag

    real, _ = scipy.integrate.quad(integrand_real, 0.0, sched.t_cut, limit=400)
    imag, _ = scipy.integrate.quad(integrand_imag, 0.0, sched.t_cut, limit=400)
    exact = resolvent_values(broadening, np.array([lam]), omega)[0]
    assert abs((real + 1j * imag) - exact) <= truncation_bound(sched)


def test_certify_standard_schedule_on_small_chain():
    system = normalize_spectrum(build_hubbard(HubbardSpec(sites=2)))
    sched = fit_schedule(**STANDARD)
    omegas = np.linspace(0.0, 1.0, 41)
    records = certify(system.eig, omegas, sched)
    assert len(records) == 41
    assert max(rec.error_norm for rec in records) <= 0.05
    assert all(rec.n_c == 2397 for rec in records)


def test_halved_eps_tightens_certification():
    system = normalize_spectrum(build_hubbard(HubbardSpec(sites=2)))
    omegas = np.linspace(0.0, 1.0, 21)
    loose = max(r.error_norm for r in certify(system.eig, omegas, fit_schedule(0.1, 0.05)))
    tight = max(r.error_norm for r in certify(system.eig, omegas, fit_schedule(0.1, 0.025)))
    assert tight <= loose
    assert tight <= 0.025


def test_doubling_broadening_shrinks_term_count_superlinearly():
    base = fit_schedule(0.1, 0.05)
    doubled = fit_schedule(0.2, 0.05)
    assert 2 * doubled.n_c < base.n_c
