"""Green's function routes against analytic pole oracles and identities."""
from math import pi, sqrt

import numpy as np
import pytest

from lcusim.greens import (GreensSeries, degeneracy_average, fermion_system,
                           grid_normalize, ldos, lehmann_data, lehmann_greens,
                           majorana_check, majorana_operator, pole_series,
                           pole_table, resolvent_greens)
from lcusim.models import HubbardSpec, jw_operator
from lcusim.resolvent import fit_schedule


@pytest.fixture(scope="module")
def dimer():
    return fermion_system(HubbardSpec(sites=2))


def grid(lo=-10.0, hi=10.0, count=161):
    return np.linspace(lo, hi, count)


def test_ground_sector_of_the_dimer(dimer):
    assert dimer.ground_dim == 1
    assert abs(dimer.ground_energy - (-sqrt(20.0))) < 1e-9


def test_ground_sector_with_degeneracy():
    system = fermion_system(HubbardSpec(sites=3))
    assert system.ground_dim == 4


def test_atomic_limit_greens_is_two_half_weight_poles():
    """Zero hopping: after degeneracy averaging, G_00 has poles at +/- U/2
    with weight one half each."""
    interaction = 8.0
    system = fermion_system(HubbardSpec(sites=2, hopping=0.0, interaction=interaction))
    omegas = grid()
    delta = 0.1
    observed = lehmann_greens(system, 0, 0, omegas, delta)
    denom_p = omegas + 1j * delta - interaction / 2.0
    denom_h = omegas + 1j * delta + interaction / 2.0
    expected = 0.5 / denom_p + 0.5 / denom_h
    assert np.max(np.abs(observed.values - expected)) < 1e-10


def test_free_dimer_greens_has_tight_binding_poles():
    system = fermion_system(HubbardSpec(sites=2, interaction=0.0))
    omegas = grid()
    delta = 0.1
    observed = lehmann_greens(system, 0, 0, omegas, delta)
    expected = 0.5 / (omegas + 1j * delta - 1.0) + 0.5 / (omegas + 1j * delta + 1.0)
    assert np.max(np.abs(observed.values - expected)) < 1e-10


def test_interacting_dimer_pole_table_matches_closed_form(dimer):
    """U=8, t=1: particle poles at sqrt(20) -/+ 1 with weights (1 +/- 1/sqrt 5)/4,
    holes mirrored — from the analytic two-site solution."""
    data = lehmann_data(dimer, 0, 0, 0.1, dimer.ground_states[:, 0])
    positions, weights = pole_table(data)
    root = sqrt(20.0)
    expected_pos = np.array([-(root + 1.0), -(root - 1.0), root - 1.0, root + 1.0])
    heavy = (1.0 + 1.0 / sqrt(5.0)) / 4.0
    light = (1.0 - 1.0 / sqrt(5.0)) / 4.0
    expected_w = np.array([light, heavy, heavy, light])
    assert np.max(np.abs(positions - expected_pos)) < 1e-9
    assert np.max(np.abs(weights.real - expected_w)) < 1e-9
    assert np.max(np.abs(weights.imag)) < 1e-12


@pytest.mark.parametrize("sites", [2, 3])
def test_spectral_sum_rule(sites):
    system = fermion_system(HubbardSpec(sites=sites))
    for ground in system.ground_states.T:
        data = lehmann_data(system, 0, 0, 0.1, ground)
        assert abs(data.sum_rule() - 1.0) < 1e-9


@pytest.mark.parametrize("sites", [2, 3])
def test_lehmann_equals_exact_resolvent(sites):
    system = fermion_system(HubbardSpec(sites=sites))
    omegas = grid()
    lehmann = lehmann_greens(system, 0, 0, omegas, 0.1)
    exact = resolvent_greens(system, 0, 0, omegas, 0.1)
    assert np.max(np.abs(lehmann.values - exact.values)) < 1e-9


def test_lcu_resolvent_route_tracks_exact(dimer):
    omegas = grid()
    reach = float(np.max(np.abs(dimer.eig.values - dimer.ground_energy)))
    sched = fit_schedule(0.1, 0.05, norm_h=reach)
    exact = resolvent_greens(dimer, 0, 0, omegas, 0.1)
    lcu = resolvent_greens(dimer, 0, 0, omegas, 0.1, lcu=sched)
    assert lcu.mode == "resolvent-lcu"
    assert np.max(np.abs(lcu.values - exact.values)) <= 2 * 0.05


def test_resolvent_greens_validates_inputs(dimer):
    with pytest.raises(ValueError):
        resolvent_greens(dimer, 0, 0, grid(), 0.0)
    with pytest.raises(ValueError):
        resolvent_greens(dimer, 0, 0, grid(), 0.1, ground_states=np.ones(3))
    with pytest.raises(ValueError):
        resolvent_greens(dimer, 0, 0, grid(), 0.2, lcu=fit_schedule(0.1, 0.05))


def test_majorana_operators_are_hermitian_unitaries():
    num_modes = 4
    for mode in range(num_modes):
        for which in (0, 1):
            b = majorana_operator(num_modes, mode, which).toarray()
            assert np.max(np.abs(b - b.conj().T)) < 1e-12
            assert np.max(np.abs(b @ b - np.eye(2 ** num_modes))) < 1e-12


def test_majorana_combination_recovers_ladder_operator():
    num_modes = 4
    for mode in range(num_modes):
        b0 = majorana_operator(num_modes, mode, 0).toarray()
        b1 = majorana_operator(num_modes, mode, 1).toarray()
        create = jw_operator(num_modes, mode, "create").toarray()
        assert np.max(np.abs((b0 + 1j * b1) / 2.0 - create)) < 1e-12


@pytest.mark.parametrize("sites,j,jprime,omega", [(2, 0, 1, 0.5), (2, 0, 0, -2.2),
                                                  (3, 0, 2, -1.3)])
def test_majorana_expansion_identity(sites, j, jprime, omega):
    system = fermion_system(HubbardSpec(sites=sites))
    direct, expanded = majorana_check(system, j, jprime, omega, 0.1, 0.05)
    assert abs(direct - expanded) < 1e-10


def test_single_pole_series_is_a_lorentzian():
    broadening = 0.1
    omegas = np.linspace(-8.0, 12.0, 2001)
    series = pole_series(np.array([2.0]), np.array([1.0]), omegas, broadening)
    series.validate()
    density = ldos(series)
    peak_index = int(np.argmax(density.values))
    assert abs(omegas[peak_index] - 2.0) < 0.02
    assert abs(density.values[peak_index] - 1.0 / (pi * broadening)) < 0.01
    assert abs(density.integral() - 1.0) < 0.01
    normalized = grid_normalize(density)
    assert abs(normalized.integral() - 1.0) < 1e-12


def test_ldos_requires_diagonal_and_nonnegative():
    omegas = grid()
    off_diagonal = pole_series(np.array([1.0]), np.array([0.5]), omegas, 0.1, jprime=1)
    with pytest.raises(ValueError):
        ldos(off_diagonal)
    flipped = GreensSeries(omegas=omegas, values=0.5j * np.ones_like(omegas),
                           mode="lehmann", broadening=0.1, j=0, jprime=0)
    with pytest.raises(ValueError):
        ldos(flipped)
    with pytest.raises(ValueError):
        flipped.validate()


def test_series_validate_rejects_unknown_mode():
    series = GreensSeries(omegas=grid(), values=np.zeros(161, dtype=complex),
                          mode="mystery", broadening=0.1, j=0, jprime=0)
    with pytest.raises(ValueError):
        series.validate()


def test_grid_normalize_rejects_zero_density():
    flat = ldos(GreensSeries(omegas=grid(), values=np.zeros(161, dtype=complex),
                             mode="lehmann", broadening=0.1, j=0, jprime=0))
    with pytest.raises(ValueError):
        grid_normalize(flat)


def test_ldos_particle_hole_symmetry_on_even_chain(dimer):
    omegas = grid(count=201)
    density = ldos(resolvent_greens(dimer, 0, 0, omegas, 0.1))
    assert np.max(np.abs(density.values - density.values[::-1])) < 1e-6


def test_degeneracy_average_weights():
    weights = degeneracy_average(np.eye(4)[:, :3])
    assert np.max(np.abs(weights - 1.0 / 3.0)) < 1e-15
    with pytest.raises(ValueError):
        degeneracy_average(np.zeros((4, 0)))
