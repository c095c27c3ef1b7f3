"""Retarded single-particle Green's functions and local density of states.

Two routes to G^R_{jj'}(omega) for spin-up orbitals at half filling (mu = 0):

  * lehmann: explicit pole sum over particle poles E_alpha - E0 with weights
    conj(M_j'^a) M_j^a, M_j^a = <alpha|c+_j|g>, and hole poles -(E_beta - E0)
    with weights conj(L_j^b) L_j'^b, L_j^b = <beta|c_j|g>.
  * resolvent: <g|c_j' R(omega+iG, H-E0) c+_j|g> + <g|c+_j R(omega+iG, E0-H) c_j'|g>,
    with R either exact or the Fourier-Laplace LCU filter.

Sector restriction is automatic: c+_j|g> lies in the (N+1)-particle sector and
the Hamiltonian conserves particle number, so cross-sector weights vanish.
Degenerate ground spaces are handled by uniform averaging of G over an
orthonormal ground basis. The Majorana identity rewrites each route through
the Hermitian unitaries b0 = c + c+, b1 = i(c - c+).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .linalg import EigenDecomposition, eig_hermitian
from .models import DEGENERACY_ATOL, FermionModeMap, HubbardSpec, build_hubbard, jw_operator, number_operator
from .resolvent import FitSchedule, filter_values, resolvent_values

LDOS_NEGATIVE_ATOL = 1e-9
_WEIGHT_FLOOR = 1e-14

MODES = ("lehmann", "resolvent-exact", "resolvent-lcu")


@dataclass(frozen=True)
class FermionSystem:
    """Full-Fock diagonalization with the half-filling ground sector resolved."""

    sites: int
    eig: EigenDecomposition
    ground_states: np.ndarray  # columns: orthonormal, sharp particle number
    ground_energy: float

    @property
    def ground_dim(self) -> int:
        return self.ground_states.shape[1]


def fermion_system(spec: HubbardSpec) -> FermionSystem:
    """Diagonalize the model and extract the half-filling ground basis."""
    eig = eig_hermitian(build_hubbard(spec))
    e0 = float(eig.values[0])
    basis = eig.vectors[:, eig.values <= e0 + DEGENERACY_ATOL]
    # rotate the degenerate basis to sharp particle number, keep N = sites
    n_block = basis.conj().T @ (number_operator(spec.sites) @ basis)
    n_values, rot = np.linalg.eigh(n_block)
    basis = basis @ rot
    keep = np.abs(n_values - spec.sites) < 1e-6
    if not np.any(keep):
        raise ValueError("half-filling ground sector is empty")
    return FermionSystem(sites=spec.sites, eig=eig, ground_states=basis[:, keep],
                         ground_energy=e0)


def degeneracy_average(ground_states: np.ndarray) -> np.ndarray:
    """Uniform weights for averaging over an orthonormal ground basis."""
    count = ground_states.shape[1]
    if count == 0:
        raise ValueError("ground basis is empty")
    return np.full(count, 1.0 / count)


@dataclass(frozen=True)
class LehmannData:
    """Pole data of G_{jj'} for one ground state: energies and orbital weights."""

    ground_energy: float
    energies: np.ndarray  # full-spectrum eigenvalues (particle and hole alike)
    particle_j: np.ndarray  # <alpha|c+_j|g>
    particle_jp: np.ndarray  # <alpha|c+_j'|g>
    hole_j: np.ndarray  # <beta|c_j|g>
    hole_jp: np.ndarray  # <beta|c_j'|g>
    delta: float

    def sum_rule(self) -> float:
        """Total pole weight of the diagonal orbital j; equals 1 exactly."""
        return float(np.sum(np.abs(self.particle_j) ** 2)
                     + np.sum(np.abs(self.hole_j) ** 2))

    def greens_on(self, omegas: np.ndarray) -> np.ndarray:
        omegas = np.asarray(omegas, dtype=float)
        excite = self.energies - self.ground_energy
        particle = np.conj(self.particle_jp) * self.particle_j
        hole = np.conj(self.hole_j) * self.hole_jp
        shifted = omegas[:, None] + 1j * self.delta
        return ((particle / (shifted - excite)).sum(axis=1)
                + (hole / (shifted + excite)).sum(axis=1))


def lehmann_data(system: FermionSystem, j: int, jprime: int, delta: float,
                 ground: np.ndarray) -> LehmannData:
    """Pole weights of G_{jj'} (spin up) for one normalized ground state."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    modes = FermionModeMap(system.sites)
    num_modes = 2 * system.sites
    adjoint = system.eig.vectors.conj().T
    create_j = jw_operator(num_modes, modes.mode(j, 0), "create")
    create_jp = jw_operator(num_modes, modes.mode(jprime, 0), "create")
    return LehmannData(
        ground_energy=system.ground_energy,
        energies=system.eig.values,
        particle_j=adjoint @ (create_j @ ground),
        particle_jp=adjoint @ (create_jp @ ground),
        hole_j=adjoint @ (create_j.conj().T @ ground),
        hole_jp=adjoint @ (create_jp.conj().T @ ground),
        delta=delta)


def pole_table(data: LehmannData, atol: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    """Aggregate (position, weight) pole pairs of G_{jj'}, sorted by position."""
    excite = data.energies - data.ground_energy
    positions = np.concatenate([excite, -excite])
    weights = np.concatenate([np.conj(data.particle_jp) * data.particle_j,
                              np.conj(data.hole_j) * data.hole_jp])
    order = np.argsort(positions)
    positions, weights = positions[order], weights[order]
    merged_pos: list[float] = []
    merged_w: list[complex] = []
    for pos, w in zip(positions, weights):
        if merged_pos and abs(pos - merged_pos[-1]) <= atol:
            total = merged_w[-1] + w
            merged_pos[-1] = (merged_pos[-1] + pos) / 2.0
            merged_w[-1] = total
        else:
            merged_pos.append(float(pos))
            merged_w.append(complex(w))
    out_pos = np.array(merged_pos)
    out_w = np.array(merged_w)
    keep = np.abs(out_w) > _WEIGHT_FLOOR
    return out_pos[keep], out_w[keep]


@dataclass(frozen=True)
class GreensSeries:
    """G_{jj'} sampled on a frequency grid, tagged with its construction route."""

    omegas: np.ndarray
    values: np.ndarray
    mode: str
    broadening: float
    j: int
    jprime: int

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.j == self.jprime:
            worst = float(np.max(np.imag(self.values)))
            if worst > 1e-12:
                raise ValueError(
                    f"retarded diagonal must have nonpositive imaginary part; max {worst:.3e}")


def pole_series(positions: np.ndarray, weights: np.ndarray, omegas: np.ndarray,
                delta: float, *, j: int = 0, jprime: int = 0,
                mode: str = "lehmann") -> GreensSeries:
    """Assemble sum_p w_p / (omega + i delta - x_p) on a grid."""
    omegas = np.asarray(omegas, dtype=float)
    denom = omegas[:, None] + 1j * delta - np.asarray(positions)[None, :]
    values = (np.asarray(weights)[None, :] / denom).sum(axis=1)
    return GreensSeries(omegas=omegas, values=values, mode=mode,
                        broadening=delta, j=j, jprime=jprime)


def lehmann_greens(system: FermionSystem, j: int, jprime: int, omegas: np.ndarray,
                   delta: float) -> GreensSeries:
    """G_{jj'} by the explicit pole sum, averaged over the ground basis."""
    omegas = np.asarray(omegas, dtype=float)
    weights = degeneracy_average(system.ground_states)
    total = np.zeros(omegas.shape, dtype=complex)
    for weight, ground in zip(weights, system.ground_states.T):
        total += weight * lehmann_data(system, j, jprime, delta, ground).greens_on(omegas)
    return GreensSeries(omegas=omegas, values=total, mode="lehmann",
                        broadening=delta, j=j, jprime=jprime)


def _pair_values(eig: EigenDecomposition, left: np.ndarray, right: np.ndarray,
                 kernel: np.ndarray) -> np.ndarray:
    """<left| K(H) |right> for a (n_omega, dim) kernel of eigenvalue functions."""
    overlap = np.conj(eig.vectors.conj().T @ left) * (eig.vectors.conj().T @ right)
    return kernel @ overlap


def resolvent_greens(system: FermionSystem, j: int, jprime: int, omegas: np.ndarray,
                     broadening: float, *, lcu: FitSchedule | None = None,
                     ground_states: np.ndarray | None = None,
                     ground_energy: float | None = None) -> GreensSeries:
    """G_{jj'} through broadened resolvents of H - E0 (particle) and E0 - H (hole).

    With lcu=None the resolvents are exact; otherwise both are replaced by the
    Fourier-Laplace LCU filter of the given schedule. Ground states (columns)
    and the reference energy default to the exact ones in the system.
    """
    if broadening <= 0:
        raise ValueError("broadening must be positive")
    omegas = np.asarray(omegas, dtype=float)
    if ground_states is None:
        ground_states = system.ground_states
    if ground_states.ndim == 1:
        ground_states = ground_states[:, None]
    if ground_states.shape[0] != system.eig.dim:
        raise ValueError("ground states do not match the system dimension")
    e0 = system.ground_energy if ground_energy is None else ground_energy
    excite = system.eig.values - e0

    if lcu is None:
        particle_kernel = np.stack([resolvent_values(broadening, excite, w) for w in omegas])
        hole_kernel = np.stack([resolvent_values(broadening, -excite, w) for w in omegas])
        mode = "resolvent-exact"
    else:
        if lcu.broadening != broadening:
            raise ValueError("schedule broadening disagrees with the requested one")
        particle_kernel = np.stack([filter_values(lcu, excite, w) for w in omegas])
        hole_kernel = np.stack([filter_values(lcu, -excite, w) for w in omegas])
        mode = "resolvent-lcu"

    modes = FermionModeMap(system.sites)
    num_modes = 2 * system.sites
    create_j = jw_operator(num_modes, modes.mode(j, 0), "create")
    create_jp = jw_operator(num_modes, modes.mode(jprime, 0), "create")
    weights = degeneracy_average(ground_states)
    total = np.zeros(omegas.shape, dtype=complex)
    for weight, ground in zip(weights, ground_states.T):
        particle = _pair_values(system.eig, create_jp @ ground, create_j @ ground,
                                particle_kernel)
        hole = _pair_values(system.eig, create_j.conj().T @ ground,
                            create_jp.conj().T @ ground, hole_kernel)
        total += weight * (particle + hole)
    return GreensSeries(omegas=omegas, values=total, mode=mode,
                        broadening=broadening, j=j, jprime=jprime)


def majorana_operator(num_modes: int, mode: int, which: int) -> sparse.csr_matrix:
    """Hermitian unitary b0 = c + c+ (which=0) or b1 = i(c - c+) (which=1)."""
    create = jw_operator(num_modes, mode, "create")
    annihilate = jw_operator(num_modes, mode, "annihilate")
    if which == 0:
        return (annihilate + create).tocsr()
    if which == 1:
        return (1j * (annihilate - create)).tocsr()
    raise ValueError("which must be 0 or 1")


def majorana_check(system: FermionSystem, j: int, jprime: int, omega: float,
                   broadening: float, eps: float) -> tuple[complex, complex]:
    """Evaluate G_{jj'}(omega) by the LCU resolvent in fermion and Majorana form.

    Returns (direct, majorana): the direct value uses c / c+ states; the second
    expands each term over the four b-operator pairs with the 1/4 prefactor.
    The two are algebraically identical.
    """
    from .resolvent import fit_schedule, lcu_resolvent

    modes = FermionModeMap(system.sites)
    num_modes = 2 * system.sites
    e0 = system.ground_energy
    norm_h = float(np.max(np.abs(system.eig.values - e0)))
    sched = fit_schedule(broadening, eps, norm_h)
    shifted = EigenDecomposition(values=system.eig.values - e0, vectors=system.eig.vectors)
    negated = EigenDecomposition(values=e0 - system.eig.values, vectors=system.eig.vectors)

    create_j = jw_operator(num_modes, modes.mode(j, 0), "create")
    create_jp = jw_operator(num_modes, modes.mode(jprime, 0), "create")
    b_j = [majorana_operator(num_modes, modes.mode(j, 0), w) for w in (0, 1)]
    b_jp = [majorana_operator(num_modes, modes.mode(jprime, 0), w) for w in (0, 1)]

    weights = degeneracy_average(system.ground_states)
    direct = 0j
    majorana = 0j
    for weight, ground in zip(weights, system.ground_states.T):
        plus_j = lcu_resolvent(shifted, omega, sched, create_j @ ground)
        minus_jp = lcu_resolvent(negated, omega, sched, create_jp.conj().T @ ground)
        direct += weight * (np.vdot(create_jp @ ground, plus_j)
                            + np.vdot(create_j.conj().T @ ground, minus_jp))

        def expect(left_op, kernel_eig, right_op):
            return np.vdot(left_op @ ground,
                           lcu_resolvent(kernel_eig, omega, sched, right_op @ ground))

        particle = 0.25 * (expect(b_jp[0], shifted, b_j[0])
                           + 1j * expect(b_jp[0], shifted, b_j[1])
                           - 1j * expect(b_jp[1], shifted, b_j[0])
                           + expect(b_jp[1], shifted, b_j[1]))
        hole = 0.25 * (expect(b_j[0], negated, b_jp[0])
                       - 1j * expect(b_j[0], negated, b_jp[1])
                       + 1j * expect(b_j[1], negated, b_jp[0])
                       + expect(b_j[1], negated, b_jp[1]))
        majorana += weight * (particle + hole)
    return complex(direct), complex(majorana)


@dataclass(frozen=True)
class LdosSeries:
    """Nonnegative spectral density on a grid with its normalization factor."""

    omegas: np.ndarray
    values: np.ndarray
    normalization: float  # divisor applied so far (1.0 = raw)

    def integral(self) -> float:
        return float(np.trapezoid(self.values, self.omegas))


def ldos(series: GreensSeries) -> LdosSeries:
    """Local density of states -(1/pi) Im G_{jj} of a diagonal series."""
    if series.j != series.jprime:
        raise ValueError("LDOS requires a diagonal element (j == jprime)")
    values = -np.imag(series.values) / np.pi
    worst = float(np.min(values))
    if worst < -LDOS_NEGATIVE_ATOL:
        raise ValueError(f"LDOS negative beyond tolerance: min {worst:.3e}")
    return LdosSeries(omegas=series.omegas, values=np.clip(values, 0.0, None),
                      normalization=1.0)


def grid_normalize(series: LdosSeries) -> LdosSeries:
    """Rescale so the trapezoid integral over the grid equals one."""
    total = series.integral()
    if total <= 0:
        raise ValueError("cannot normalize a zero density")
    return LdosSeries(omegas=series.omegas, values=series.values / total,
                      normalization=series.normalization * total)
