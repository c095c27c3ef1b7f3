"""Projective ground-state preparation by Gaussian-filter LCUs.

Two filters are implemented against their exact spectral counterparts:

  * Hubbard-Stratonovich (hs): e^{-t^2 H^2 / 2} decomposed as a Gaussian-
    weighted sum of time evolutions e^{-i z_k t H} on a uniform z grid.
  * Binomial cosine power (geCosM): cos^M(H - lam0_reported + tau) decomposed
    as a binomial-weighted sum of evolutions, truncated to a window of m0
    terms around k = M/2.

Both may also act through an amplified block operator (hs+gapamp), where the
same coefficients multiply evolutions of H_r instead.

The target infidelity eps sets eta = sqrt(2*eps)/5; all cutoffs derive from
the product gamma*eta, gamma being the trial state's ground-space overlap.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, sqrt, log, pi

import numpy as np
from scipy import stats

from .gapamp import AmplifiedHamiltonian, embed, gaussian_of_square, lcu_evolution_sum, project_zero
from .linalg import EigenDecomposition
from .models import NormalizedHamiltonian


def infidelity_target_eta(eps: float) -> float:
    """Map a target infidelity to the operator-error budget eta."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return sqrt(2.0 * eps) / 5.0


def _check_targets(delta: float, gamma: float, eps: float) -> float:
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    eta = infidelity_target_eta(eps)
    if gamma * eta >= 1:
        raise ValueError("gamma*eta must be below 1")
    return eta


@dataclass(frozen=True)
class HsSchedule:
    """Discretized Hubbard-Stratonovich Gaussian filter at strength t.

    t_bound is the smallest t guaranteeing the target infidelity; sweeps
    evaluate the same construction at smaller t. z_cut truncates the
    quadrature grid; the step uses the widened cutoff z_cut_wide by default.
    """

    delta: float
    gamma: float
    eps: float
    eta: float
    t: float
    t_bound: float
    z_cut: float
    z_cut_wide: float
    dz: float
    n_z: int
    tightened: bool

    @property
    def z(self) -> np.ndarray:
        return self.dz * np.arange(-self.n_z, self.n_z + 1)

    @property
    def alphas(self) -> np.ndarray:
        z = self.z
        return self.dz / sqrt(2 * pi) * np.exp(-0.5 * z * z)

    @property
    def l1(self) -> float:
        return float(np.sum(self.alphas))

    @property
    def t_hamiltonian(self) -> float:
        """Max Hamiltonian-time resource t_H = t * z_cut."""
        return self.t * self.z_cut


def hs_schedule(delta: float, gamma: float, eps: float, *, t: float | None = None,
                tightened: bool = True) -> HsSchedule:
    """Build the Gaussian-filter schedule for gap delta, overlap gamma, target eps."""
    eta = _check_targets(delta, gamma, eps)
    ge = gamma * eta
    t_bound = sqrt(2.0 * log(1.0 / ge)) / delta
    z_cut = sqrt(2.0 * log(2.0 / ge))
    z_cut_wide = sqrt(z_cut ** 2 + np.arccosh(pi * z_cut ** 2 / 4.0 + 1.0))
    if t is None:
        t = t_bound
    if t < 0:
        raise ValueError("t must be nonnegative")
    dz = 2.0 * pi / ((z_cut_wide if tightened else z_cut) + t)
    n_z = ceil(z_cut / dz)
    return HsSchedule(delta=delta, gamma=gamma, eps=eps, eta=eta, t=t, t_bound=t_bound,
                      z_cut=z_cut, z_cut_wide=z_cut_wide, dz=dz, n_z=n_z,
                      tightened=tightened)


def hs_truncation_tail(sched: HsSchedule) -> float:
    """Discrete Gaussian weight dropped beyond the z cutoff (both tails)."""
    # sum until terms vanish at double precision
    k = np.arange(sched.n_z + 1, sched.n_z + 1 + ceil(60.0 / sched.dz))
    z = k * sched.dz
    return float(2.0 / sqrt(2 * pi) * sched.dz * np.sum(np.exp(-0.5 * z * z)))


def hs_filter_values(sched: HsSchedule, lam: np.ndarray) -> np.ndarray:
    """LCU filter h(lam) = sum_k alpha_k e^{-i z_k t lam} on an eigenvalue array."""
    lam = np.asarray(lam, dtype=float)
    phases = np.exp(-1j * sched.t * np.outer(sched.z, lam))
    return sched.alphas @ phases


def hs_exact_values(t: float, lam: np.ndarray) -> np.ndarray:
    """Exact Gaussian filter e^{-t^2 lam^2 / 2}."""
    lam = np.asarray(lam, dtype=float)
    return np.exp(-0.5 * t * t * lam * lam)


@dataclass(frozen=True)
class GeSchedule:
    """Truncated binomial cos^M filter at power M (even).

    The window keeps the 2*m0+1 central binomial terms; tau shifts the cosine
    argument so the ground energy sits slightly inside the lobe.
    """

    delta: float
    gamma: float
    eps: float
    eta: float
    power: int
    power_bound: int
    m0: int
    tau: float
    tightened: bool = True

    @property
    def ks(self) -> np.ndarray:
        lo = max(self.power // 2 - self.m0, 0)
        hi = min(self.power // 2 + self.m0, self.power)
        return np.arange(lo, hi + 1)

    @property
    def weights(self) -> np.ndarray:
        return stats.binom.pmf(self.ks, self.power, 0.5)

    @property
    def l1(self) -> float:
        return float(np.sum(self.weights))

    @property
    def t_hamiltonian(self) -> float:
        """t_H = 2*min(ceil(sqrt((M/2) log(2/gamma eta))), M/2)."""
        if self.power == 0:
            return 0.0
        ge = self.gamma * self.eta
        return 2.0 * min(ceil(sqrt((self.power / 2.0) * log(2.0 / ge))), self.power // 2)


def ge_schedule(delta: float, gamma: float, eps: float, *, power: int | None = None) -> GeSchedule:
    """Build the truncated cos^M schedule; power defaults to its guarantee bound."""
    eta = _check_targets(delta, gamma, eps)
    ge = gamma * eta
    power_bound = 2 * ceil(log(1.0 / ge) / delta ** 2)
    if power is None:
        power = power_bound
    if power < 0 or power % 2 != 0:
        raise ValueError("power must be a nonnegative even integer")
    m0 = min(ceil(sqrt((power / 2.0) * log(sqrt(2.0) / ge))), power // 2) if power else 0
    tau = delta / sqrt(2.0 * log(1.0 / ge))
    return GeSchedule(delta=delta, gamma=gamma, eps=eps, eta=eta, power=power,
                      power_bound=power_bound, m0=m0, tau=tau)


def ge_filter_values(sched: GeSchedule, lam: np.ndarray, lam0_reported: float = 0.0) -> np.ndarray:
    """Windowed binomial filter sum_k w_k e^{-i (M - 2k)(lam - lam0_reported + tau)}."""
    lam = np.asarray(lam, dtype=float)
    arg = lam - lam0_reported + sched.tau
    freq = sched.power - 2 * sched.ks
    return sched.weights @ np.exp(-1j * np.outer(freq, arg))


def ge_exact_values(sched: GeSchedule, lam: np.ndarray, lam0_reported: float = 0.0) -> np.ndarray:
    """Exact comparator cos^M(lam - lam0_reported + tau)."""
    lam = np.asarray(lam, dtype=float)
    base = np.cos(lam - lam0_reported + sched.tau)
    # power is even, so the filter is |cos|^M
    with np.errstate(under="ignore"):
        return np.float_power(np.abs(base), sched.power)


@dataclass(frozen=True)
class PreparationResult:
    """Metrics of one filtered state against the exact ground space."""

    success_weight: float
    infidelity: float
    energy_error: float
    residual_weight: float
    state: np.ndarray


def _spectral_state(eig: EigenDecomposition, values: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return eig.vectors @ (values * (eig.vectors.conj().T @ psi))


def _measure_system(system: NormalizedHamiltonian, filtered: np.ndarray) -> PreparationResult:
    weight = float(np.linalg.norm(filtered))
    if weight == 0.0:
        return PreparationResult(0.0, 1.0, float("nan"), 0.0, filtered)
    state = filtered / weight
    infid = 1.0 - system.ground_overlap(state)
    coeffs = np.abs(system.eig.vectors.conj().T @ state) ** 2
    energy = float(coeffs @ system.eig.values)
    return PreparationResult(success_weight=weight, infidelity=infid,
                             energy_error=abs(energy - system.lam0),
                             residual_weight=0.0, state=state)


def _measure_amplified(system: NormalizedHamiltonian, amp: AmplifiedHamiltonian,
                       filtered: np.ndarray) -> PreparationResult:
    weight = float(np.linalg.norm(filtered))
    if weight == 0.0:
        return PreparationResult(0.0, 1.0, float("nan"), 0.0, filtered)
    state = filtered / weight
    block, residual = project_zero(state, amp)
    # infidelity against |0> x groundspace on the full amplified space
    infid = 1.0 - float(np.linalg.norm(system.ground_space().conj().T @ block))
    block_norm = float(np.linalg.norm(block))
    if block_norm == 0.0:
        return PreparationResult(weight, 1.0, float("nan"), residual, state)
    block = block / block_norm
    coeffs = np.abs(system.eig.vectors.conj().T @ block) ** 2
    energy = float(coeffs @ system.eig.values)
    return PreparationResult(success_weight=weight, infidelity=infid,
                             energy_error=abs(energy - system.lam0),
                             residual_weight=residual, state=state)


def apply_exact_gaussian(system: NormalizedHamiltonian, t: float, psi: np.ndarray,
                         amp: AmplifiedHamiltonian | None = None) -> PreparationResult:
    """Exact filter e^{-t^2 H^2 / 2} (or its amplified twin) plus metrics."""
    if amp is None:
        filtered = _spectral_state(system.eig, hs_exact_values(t, system.eig.values), psi)
        return _measure_system(system, filtered)
    filtered = gaussian_of_square(amp, t, embed(psi, amp))
    return _measure_amplified(system, amp, filtered)


def apply_hs_lcu(system: NormalizedHamiltonian, sched: HsSchedule, psi: np.ndarray,
                 amp: AmplifiedHamiltonian | None = None) -> PreparationResult:
    """Discretized Gaussian-filter LCU applied to a trial state, plus metrics."""
    if amp is None:
        filtered = _spectral_state(system.eig, hs_filter_values(sched, system.eig.values), psi)
        return _measure_system(system, filtered)
    filtered = lcu_evolution_sum(amp, sched.alphas, sched.t * sched.z, embed(psi, amp))
    return _measure_amplified(system, amp, filtered)


def apply_cosm_lcu(system: NormalizedHamiltonian, sched: GeSchedule,
                   psi: np.ndarray) -> PreparationResult:
    """Windowed binomial cos^M LCU applied to a trial state, plus metrics."""
    values = ge_filter_values(sched, system.eig.values, system.lam0_reported)
    return _measure_system(system, _spectral_state(system.eig, values, psi))


def apply_cosm_exact(system: NormalizedHamiltonian, sched: GeSchedule,
                     psi: np.ndarray) -> PreparationResult:
    """Exact cos^M comparator applied to a trial state, plus metrics."""
    values = ge_exact_values(sched, system.eig.values, system.lam0_reported)
    return _measure_system(system, _spectral_state(system.eig, values, psi))


@dataclass(frozen=True)
class SweepRecord:
    """One sweep grid point: LCU and exact-operator metrics side by side."""

    method: str
    grid_index: int
    schedule_param: float
    t_hamiltonian: float
    infidelity_exact: float
    infidelity_lcu: float
    energy_error_exact: float
    energy_error_lcu: float
    success_weight: float


def fidelity_sweep(system: NormalizedHamiltonian, psi: np.ndarray, method: str,
                   eps: float, *, amp: AmplifiedHamiltonian | None = None,
                   points: int = 30, tightened: bool = True) -> list[SweepRecord]:
    """Sweep the schedule strength from zero to its guarantee bound.

    method is one of 'hs', 'geCosM', 'hs+gapamp'. For the amplified method the
    schedule gap is sqrt(system.gap) and amp must be supplied.
    """
    if points < 2:
        raise ValueError("need at least two sweep points")
    gamma = system.ground_overlap(psi / np.linalg.norm(psi))
    records = []
    if method in ("hs", "hs+gapamp"):
        if method == "hs+gapamp":
            if amp is None:
                raise ValueError("hs+gapamp requires the amplified operator")
            delta = sqrt(system.gap)
        else:
            delta = system.gap
        endpoint = hs_schedule(delta, gamma, eps, tightened=tightened)
        for i, t in enumerate(np.linspace(0.0, endpoint.t_bound, points)):
            sched = hs_schedule(delta, gamma, eps, t=float(t), tightened=tightened)
            use_amp = amp if method == "hs+gapamp" else None
            lcu = apply_hs_lcu(system, sched, psi, amp=use_amp)
            exact = apply_exact_gaussian(system, float(t), psi, amp=use_amp)
            records.append(SweepRecord(
                method=method, grid_index=i, schedule_param=float(t),
                t_hamiltonian=sched.t_hamiltonian,
                infidelity_exact=exact.infidelity, infidelity_lcu=lcu.infidelity,
                energy_error_exact=exact.energy_error, energy_error_lcu=lcu.energy_error,
                success_weight=lcu.success_weight))
    elif method == "geCosM":
        endpoint = ge_schedule(system.gap, gamma, eps)
        powers = sorted({2 * int(round(m / 2.0)) for m in
                         np.linspace(0.0, endpoint.power_bound, points)})
        for i, power in enumerate(powers):
            sched = ge_schedule(system.gap, gamma, eps, power=power)
            lcu = apply_cosm_lcu(system, sched, psi)
            exact = apply_cosm_exact(system, sched, psi)
            records.append(SweepRecord(
                method=method, grid_index=i, schedule_param=float(power),
                t_hamiltonian=sched.t_hamiltonian,
                infidelity_exact=exact.infidelity, infidelity_lcu=lcu.infidelity,
                energy_error_exact=exact.energy_error, energy_error_lcu=lcu.energy_error,
                success_weight=lcu.success_weight))
    else:
        raise ValueError(f"unknown method {method!r}")
    return records
