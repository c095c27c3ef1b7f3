"""Broadened resolvent (omega + i*Gamma - H)^{-1} via a Fourier-Laplace LCU.

The resolvent is the Laplace transform -i * integral_0^inf e^{i(omega + i Gamma - H)t} dt.
Truncating at t_cut and discretizing with a left-Riemann step dt yields a sum
of time evolutions with geometric coefficients

    alpha_k = dt * e^{-Gamma k dt},   k = 0 .. n_c,

each multiplied by the unitary e^{-i[(H - omega) k dt + pi/2]}; the pi/2 phase
realizes the -i prefactor. The schedule picks t_cut and dt so truncation and
discretization each contribute at most eps/2 of operator error.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, exp, log

import numpy as np

from .linalg import EigenDecomposition


def _check_fit_args(broadening: float, eps: float, norm_h: float) -> None:
    if broadening <= 0:
        raise ValueError("broadening must be positive")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if norm_h <= 0:
        raise ValueError("norm_h must be positive")


@dataclass(frozen=True)
class FitSchedule:
    """Truncation time, step, and term count for the resolvent LCU."""

    broadening: float
    eps: float
    norm_h: float
    t_cut: float
    dt: float
    n_c: int
    refined: bool

    @property
    def alphas(self) -> np.ndarray:
        k = np.arange(self.n_c + 1)
        return self.dt * np.exp(-self.broadening * k * self.dt)

    @property
    def l1(self) -> float:
        # closed geometric sum of alphas
        r = exp(-self.broadening * self.dt)
        return self.dt * (1.0 - r ** (self.n_c + 1)) / (1.0 - r)

    @property
    def query_cost(self) -> float:
        """Resource bookkeeping l1 * t_cut ~ log(2/(Gamma eps)) / Gamma^2."""
        return self.l1 * self.t_cut


def fit_schedule(broadening: float, eps: float, norm_h: float = 1.0, *,
                 width: float | None = None) -> FitSchedule:
    """Build the resolvent-LCU schedule for target operator error eps.

    The default step is min(eps/2, 3/norm_h). Passing width W = |omega - H + i Gamma|
    switches to the cubic refinement eps - (W/3) eps^2 + (2 W^2 / 9) eps^3.
    """
    _check_fit_args(broadening, eps, norm_h)
    t_cut = log(2.0 / (broadening * eps)) / broadening
    if width is None:
        dt = min(eps / 2.0, 3.0 / norm_h)
        refined = False
    else:
        if width <= 0:
            raise ValueError("width must be positive")
        dt = eps - (width / 3.0) * eps ** 2 + (2.0 * width ** 2 / 9.0) * eps ** 3
        refined = True
    n_c = ceil(t_cut / dt)
    return FitSchedule(broadening=broadening, eps=eps, norm_h=norm_h,
                       t_cut=t_cut, dt=dt, n_c=n_c, refined=refined)


def truncation_tail(sched: FitSchedule) -> float:
    """Exact dropped coefficient weight sum_{k > n_c} alpha_k."""
    r = exp(-sched.broadening * sched.dt)
    return sched.dt * r ** (sched.n_c + 1) / (1.0 - r)


def truncation_bound(sched: FitSchedule) -> float:
    """Analytic tail bound e^{-Gamma t_cut} / Gamma."""
    return exp(-sched.broadening * sched.t_cut) / sched.broadening


def filter_values(sched: FitSchedule, lam: np.ndarray, omega: float) -> np.ndarray:
    """LCU filter h(lam) in closed geometric form (equals filter_values_direct)."""
    lam = np.asarray(lam, dtype=float)
    rho = np.exp(-(sched.broadening + 1j * (lam - omega)) * sched.dt)
    return -1j * sched.dt * (1.0 - rho ** (sched.n_c + 1)) / (1.0 - rho)


def filter_values_direct(sched: FitSchedule, lam: np.ndarray, omega: float) -> np.ndarray:
    """Term-by-term LCU sum sum_k alpha_k e^{-i[(lam-omega) k dt + pi/2]}."""
    lam = np.asarray(lam, dtype=float)
    k = np.arange(sched.n_c + 1)
    phases = np.exp(-1j * (np.outer(lam - omega, k) * sched.dt + np.pi / 2.0))
    return phases @ sched.alphas


def resolvent_values(broadening: float, lam: np.ndarray, omega: float) -> np.ndarray:
    """Exact broadened resolvent 1 / (omega + i*broadening - lam)."""
    lam = np.asarray(lam, dtype=float)
    return 1.0 / (omega + 1j * broadening - lam)


def _spectral_apply(eig: EigenDecomposition, values: np.ndarray,
                    psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi)
    if psi.shape != (eig.dim,):
        raise ValueError(f"state has shape {psi.shape}, expected ({eig.dim},)")
    return eig.vectors @ (values * (eig.vectors.conj().T @ psi))


def lcu_resolvent(eig: EigenDecomposition, omega: float, sched: FitSchedule,
                  psi: np.ndarray) -> np.ndarray:
    """Apply the LCU resolvent approximation to a vector."""
    return _spectral_apply(eig, filter_values(sched, eig.values, omega), psi)


def exact_resolvent(eig: EigenDecomposition, omega: float, broadening: float,
                    psi: np.ndarray) -> np.ndarray:
    """Apply the exact broadened resolvent to a vector."""
    if broadening <= 0:
        raise ValueError("broadening must be positive")
    return _spectral_apply(eig, resolvent_values(broadening, eig.values, omega), psi)


@dataclass(frozen=True)
class ResolventResult:
    """Certification record for one frequency point."""

    omega: float
    error_norm: float
    n_c: int
    l1: float


def certify(eig: EigenDecomposition, omegas: np.ndarray,
            sched: FitSchedule) -> list[ResolventResult]:
    """Operator-norm error of the LCU filter against the exact resolvent.

    Both operators share the eigenbasis, so the norm is the max over
    eigenvalues of |h(lam) - 1/(omega + i Gamma - lam)|.
    """
    records = []
    for omega in np.asarray(omegas, dtype=float):
        diff = filter_values(sched, eig.values, omega) - resolvent_values(
            sched.broadening, eig.values, omega)
        records.append(ResolventResult(omega=float(omega),
                                       error_norm=float(np.max(np.abs(diff))),
                                       n_c=sched.n_c, l1=sched.l1))
    return records
