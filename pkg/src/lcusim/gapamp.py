"""Spectral gap amplification for frustration-free sums of projectors.

For H = sum_j P_j with projectors P_j, the amplified operator

    H_r = [[0, Pi], [Pi^dag, 0]],   Pi = (P_1 ... P_n)  (block row)

squares to diag(Pi Pi^dag, ...) with Pi Pi^dag = H, so on the zero ancilla
block e^{-t^2 H_r^2 / 2} acts as e^{-t^2 H / 2}: a Gaussian in sqrt(H) rather
than H, which turns a gap Delta into sqrt(Delta).

Functions of H_r applied to vectors never require diagonalizing the full
(n+1)*d operator: every analytic f splits into even/odd parts, and both reduce
to functions of Pi Pi^dag (dimension d) composed with Pi / Pi^dag products.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import EigenDecomposition, eig_hermitian

PROJECTOR_ATOL = 1e-9
# Below this, sqrt(y) limits are evaluated by their leading series term.
_SMALL_EIG = 1e-14


@dataclass(frozen=True)
class AmplifiedHamiltonian:
    """Block off-diagonal amplification of a frustration-free projector sum.

    blocks holds the (possibly rescaled) projector blocks P_j / sqrt(scale);
    system_eig diagonalizes Pi Pi^dag = sum_j blocks_j^2, which equals the
    rescaled chain Hamiltonian.
    """

    blocks: tuple[np.ndarray, ...]
    system_eig: EigenDecomposition
    scale: float

    @property
    def system_dim(self) -> int:
        return self.system_eig.dim

    @property
    def ancilla_dim(self) -> int:
        return len(self.blocks) + 1

    @property
    def dim(self) -> int:
        return self.ancilla_dim * self.system_dim

    def operator(self) -> np.ndarray:
        """Assemble the dense amplified operator (small systems / tests)."""
        d, a = self.system_dim, self.ancilla_dim
        out = np.zeros((a * d, a * d), dtype=complex)
        for j, block in enumerate(self.blocks):
            out[0:d, (j + 1) * d:(j + 2) * d] = block
            out[(j + 1) * d:(j + 2) * d, 0:d] = block.conj().T
        return out


def build_amplified(local_terms: list[np.ndarray], scale: float = 1.0,
                    atol: float = PROJECTOR_ATOL) -> AmplifiedHamiltonian:
    """Validate the projector property of each local term and assemble H_r / sqrt(scale).

    With scale = s the square action on the zero block reproduces H / s.
    """
    if not local_terms:
        raise ValueError("need at least one local term")
    if scale <= 0:
        raise ValueError("scale must be positive")
    blocks = []
    for j, term in enumerate(local_terms):
        t = np.asarray(term, dtype=complex)
        dev = np.max(np.abs(t @ t - t))
        if dev > atol:
            raise ValueError(f"local term {j} is not a projector: max |P^2 - P| = {dev:.3e}")
        blocks.append(t / np.sqrt(scale))
    gram = sum(b @ b.conj().T for b in blocks)
    return AmplifiedHamiltonian(blocks=tuple(blocks), system_eig=eig_hermitian(gram),
                                scale=scale)


def embed(state: np.ndarray, amp: AmplifiedHamiltonian) -> np.ndarray:
    """Place a system state in the zero ancilla block."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (amp.system_dim,):
        raise ValueError("system state dimension mismatch")
    out = np.zeros(amp.dim, dtype=complex)
    out[: amp.system_dim] = state
    return out


def project_zero(state: np.ndarray, amp: AmplifiedHamiltonian) -> tuple[np.ndarray, float]:
    """Extract the zero-block component and the weight left outside it."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (amp.dim,):
        raise ValueError("amplified state dimension mismatch")
    d = amp.system_dim
    return state[:d].copy(), float(np.linalg.norm(state[d:]))


def _split(amp: AmplifiedHamiltonian, state: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = amp.system_dim
    state = np.asarray(state, dtype=complex)
    if state.shape != (amp.dim,):
        raise ValueError("amplified state dimension mismatch")
    return state[:d], state[d:].reshape(amp.ancilla_dim - 1, d)


def _pi_apply(amp: AmplifiedHamiltonian, w: np.ndarray) -> np.ndarray:
    """Pi w = sum_j P_j w_j for stacked lower-block components w."""
    return sum(b @ wj for b, wj in zip(amp.blocks, w))


def _pi_dag_apply(amp: AmplifiedHamiltonian, x: np.ndarray) -> np.ndarray:
    """Pi^dag x = stack of P_j^dag x."""
    return np.stack([b.conj().T @ x for b in amp.blocks])


def _gram_function(amp: AmplifiedHamiltonian, values: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Apply f(Pi Pi^dag) to u given f's values on the gram eigenvalues."""
    eig = amp.system_eig
    return eig.vectors @ (values * (eig.vectors.conj().T @ u))


def evolve_amplified(amp: AmplifiedHamiltonian, theta: float, state: np.ndarray) -> np.ndarray:
    """e^{-i theta H_r} applied to a full (ancilla x system) state.

    Uses cos(theta H_r) block-diagonal even part plus the odd part
    H_r sin(theta sqrt(.))/sqrt(.), both reduced to the gram eigenbasis.
    """
    return lcu_evolution_sum(amp, np.array([1.0]), np.array([theta]), state)


def lcu_evolution_sum(amp: AmplifiedHamiltonian, coeffs: np.ndarray, thetas: np.ndarray,
                      state: np.ndarray) -> np.ndarray:
    """sum_k coeffs_k e^{-i thetas_k H_r} applied to a state, in one pass.

    All k terms share the gram eigenbasis, so the combined filter values
    C(y) = sum_k a_k cos(theta_k sqrt(y)) (and the odd/deficit companions) are
    accumulated on the eigenvalue array first.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    thetas = np.asarray(thetas, dtype=float)
    if coeffs.shape != thetas.shape:
        raise ValueError("coefficient/angle shape mismatch")
    x, w = _split(amp, state)
    y = np.maximum(amp.system_eig.values, 0.0)
    root = np.sqrt(y)
    phase = np.outer(thetas, root)                     # (K, d)
    cos_sum = coeffs @ np.cos(phase)
    # sinc-like odd part: sum_k a_k sin(theta_k r)/r, with limit theta_k at r=0
    small = root < _SMALL_EIG
    safe_root = np.where(small, 1.0, root)
    sin_over = np.sin(phase) / safe_root
    sin_over[:, small] = thetas[:, None]
    odd_sum = coeffs @ sin_over
    top = _gram_function(amp, cos_sum, x)
    pw = _pi_apply(amp, w)
    top = top - 1j * _gram_function(amp, odd_sum, pw)
    # cos on the lower blocks: w + Pi^dag q(PiPi^dag) Pi w with q = (cos-1)/y
    safe_y = np.where(y < _SMALL_EIG, 1.0, y)
    deficit = (np.cos(phase) - 1.0) / safe_y
    deficit[:, y < _SMALL_EIG] = -0.5 * thetas[:, None] ** 2
    deficit_sum = coeffs @ deficit
    bottom = coeffs.sum() * w + _pi_dag_apply(amp, _gram_function(amp, deficit_sum, pw))
    bottom = bottom - 1j * _pi_dag_apply(amp, _gram_function(amp, odd_sum, x))
    return np.concatenate([top, bottom.ravel()])


def gaussian_of_square(amp: AmplifiedHamiltonian, t: float, state: np.ndarray) -> np.ndarray:
    """e^{-t^2 H_r^2 / 2} applied to a state (the exact amplified filter)."""
    x, w = _split(amp, state)
    y = np.maximum(amp.system_eig.values, 0.0)
    gauss = np.exp(-0.5 * t * t * y)
    top = _gram_function(amp, gauss, x)
    safe_y = np.where(y < _SMALL_EIG, 1.0, y)
    deficit = (gauss - 1.0) / safe_y
    deficit = np.where(y < _SMALL_EIG, -0.5 * t * t, deficit)
    pw = _pi_apply(amp, w)
    bottom = w + _pi_dag_apply(amp, _gram_function(amp, deficit, pw))
    return np.concatenate([top, bottom.ravel()])
