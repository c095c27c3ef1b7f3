"""Hermitian eigendecomposition and spectral function application.

Everything downstream works with dense operators that are diagonalized once;
functions of an operator are then elementwise maps on the eigenvalues. States
are plain complex ndarrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

# Repository-wide default tolerances; callers may override per call.
HERMITICITY_ATOL = 1e-12
RECONSTRUCTION_ATOL = 1e-9
UNIT_NORM_ATOL = 1e-9


def check_hermitian(matrix: np.ndarray, atol: float = HERMITICITY_ATOL) -> np.ndarray:
    """Validate a square Hermitian matrix, returning it as a complex array."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValueError("empty operator")
    dev = np.max(np.abs(m - m.conj().T))
    if dev > atol:
        raise ValueError(f"matrix is not Hermitian: max |H - H^dag| = {dev:.3e}")
    return m


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order with matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.values)


def eig_hermitian(matrix: np.ndarray, atol: float = HERMITICITY_ATOL) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix (ascending eigenvalues)."""
    m = check_hermitian(matrix, atol)
    values, vectors = np.linalg.eigh(m)
    return EigenDecomposition(values=values, vectors=vectors)


def apply_function(eig: EigenDecomposition, f: Callable[[np.ndarray], np.ndarray],
                   state: np.ndarray) -> np.ndarray:
    """Apply f(H) to a state via the eigenbasis; f maps eigenvalue arrays elementwise.

    The result is generally unnormalized (f need not be unitary).
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (eig.dim,):
        raise ValueError(f"state shape {state.shape} does not match dimension {eig.dim}")
    coeffs = eig.vectors.conj().T @ state
    return eig.vectors @ (np.asarray(f(eig.values), dtype=complex) * coeffs)


def evolve(eig: EigenDecomposition, t: float, state: np.ndarray) -> np.ndarray:
    """Unitary time evolution e^{-iHt} applied to a state."""
    return apply_function(eig, lambda lam: np.exp(-1j * t * lam), state)


def spectral_norm(eig: EigenDecomposition) -> float:
    """Operator 2-norm: largest eigenvalue magnitude."""
    return float(np.max(np.abs(eig.values)))


def normalize(state: np.ndarray) -> np.ndarray:
    """Rescale to unit 2-norm; zero vectors are rejected."""
    state = np.asarray(state, dtype=complex)
    n = np.linalg.norm(state)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return state / n


def fidelity(u: np.ndarray, v: np.ndarray, atol: float = UNIT_NORM_ATOL) -> float:
    """|<u|v>| for unit vectors; inputs are checked to be normalized."""
    for x in (u, v):
        n = np.linalg.norm(x)
        if abs(n - 1.0) > atol:
            raise ValueError(f"fidelity requires unit vectors, got norm {n}")
    return float(np.abs(np.vdot(u, v)))


def distance(u: np.ndarray, v: np.ndarray) -> float:
    """Euclidean distance ||u - v||."""
    return float(np.linalg.norm(np.asarray(u, dtype=complex) - np.asarray(v, dtype=complex)))
