"""Model Hamiltonians: periodic Fermi-Hubbard chains (Jordan-Wigner encoded)
and open q-deformed XXZ spin chains, plus spectrum normalization and trial states.

Conventions:
    Fermionic mode index m = 2*site + spin with spin 0 = up, 1 = down.
    Basis index bit m is the occupation of mode m (bit j the spin of site j for
    the chains); bit 0 is the least significant bit.
    Jordan-Wigner strings act on lower mode indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
from scipy import sparse

from .linalg import EigenDecomposition, eig_hermitian

# Eigenvalues within this distance of the smallest (after normalization) count
# as the ground space.
DEGENERACY_ATOL = 1e-8

_ID2 = sparse.identity(2, format="csr")
_Z = sparse.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]]))
_X = sparse.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
_Y = sparse.csr_matrix(np.array([[0.0, -1j], [1j, 0.0]]))
# |0> empty, |1> occupied: raising [[0,0],[1,0]] sends |0> to |1>
_RAISE = sparse.csr_matrix(np.array([[0.0, 0.0], [1.0, 0.0]]))


def _site_op(num_sites: int, site: int, op: sparse.csr_matrix) -> sparse.csr_matrix:
    out = sparse.identity(1, format="csr")
    for k in reversed(range(num_sites)):
        out = sparse.kron(out, op if k == site else _ID2, format="csr")
    return out


@lru_cache(maxsize=None)
def jw_operators(num_modes: int) -> tuple[tuple[sparse.csr_matrix, ...], tuple[sparse.csr_matrix, ...]]:
    """Creation and annihilation operators for num_modes fermionic modes.

    Returns (creation, annihilation) tuples indexed by mode. Jordan-Wigner
    phase strings (Z factors) sit on all modes below the acting one.
    """
    if num_modes < 1:
        raise ValueError("need at least one mode")
    create = []
    for m in range(num_modes):
        op = sparse.identity(1, format="csr")
        for k in reversed(range(num_modes)):
            if k > m:
                factor = _ID2
            elif k == m:
                factor = _RAISE
            else:
                factor = _Z
            op = sparse.kron(op, factor, format="csr")
        create.append(sparse.csr_matrix(op))
    annihilate = [sparse.csr_matrix(op.conj().T) for op in create]
    return tuple(create), tuple(annihilate)


def jw_operator(num_modes: int, mode: int, kind: str) -> sparse.csr_matrix:
    """Single ladder operator; kind is 'create' or 'annihilate'."""
    if not 0 <= mode < num_modes:
        raise ValueError(f"mode {mode} outside 0..{num_modes - 1}")
    create, annihilate = jw_operators(num_modes)
    if kind == "create":
        return create[mode]
    if kind == "annihilate":
        return annihilate[mode]
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class FermionModeMap:
    """Site/spin to Jordan-Wigner mode mapping for a spinful chain."""

    sites: int

    @property
    def num_modes(self) -> int:
        return 2 * self.sites

    def mode(self, site: int, spin: int) -> int:
        if not 0 <= site < self.sites:
            raise ValueError(f"site {site} outside 0..{self.sites - 1}")
        if spin not in (0, 1):
            raise ValueError("spin must be 0 (up) or 1 (down)")
        return 2 * site + spin


@dataclass(frozen=True)
class HubbardSpec:
    """Periodic single-band Hubbard chain at hopping t, repulsion U, potential mu."""

    sites: int
    hopping: float = 1.0
    interaction: float = 8.0
    mu: float = 0.0

    def __post_init__(self):
        if self.sites < 2:
            raise ValueError("Hubbard chain needs at least 2 sites")

    @property
    def dim(self) -> int:
        return 4 ** self.sites

    def bonds(self) -> list[tuple[int, int]]:
        """Undirected nearest-neighbour bonds, each counted once (L=2 has one)."""
        pairs = {tuple(sorted((i, (i + 1) % self.sites))) for i in range(self.sites)}
        return sorted(pairs)


@dataclass(frozen=True)
class XxzSpec:
    """Open q-deformed XXZ chain; q=1 is the frustration-free Heisenberg point."""

    sites: int
    q: float = 1.0

    def __post_init__(self):
        if self.sites < 2:
            raise ValueError("XXZ chain needs at least 2 sites")
        if self.q <= 0:
            raise ValueError("q must be positive")

    @property
    def dim(self) -> int:
        return 2 ** self.sites


def build_hubbard(spec: HubbardSpec) -> np.ndarray:
    """Dense Hamiltonian with the particle-hole symmetric interaction form."""
    mm = FermionModeMap(spec.sites)
    create, annihilate = jw_operators(mm.num_modes)
    dim = spec.dim
    h = sparse.csr_matrix((dim, dim), dtype=complex)
    for (i, j) in spec.bonds():
        for s in (0, 1):
            hop = create[mm.mode(i, s)] @ annihilate[mm.mode(j, s)]
            h = h - spec.hopping * (hop + hop.conj().T)
    ident = sparse.identity(dim, format="csr")
    for i in range(spec.sites):
        n_up = create[mm.mode(i, 0)] @ annihilate[mm.mode(i, 0)]
        n_dn = create[mm.mode(i, 1)] @ annihilate[mm.mode(i, 1)]
        h = h + spec.interaction * ((n_up - 0.5 * ident) @ (n_dn - 0.5 * ident))
        h = h - spec.mu * (n_up + n_dn)
    return h.toarray()


def number_operator(sites: int) -> np.ndarray:
    """Diagonal total particle-number operator on the spinful chain."""
    mm = FermionModeMap(sites)
    create, annihilate = jw_operators(mm.num_modes)
    total = sum(create[m] @ annihilate[m] for m in range(mm.num_modes))
    return total.toarray()


def xxz_local_term(spec: XxzSpec, bond: int) -> np.ndarray:
    """Two-site term on (bond, bond+1); a rank-deficient projector for every q."""
    if not 0 <= bond < spec.sites - 1:
        raise ValueError(f"bond {bond} outside 0..{spec.sites - 2}")
    L, q = spec.sites, spec.q
    xx = (_site_op(L, bond, _X) @ _site_op(L, bond + 1, _X)).toarray()
    yy = (_site_op(L, bond, _Y) @ _site_op(L, bond + 1, _Y)).toarray()
    zz = (_site_op(L, bond, _Z) @ _site_op(L, bond + 1, _Z)).toarray()
    z_l = _site_op(L, bond, _Z).toarray()
    z_r = _site_op(L, bond + 1, _Z).toarray()
    ident = np.eye(spec.dim)
    term = (-q / (2 * (1 + q * q))) * (xx + yy) + 0.25 * (ident - zz) \
        + ((1 - q * q) / (4 * (1 + q * q))) * (z_l - z_r)
    return np.real_if_close(term, tol=1).astype(float)


def build_qxxz(spec: XxzSpec) -> tuple[np.ndarray, list[np.ndarray]]:
    """Full chain Hamiltonian and the list of its local bond terms."""
    terms = [xxz_local_term(spec, b) for b in range(spec.sites - 1)]
    return sum(terms), terms


@dataclass(frozen=True)
class NormalizedHamiltonian:
    """A Hamiltonian affinely mapped so its spectrum sits in [0, 1].

    normalized = (original + e_shift) / scale. The a-priori ground-energy
    window is [lam0_reported, lam0_reported + delta0] and contains the true
    normalized ground energy lam0.
    """

    operator: np.ndarray
    eig: EigenDecomposition
    e_shift: float
    scale: float
    delta0: float
    lam0: float
    lam0_reported: float
    ground_dim: int
    gap: float

    @property
    def dim(self) -> int:
        return self.eig.dim

    def ground_space(self) -> np.ndarray:
        """Orthonormal ground-space basis as columns."""
        return self.eig.vectors[:, : self.ground_dim]

    def ground_overlap(self, state: np.ndarray) -> float:
        """Projection norm of a unit state onto the ground space."""
        return float(np.linalg.norm(self.ground_space().conj().T @ np.asarray(state)))


def normalize_spectrum(matrix: np.ndarray, delta0: float = 0.0) -> NormalizedHamiltonian:
    """Shift and scale a Hermitian operator so its spectrum lies in [0, 1].

    With delta0 = 0 the ground energy maps exactly to 0. With delta0 > 0 the
    ground energy is placed at delta0/2 so the reported value 0 is only known
    a priori to within delta0 (the top of the spectrum still maps to 1).
    """
    if not 0.0 <= delta0 < 1.0:
        raise ValueError("delta0 must lie in [0, 1)")
    raw = eig_hermitian(matrix)
    lam_min, lam_max = float(raw.values[0]), float(raw.values[-1])
    width = lam_max - lam_min
    if width <= 0.0:
        raise ValueError("flat spectrum cannot be normalized")
    scale = width / (1.0 - delta0 / 2.0)
    e_shift = scale * (delta0 / 2.0) - lam_min
    values = (raw.values + e_shift) / scale
    operator = (np.asarray(matrix, dtype=complex) + e_shift * np.eye(raw.dim)) / scale
    eig = EigenDecomposition(values=values, vectors=raw.vectors)
    lam0 = float(values[0])
    ground_dim = int(np.sum(values < lam0 + DEGENERACY_ATOL))
    if ground_dim == raw.dim:
        raise ValueError("no spectral gap: all eigenvalues degenerate")
    gap = float(values[ground_dim] - lam0)
    return NormalizedHamiltonian(
        operator=operator, eig=eig, e_shift=e_shift, scale=scale, delta0=delta0,
        lam0=lam0, lam0_reported=0.0, ground_dim=ground_dim, gap=gap)


def neel_state(sites: int) -> np.ndarray:
    """Half-filled product state: up on even sites, down on odd sites."""
    occupied = [FermionModeMap(sites).mode(i, i % 2) for i in range(sites)]
    index = sum(1 << m for m in occupied)
    state = np.zeros(4 ** sites, dtype=complex)
    state[index] = 1.0
    return state


def weight_block_state(sites: int, weight: int | None = None) -> np.ndarray:
    """Computational basis state |1..10..0> with the given number of leading ones."""
    if weight is None:
        weight = sites // 2
    if not 0 <= weight <= sites:
        raise ValueError(f"weight {weight} outside 0..{sites}")
    index = sum(1 << b for b in range(weight))
    state = np.zeros(2 ** sites, dtype=complex)
    state[index] = 1.0
    return state


def dicke_state(sites: int, weight: int) -> np.ndarray:
    """Uniform superposition of all basis states with the given Hamming weight."""
    if not 0 <= weight <= sites:
        raise ValueError(f"weight {weight} outside 0..{sites}")
    state = np.zeros(2 ** sites)
    for index in range(2 ** sites):
        if bin(index).count("1") == weight:
            state[index] = 1.0
    return state / np.sqrt(comb(sites, weight))


def trial_state(model: NormalizedHamiltonian, kind: str, *, sites: int,
                weight: int | None = None) -> tuple[np.ndarray, float]:
    """A named trial state and its overlap gamma with the exact ground space.

    Kinds: 'neel' (Hubbard half filling), 'block' (XXZ |1..10..0>),
    'ground' (exact ground state, gamma = 1).
    """
    if kind == "neel":
        psi = neel_state(sites)
    elif kind == "block":
        psi = weight_block_state(sites, weight)
    elif kind == "ground":
        psi = model.eig.vectors[:, 0].astype(complex)
    else:
        raise ValueError(f"unknown trial state kind {kind!r}")
    if psi.shape != (model.dim,):
        raise ValueError(f"trial state dimension {psi.shape} does not match {model.dim}")
    return psi, model.ground_overlap(psi)
