"""
Brute-force exact diagonalization of the chain in the full 2^N space.

Independent of the free-fermion machinery: the Hamiltonian is assembled
from spin operators, the thermal state is formed by dense
diagonalization and pair states come from an explicit partial trace.

Basis index convention: site 1 is the most significant bit, bit value 0
is spin up.  So ``|q_1 q_2 ... q_N>`` has index ``sum q_n 2^(N-n)``.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .entanglement import concurrence_general
from .exceptions import NumericalError
from .spectrum import ChainSpec

MAX_SPINS = 14
DEFAULT_MAX_SPINS = 12


@dataclass(frozen=True)
class SpinOperatorSet:
    """Spin-1/2 matrices in the up/down basis."""

    ix: np.ndarray = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex)
    iy: np.ndarray = np.array([[0.0, -0.5j], [0.5j, 0.0]])
    iz: np.ndarray = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
    identity: np.ndarray = np.eye(2, dtype=complex)

    def basis(self):
        """``x^0 .. x^3`` = identity, I_x, I_y, I_z."""
        return (self.identity, self.ix, self.iy, self.iz)

    def embed(self, op, site: int, n_spins: int) -> np.ndarray:
        """Kronecker embedding of a one-site operator at 1-based ``site``."""
        if not 1 <= site <= n_spins:
            raise ValueError(f"site {site} out of range 1..{n_spins}")
        eye = self.identity
        factors = [op if s == site else eye for s in range(1, n_spins + 1)]
        return reduce(np.kron, factors)


SPIN = SpinOperatorSet()


@dataclass(frozen=True)
class ThermalState:
    rho: np.ndarray
    Z: float
    spec: ChainSpec
    ground_energy: float

    @property
    def n_spins(self) -> int:
        return self.spec.n_spins


def _check_size(n, cap=MAX_SPINS):
    if n > cap:
        raise ValueError(f"exact diagonalization limited to N <= {cap}, got {n}")


def build_full_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Dense real-symmetric 2^N matrix of the XY chain.

    ``I_x I_x + I_y I_y = (I_+ I_- + I_- I_+) / 2`` only connects basis
    states differing by an antiparallel-to-antiparallel swap on a bond, so
    the matrix is filled directly from bit patterns.
    """
    N = spec.n_spins
    _check_size(N)
    dim = 1 << N
    idx = np.arange(dim)
    H = np.zeros((dim, dim))

    bits = [(idx >> (N - n)) & 1 for n in range(1, N + 1)]
    diag = np.zeros(dim)
    for w, b in zip(spec.larmor(), bits):
        diag += w * (0.5 - b)
    H[idx, idx] = diag

    for n, coupling in enumerate(spec.couplings(), start=1):
        flip = bits[n - 1] != bits[n]
        src = idx[flip]
        mask = (1 << (N - n)) | (1 << (N - n - 1))
        H[src ^ mask, src] = 0.5 * coupling
    return H


def build_full_hamiltonian_kron(spec: ChainSpec) -> np.ndarray:
    """Same Hamiltonian built from Kronecker-embedded spin operators."""
    N = spec.n_spins
    _check_size(N)
    ops = {a: [SPIN.embed(getattr(SPIN, a), n, N) for n in range(1, N + 1)]
           for a in ("ix", "iy", "iz")}
    H = sum(w * z for w, z in zip(spec.larmor(), ops["iz"]))
    for n, coupling in enumerate(spec.couplings()):
        H = H + coupling * (ops["ix"][n] @ ops["ix"][n + 1] + ops["iy"][n] @ ops["iy"][n + 1])
    return np.real_if_close(H)


def diagonalize(H):
    """Eigenvalues (ascending) and eigenvectors of a dense Hermitian matrix."""
    try:
        return np.linalg.eigh(np.asarray(H))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"dense eigensolver failed: {exc}") from exc


def thermal_state_from_eigen(E, V, tau: float, spec: ChainSpec) -> ThermalState:
    if tau < 0:
        raise ValueError("tau must be non-negative")
    beta = 2.0 * tau
    w = np.exp(-beta * (E - E[0]))
    Z = float(w.sum())
    rho = (V * (w / Z)) @ V.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return ThermalState(rho, Z, spec, float(E[0]))


def thermal_state(H, tau: float, spec: ChainSpec = None) -> ThermalState:
    """``exp(-beta H) / Z`` with ``beta = 2 tau`` (units of 1/D1).

    Energies are shifted by the ground energy before exponentiation, so
    ``Z`` is reported relative to ``exp(-beta E_0)``.
    """
    if tau < 0:
        raise ValueError("tau must be non-negative")
    E, V = diagonalize(H)
    if spec is None:
        n = int(round(np.log2(len(E))))
        spec = ChainSpec(n, tau=tau)
    return thermal_state_from_eigen(E, V, tau, spec)


def _check_pair(n, i, j):
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}, got ({i}, {j})")


def partial_trace_pair(state: ThermalState, i: int, j: int) -> np.ndarray:
    """4x4 reduced density matrix of spins ``i < j`` by index contraction."""
    N = state.n_spins
    _check_pair(N, i, j)
    shape = (1 << (i - 1), 2, 1 << (j - i - 1), 2, 1 << (N - j))
    t = state.rho.reshape(shape + shape)
    r = np.einsum("aibjcakblc->ijkl", t)
    return r.reshape(4, 4)


def pair_alpha_coefficients(state: ThermalState, i: int, j: int) -> np.ndarray:
    """4x4 array of ``alpha^{xi_i xi_j}`` from full-space traces."""
    N = state.n_spins
    _check_pair(N, i, j)
    rho = state.rho
    basis = SPIN.basis()
    alpha = np.zeros((4, 4), dtype=complex)
    for p, xp in enumerate(basis):
        Xi = SPIN.embed(xp, i, N)
        for q, xq in enumerate(basis):
            Xj = SPIN.embed(xq, j, N)
            op = Xi @ Xj
            num = np.sum(rho * op.T)  # tr(rho op)
            den = np.trace(op @ op)
            alpha[p, q] = (1 << (N - 2)) * num / den
    return alpha


def pair_from_alphas(alpha) -> np.ndarray:
    """``rho_ij = sum alpha^{pq} x^p (x) x^q``."""
    basis = SPIN.basis()
    return sum(alpha[p, q] * np.kron(basis[p], basis[q])
               for p in range(4) for q in range(4))


def solve(spec: ChainSpec, max_spins: int = DEFAULT_MAX_SPINS) -> ThermalState:
    _check_size(spec.n_spins, max_spins)
    return thermal_state(build_full_hamiltonian(spec), spec.tau, spec)


def oracle_concurrence(spec: ChainSpec, i: int, j: int) -> float:
    """Concurrence of spins ``(i, j)`` by exact diagonalization (N <= 12)."""
    _check_pair(spec.n_spins, i, j)
    state = solve(spec)
    return concurrence_general(partial_trace_pair(state, i, j)).concurrence


def many_body_spectrum(spec: ChainSpec) -> np.ndarray:
    """Sorted eigenvalues of the full Hamiltonian."""
    try:
        return np.linalg.eigvalsh(build_full_hamiltonian(spec))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"dense eigensolver failed: {exc}") from exc


def free_fermion_levels(one_particle_eigenvalues, larmor) -> np.ndarray:
    """All ``1/2 sum_k n_k lambda_k - 1/2 sum_n omega_n`` over fillings, sorted."""
    lam = np.asarray(one_particle_eigenvalues, dtype=float)
    levels = np.zeros(1)
    for l in lam:
        levels = np.concatenate([levels, levels + 0.5 * l])
    return np.sort(levels - 0.5 * np.sum(larmor))
