"""
One-particle picture of the open alternating XY chain.

After the Jordan-Wigner mapping the chain Hamiltonian becomes
``H = 1/2 c^dag M c - 1/2 sum_n omega_n`` with ``M`` the real symmetric
tridiagonal matrix

    M_nn = 2 omega_n,      M_{n,n+1} = D_{n,n+1},

where omega alternates between ``omega_odd`` and ``omega_even`` and the
couplings alternate between ``D1 = 1`` (odd bonds) and ``delta`` (even
bonds).  Mode energies are ``lambda_k / 2``.

Two routes to the spectrum of ``M`` are provided:

* :func:`numeric_spectrum` -- LAPACK tridiagonal solver, any ``N``;
* :func:`analytic_spectrum` -- closed forms valid for odd ``N``.

Both return eigenvalues in descending order.  For the analytic route the
column index ``k - 1`` follows the usual mode labelling of the closed
forms: ``k = 1 .. (N-1)/2`` is the upper branch, ``k = (N+1)/2`` the
middle mode with eigenvalue ``2 omega_odd`` and ``k = (N+3)/2 .. N`` the
lower branch.

All energies are in units of ``D1``.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .exceptions import NumericalError

# |delta - 1| below which the middle-mode norm switches to its delta -> 1 limit
DELTA_ONE_TOL = 1e-8


@dataclass(frozen=True)
class ChainSpec:
    """Physical parameters of an open alternating chain.

    Attributes
    ----------
    n_spins : int
        Number of spins ``N >= 2``.
    omega_odd, omega_even : float
        Larmor frequencies on odd / even sites (units of D1).
    delta : float
        Coupling ratio ``D2 / D1 > 0``.
    tau : float
        Dimensionless inverse temperature ``beta * D1 / 2 >= 0``.
    """

    n_spins: int
    omega_odd: float = 0.0
    omega_even: float = 0.0
    delta: float = 1.0
    tau: float = 0.0

    def __post_init__(self):
        if int(self.n_spins) != self.n_spins or self.n_spins < 2:
            raise ValueError(f"n_spins must be an integer >= 2, got {self.n_spins!r}")
        if not self.delta > 0 or not np.isfinite(self.delta):
            raise ValueError(f"delta must be positive and finite, got {self.delta!r}")
        if not self.tau >= 0 or not np.isfinite(self.tau):
            raise ValueError(f"tau must be non-negative and finite, got {self.tau!r}")
        for name in ("omega_odd", "omega_even"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        object.__setattr__(self, "n_spins", int(self.n_spins))
        for name in ("omega_odd", "omega_even", "delta", "tau"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def beta(self) -> float:
        """Inverse temperature in units of 1/D1."""
        return 2.0 * self.tau

    def larmor(self) -> np.ndarray:
        """Site frequencies omega_n, n = 1..N."""
        n = np.arange(1, self.n_spins + 1)
        return np.where(n % 2 == 1, self.omega_odd, self.omega_even).astype(float)

    def couplings(self) -> np.ndarray:
        """Bond couplings D_{n,n+1}, n = 1..N-1."""
        n = np.arange(1, self.n_spins)
        return np.where(n % 2 == 1, 1.0, self.delta).astype(float)

    def with_tau(self, tau: float) -> "ChainSpec":
        return ChainSpec(self.n_spins, self.omega_odd, self.omega_even, self.delta, tau)


@dataclass(frozen=True)
class OneParticleMatrix:
    """Tridiagonal one-particle matrix ``D + 2 Omega``."""

    diagonal: np.ndarray
    offdiagonal: np.ndarray

    @property
    def order(self) -> int:
        return len(self.diagonal)

    def dense(self) -> np.ndarray:
        return (
            np.diag(self.diagonal)
            + np.diag(self.offdiagonal, 1)
            + np.diag(self.offdiagonal, -1)
        )


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of the one-particle matrix.

    ``eigenvectors[:, k]`` is the normalized eigenvector belonging to
    ``eigenvalues[k]``.  Eigenvalues are sorted in descending order.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source: str = field(default="numeric")

    @property
    def order(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class AlternatingAux:
    """Auxiliary per-mode quantities of the odd-N closed forms.

    Arrays are indexed by ``k - 1``.  Entries at the middle mode that
    the closed forms leave undefined (``amp``, ``L``, ``f``, ``R``) are NaN.
    ``amp`` is the eigenvector normalization A_k.
    """

    n_spins: int
    delta: float
    c1: float
    c2: float
    delta_k: np.ndarray
    eps: np.ndarray
    amp: np.ndarray
    L: np.ndarray
    f: np.ndarray
    R: np.ndarray
    B: float

    @property
    def mid(self) -> int:
        """0-based index of the middle mode ``k = (N+1)/2``."""
        return (self.n_spins + 1) // 2 - 1


def build_one_particle_matrix(spec: ChainSpec) -> OneParticleMatrix:
    if spec.n_spins < 2:
        raise ValueError("need at least two spins")
    return OneParticleMatrix(2.0 * spec.larmor(), spec.couplings())


def numeric_spectrum(m: OneParticleMatrix) -> Spectrum:
    """Full eigen-decomposition of a symmetric tridiagonal matrix (descending)."""
    d = np.asarray(m.diagonal, dtype=float)
    e = np.asarray(m.offdiagonal, dtype=float)
    if len(e) != len(d) - 1:
        raise ValueError("off-diagonal must have length order - 1")
    try:
        w, v = scipy.linalg.eigh_tridiagonal(d, e)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from exc
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
        raise NumericalError("tridiagonal eigensolver returned non-finite values")
    return Spectrum(w[::-1].copy(), v[:, ::-1].copy(), "numeric")


def middle_mode_norm(n_spins: int, delta: float) -> float:
    """Normalization ``B`` of the middle-mode eigenvector (odd N)."""
    p = n_spins + 1
    if abs(delta - 1.0) < DELTA_ONE_TOL:
        return float(np.sqrt(2.0 / p))
    if delta > 1.0:
        # same ratio, rescaled by delta**-(N+1) to avoid overflow
        b2 = (delta ** -(p - 2) - delta ** -p) / (1.0 - delta ** -p)
    else:
        b2 = (delta**2 - 1.0) / (delta**p - 1.0)
    return float(np.sqrt(b2))


def alternating_aux(spec: ChainSpec) -> AlternatingAux:
    """Closed-form mode data for an odd-N alternating chain."""
    N = spec.n_spins
    if N % 2 == 0:
        raise ValueError("closed forms require an odd number of spins")
    delta = spec.delta
    k = np.arange(1, N + 1)
    mid = (N + 1) // 2 - 1
    upper = k <= (N - 1) // 2

    c1 = spec.omega_even - spec.omega_odd
    c2 = spec.omega_even + spec.omega_odd
    delta_k = 1.0 + 2.0 * delta * np.cos(2.0 * np.pi * k / (N + 1)) + delta**2
    delta_k = np.maximum(delta_k, 0.0)
    root = np.sqrt(c1**2 + delta_k)
    shift = np.where(upper, c1 + root, c1 - root)  # lambda_k - 2 omega_odd

    eps = c2 + np.where(upper, root, -root)
    eps[mid] = 2.0 * spec.omega_odd

    with np.errstate(divide="ignore", invalid="ignore"):
        denom = shift**2 + delta_k
        L = 1.0 / shift
        f = 4.0 / (N + 1) * (1.0 - delta_k / denom)
        R = 4.0 / (N + 1) / denom
        amp = 2.0 * np.abs(shift) / np.sqrt(N + 1) / np.sqrt(denom)
    for arr in (L, f, R, amp):
        arr[mid] = np.nan

    return AlternatingAux(
        n_spins=N,
        delta=delta,
        c1=c1,
        c2=c2,
        delta_k=delta_k,
        eps=eps,
        amp=amp,
        L=L,
        f=f,
        R=R,
        B=middle_mode_norm(N, delta),
    )


def analytic_spectrum(spec: ChainSpec) -> Spectrum:
    """Closed-form eigenvalues and eigenvectors of ``D + 2 Omega`` for odd N."""
    N = spec.n_spins
    if N % 2 == 0:
        raise ValueError(
            f"analytic spectrum needs odd n_spins (got {N}); use numeric_spectrum"
        )
    aux = alternating_aux(spec)
    delta = spec.delta
    mid = aux.mid
    j = np.arange(1, N + 1)[:, None]
    k = np.arange(1, N + 1)[None, :]
    arg = np.pi * k / (N + 1)

    odd_rows = delta * np.sin(arg * (j - 1)) + np.sin(arg * (j + 1))
    u = np.where(j % 2 == 1, aux.L[None, :] * odd_rows, np.sin(arg * j))
    u = u * aux.amp[None, :]

    jj = np.arange(1, N + 1)
    special = np.zeros(N)
    odd = jj % 2 == 1
    special[odd] = aux.B * (-delta) ** ((N - jj[odd]) // 2)
    u[:, mid] = special

    return Spectrum(aux.eps.copy(), u, "analytic")


def homogeneous_spectrum(n: int, omega0: float = 0.0) -> Spectrum:
    """Spectrum of the uniform chain (D1 = D2 = 1, uniform field), any N >= 2.

    Matrix eigenvalues are ``2 (cos(pi k / (N+1)) + omega0)``, already in
    descending order for k = 1..N.
    """
    if int(n) != n or n < 2:
        raise ValueError("n must be an integer >= 2")
    n = int(n)
    k = np.arange(1, n + 1)
    lam = 2.0 * (np.cos(np.pi * k / (n + 1)) + omega0)
    j = np.arange(1, n + 1)[:, None]
    u = np.sqrt(2.0 / (n + 1)) * np.sin(np.pi * j * k[None, :] / (n + 1))
    return Spectrum(lam, u, "analytic")


def chain_spectrum(spec: ChainSpec, method: str = "numeric") -> Spectrum:
    """Convenience wrapper selecting the spectral route by name."""
    if method == "numeric":
        return numeric_spectrum(build_one_particle_matrix(spec))
    if method == "analytic":
        return analytic_spectrum(spec)
    raise ValueError(f"unknown method {method!r}")
