"""
Thermal two-spin reduced density matrices from the free-fermion solution.

The thermal one-particle correlation matrix

    G_ij = <c_i^dag c_j> = sum_k u_ik u_jk g(eps_k)

carries everything needed for a nearest-neighbour pair.  With
``alpha^{30} = <I_iz>``, ``alpha^{03} = <I_jz>``, ``alpha^{33} =
4 <I_iz I_jz>`` and ``alpha^{11} = alpha^{22} = 4 <I_ix I_jx>`` Wick's
theorem gives

    alpha^{30} = G_ii - 1/2
    alpha^{33} = 4 (G_ii G_jj - G_ij^2) - 2 (G_ii + G_jj) + 1     (i != j)
    alpha^{11} = 2 G_{i,i+1}

The last line only holds for adjacent sites: for ``|i - j| > 1`` the
Jordan-Wigner string between the two spins contributes and this module
refuses the pair.

The explicit mode sums (:func:`alpha33_closed_form`,
:func:`homogeneous_alphas`) are kept as independent cross-checks of the
G-matrix route.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import PairNotSupported
from .spectrum import AlternatingAux, ChainSpec, Spectrum


def fermi_factor(eps, tau):
    """Thermal occupation ``exp(-tau eps) / (1 + exp(-tau eps))``.

    Evaluated as a logistic function so that ``tau * eps`` of any
    magnitude neither overflows nor loses the symmetry
    ``g(-eps) = 1 - g(eps)``.  Accepts scalars or arrays.
    """
    eps = np.asarray(eps, dtype=float)
    t = float(tau) * eps
    out = np.empty_like(t)
    pos = t >= 0
    e = np.exp(-t[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (1.0 + np.exp(t[~pos]))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class GreensMatrix:
    matrix: np.ndarray
    tau: float

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    def __getitem__(self, ij):
        """1-based element access, ``G[i, j]``."""
        i, j = ij
        return self.matrix[i - 1, j - 1]


@dataclass(frozen=True)
class TwoSpinState:
    """X-shaped reduced density matrix of spins ``i < j`` (1-based).

    Basis order ``|up up>, |up down>, |down up>, |down down>`` with spin
    ``i`` as the left factor.
    """

    i: int
    j: int
    a: float
    b: float
    c: float
    d: float
    x: float
    alpha03: float = 0.0
    alpha30: float = 0.0
    alpha33: float = 0.0
    alpha11: float = 0.0

    @classmethod
    def from_alphas(cls, i, j, alpha03, alpha30, alpha33, alpha11):
        a = 0.25 + alpha03 / 2 + alpha30 / 2 + alpha33 / 4
        b = 0.25 - alpha03 / 2 + alpha30 / 2 - alpha33 / 4
        c = 0.25 + alpha03 / 2 - alpha30 / 2 - alpha33 / 4
        d = 0.25 - alpha03 / 2 - alpha30 / 2 + alpha33 / 4
        return cls(i, j, a, b, c, d, alpha11 / 2, alpha03, alpha30, alpha33, alpha11)

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.a, 0.0, 0.0, 0.0],
                [0.0, self.b, self.x, 0.0],
                [0.0, self.x, self.c, 0.0],
                [0.0, 0.0, 0.0, self.d],
            ]
        )


def greens_matrix(spec: ChainSpec, spectrum: Spectrum) -> GreensMatrix:
    if spectrum.order != spec.n_spins:
        raise ValueError(
            f"spectrum order {spectrum.order} does not match n_spins {spec.n_spins}"
        )
    if spec.tau == 0.0:
        # g = 1/2 for every mode and U is orthogonal
        return GreensMatrix(0.5 * np.eye(spec.n_spins), 0.0)
    g = fermi_factor(spectrum.eigenvalues, spec.tau)
    u = spectrum.eigenvectors
    G = (u * g) @ u.T
    G = 0.5 * (G + G.T)
    return GreensMatrix(G, spec.tau)


def _check_pair(n, i, j):
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}, got ({i}, {j})")


def wick_alphas(G: GreensMatrix, i: int, j: int):
    """``(alpha03, alpha30, alpha33)`` of the pair from the Green's matrix."""
    _check_pair(G.order, i, j)
    gii, gjj, gij = G[i, i], G[j, j], G[i, j]
    alpha30 = gii - 0.5
    alpha03 = gjj - 0.5
    alpha33 = 4.0 * (gii * gjj - gij * gij) - 2.0 * (gii + gjj) + 1.0
    return alpha03, alpha30, alpha33


def reduced_density_matrix(spec: ChainSpec, G: GreensMatrix, i: int, j: int) -> TwoSpinState:
    """Two-spin state of the nearest-neighbour pair ``(i, j = i + 1)``."""
    _check_pair(spec.n_spins, i, j)
    if G.order != spec.n_spins:
        raise ValueError("Green's matrix does not match the chain length")
    if j != i + 1:
        raise PairNotSupported(
            f"pair ({i}, {j}) is not nearest-neighbour; the transverse correlator "
            "needs the exact-diagonalization oracle"
        )
    alpha03, alpha30, alpha33 = wick_alphas(G, i, j)
    alpha11 = 2.0 * G[i, j]
    return TwoSpinState.from_alphas(i, j, alpha03, alpha30, alpha33, alpha11)


def mode_sum_alphas(spec: ChainSpec, spectrum: Spectrum, i: int, j: int):
    """Literal mode sums for ``(alpha03, alpha30, alpha33)``.

    Evaluates the restricted double sums over modes ``m != n`` exactly as
    written, including the ``(sum_n u_in u_jn)`` term.  O(N^2) per pair;
    intended as an oracle for the Green's-matrix route.
    """
    _check_pair(spec.n_spins, i, j)
    g = fermi_factor(spectrum.eigenvalues, spec.tau)
    ui = spectrum.eigenvectors[i - 1]
    uj = spectrum.eigenvectors[j - 1]
    off = ~np.eye(len(g), dtype=bool)

    gg = np.outer(g, g)
    direct = np.sum(np.outer(ui**2, uj**2) * gg * off)
    overlap = np.sum(ui * uj) * np.sum(ui * uj * g)
    exchange = np.sum(np.outer(ui * uj, ui * uj) * gg * off)
    ni = np.sum(ui**2 * g)
    nj = np.sum(uj**2 * g)
    alpha33 = 4.0 * (direct + overlap - exchange) - 2.0 * (ni + nj) + 1.0
    return nj - 0.5, ni - 0.5, alpha33


def alpha33_closed_form(spec: ChainSpec, aux: AlternatingAux, i: int) -> float:
    """``alpha^{33}_{i,i+1}`` from the explicit odd-N alternating-chain sums.

    The even-``i`` and odd-``i`` expressions differ because the two
    sublattices carry different eigenvector shapes; each is evaluated
    term by term, with the middle mode handled separately.
    """
    N = spec.n_spins
    if N % 2 == 0:
        raise ValueError("closed form requires odd n_spins")
    if not 1 <= i <= N - 1:
        raise ValueError(f"site {i} out of range 1..{N - 1}")
    delta = aux.delta
    tau = spec.tau
    mid = aux.mid
    k = np.arange(1, N + 1)
    keep = k != mid + 1
    k = k[keep]
    f, R, L = aux.f[keep], aux.R[keep], aux.L[keep]
    g = fermi_factor(aux.eps[keep], tau)
    g_mid = fermi_factor(2.0 * spec.omega_odd, tau)
    B2 = aux.B**2
    w = np.pi * k / (N + 1)
    off = ~np.eye(len(k), dtype=bool)
    gg = np.outer(g, g)

    if i % 2 == 0:
        sin_i = np.sin(w * i)
        S = delta * np.sin(w * i) + np.sin(w * (i + 2))
        mid_weight = B2 * (-delta) ** (N - i - 1)
        # rows m, columns n
        t1 = np.sum(np.outer(f * sin_i**2, R * S**2) * gg * off)
        t2 = np.sum(f * mid_weight * sin_i**2 * g_mid * g)
        t3 = np.sum(f * L * S * sin_i) * np.sum(f * L * S * sin_i * g)
        h = f * L * S * sin_i
        t4 = np.sum(np.outer(h, h) * gg * off)
        single = (
            np.sum(f * sin_i**2 * g) + np.sum(R * S**2 * g) + mid_weight * g_mid
        )
    else:
        sin_j = np.sin(w * (i + 1))
        Q = delta * np.sin(w * (i - 1)) + np.sin(w * (i + 1))
        mid_weight = B2 * (-delta) ** (N - i)
        t1 = np.sum(np.outer(R * Q**2, f * sin_j**2) * gg * off)
        t2 = np.sum(f * mid_weight * sin_j**2 * g_mid * g)
        t3 = np.sum(f * L * Q * sin_j) * np.sum(f * L * Q * sin_j * g)
        h = f * L * Q * sin_j
        t4 = np.sum(np.outer(h, h) * gg * off)
        single = (
            np.sum(R * Q**2 * g) + mid_weight * g_mid + np.sum(f * sin_j**2 * g)
        )
    return float(4.0 * (t1 + t2 + t3 - t4) - 2.0 * single + 1.0)


def homogeneous_alphas(n: int, omega0: float, tau: float, i: int, j: int):
    """Explicit homogeneous-chain sums ``(alpha03, alpha30, alpha33, alpha11)``.

    Valid for any ``n >= 2``.  ``alpha11`` refers to the bond ``(i, i+1)``
    and is ``None`` unless ``j == i + 1``.
    """
    _check_pair(n, i, j)
    k = np.arange(1, n + 1)
    eps = 2.0 * np.cos(np.pi * k / (n + 1)) + 2.0 * omega0
    g = fermi_factor(eps, tau)
    si = np.sin(i * np.pi * k / (n + 1))
    sj = np.sin(j * np.pi * k / (n + 1))
    off = ~np.eye(n, dtype=bool)
    gg = np.outer(g, g)

    alpha03 = 2.0 / (n + 1) * np.sum(sj**2 * g) - 0.5
    alpha30 = 2.0 / (n + 1) * np.sum(si**2 * g) - 0.5
    direct = np.sum(np.outer(si**2, sj**2) * gg * off)
    exchange = np.sum(np.outer(si * sj, si * sj) * gg * off)
    alpha33 = (
        16.0 / (n + 1) ** 2 * (direct - exchange)
        - 4.0 / (n + 1) * (np.sum(si**2 * g) + np.sum(sj**2 * g))
        + 1.0
    )
    alpha11: Optional[float] = None
    if j == i + 1:
        s_next = np.sin((i + 1) * np.pi * k / (n + 1))
        alpha11 = float(4.0 / (n + 1) * np.sum(si * s_next * g))
    return float(alpha03), float(alpha30), float(alpha33), alpha11
