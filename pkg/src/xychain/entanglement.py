"""Wootters concurrence of two-qubit states.

Basis convention: ``{|00>, |01>, |10>, |11>}`` with ``|0>`` = spin up and
the first factor belonging to the lower site index.
"""

from dataclasses import dataclass

import numpy as np

from .correlator import TwoSpinState
from .exceptions import NumericalError

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

DENSITY_TOL = 1e-10


@dataclass(frozen=True)
class ConcurrenceResult:
    lambdas: tuple
    concurrence: float


def _check_density(rho):
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > DENSITY_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > DENSITY_TOL:
        raise ValueError(f"density matrix trace is {np.trace(rho).real}, not 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -DENSITY_TOL:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y x sigma_y) rho^* (sigma_y x sigma_y)``."""
    rho = _check_density(rho)
    return SIGMA_YY @ rho.conj() @ SIGMA_YY


def _from_lambdas(lams) -> ConcurrenceResult:
    lams = sorted((float(v) for v in lams), reverse=True)
    c = max(0.0, lams[0] - lams[1] - lams[2] - lams[3])
    return ConcurrenceResult(tuple(lams), min(c, 1.0))


def concurrence_general(rho) -> ConcurrenceResult:
    """Concurrence of an arbitrary two-qubit density matrix.

    With ``rho = W W^dag`` the square roots of the eigenvalues of
    ``rho rho_tilde`` are the singular values of ``W^dag S W^*``
    (``S = sigma_y x sigma_y``).  Taking them from an SVD avoids square
    roots of rounding-level eigenvalues, which otherwise leave spurious
    ``~1e-8`` lambdas for rank-deficient states.
    """
    rho = np.asarray(rho, dtype=complex)
    _check_density(rho)
    try:
        w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
        # eigenvalues of rho down to -DENSITY_TOL are rounding noise
        W = v * np.sqrt(np.clip(w, 0.0, None))
        lams = np.linalg.svd(W.conj().T @ SIGMA_YY @ W.conj(), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    return _from_lambdas(lams)


def concurrence_xstate(s: TwoSpinState) -> ConcurrenceResult:
    """Closed-form concurrence for the X-shaped pair state."""
    ad = max(s.a * s.d, 0.0)
    bc = max(s.b * s.c, 0.0)
    r = np.sqrt(ad)
    q = np.sqrt(bc)
    return _from_lambdas((r, r, abs(s.x + q), abs(s.x - q)))
