import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xychain.correlator import TwoSpinState
from xychain.entanglement import concurrence_general, concurrence_xstate, spin_flip

PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)
PSI_MINUS = np.array([0, 1, -1, 0]) / np.sqrt(2)


def proj(v):
    return np.outer(v, np.conj(v))


def random_unitary(rng, n=2):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, n, rank=None):
    rank = rank or n
    z = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


def random_xstate(rng):
    a, b, c, d = rng.dirichlet(np.ones(4))
    x = rng.uniform(-1, 1) * np.sqrt(b * c)
    return TwoSpinState(1, 2, a, b, c, d, x)


def test_flip_maximally_mixed():
    np.testing.assert_allclose(spin_flip(np.eye(4) / 4), np.eye(4) / 4, atol=1e-16)


def test_flip_basis_state():
    up_up = np.zeros((4, 4))
    up_up[0, 0] = 1
    expect = np.zeros((4, 4))
    expect[3, 3] = 1
    np.testing.assert_allclose(spin_flip(up_up), expect, atol=1e-16)


def test_flip_bell_invariant():
    np.testing.assert_allclose(spin_flip(proj(PHI_PLUS)), proj(PHI_PLUS), atol=1e-16)


@pytest.mark.parametrize("bad", [
    np.eye(4),                          # trace 4
    np.diag([1.2, -0.2, 0.0, 0.0]),     # not PSD
    np.array([[0.5, 0.1], [0.1, 0.5]]), # wrong shape
    np.eye(4) / 4 + np.triu(np.ones((4, 4)), 1) * 0.01,  # not Hermitian
])
def test_flip_rejects_non_density(bad):
    with pytest.raises(ValueError):
        spin_flip(bad)


def test_bell_state():
    assert concurrence_general(proj(PHI_PLUS)).concurrence == pytest.approx(1.0, abs=1e-14)
    assert concurrence_general(proj(PSI_MINUS)).concurrence == pytest.approx(1.0, abs=1e-14)


def test_maximally_mixed():
    assert concurrence_general(np.eye(4) / 4).concurrence == 0.0


@pytest.mark.parametrize("p", [0.2, 1 / 3, 0.5, 0.9, 1.0])
def test_werner(p):
    rho = p * proj(PSI_MINUS) + (1 - p) * np.eye(4) / 4
    # rho_tilde = rho, so the lambdas are the eigenvalues (1+3p)/4, (1-p)/4 x3
    expect = max(0.0, (3 * p - 1) / 2)
    assert concurrence_general(rho).concurrence == pytest.approx(expect, abs=1e-14)
    assert concurrence_general(0.9 * proj(PSI_MINUS) + 0.1 * np.eye(4) / 4).concurrence == pytest.approx(0.85, abs=1e-14)


def test_pure_states_match_overlap_formula(rng):
    # C(|psi>) = |<psi| sigma_y sigma_y |psi*>|
    syy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    for _ in range(200):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        expect = abs(v.conj() @ syy @ v.conj())
        assert concurrence_general(proj(v)).concurrence == pytest.approx(expect, abs=1e-12)


def test_xstate_examples():
    bell = TwoSpinState(1, 2, 0.0, 0.5, 0.5, 0.0, 0.5)
    assert concurrence_xstate(bell).concurrence == pytest.approx(1.0, abs=1e-15)
    mixed = TwoSpinState(1, 2, 0.25, 0.25, 0.25, 0.25, 0.0)
    assert concurrence_xstate(mixed).concurrence == 0.0


def test_xstate_equals_general_bulk(rng):
    worst = 0.0
    for _ in range(10_000):
        s = random_xstate(rng)
        worst = max(worst, abs(concurrence_xstate(s).concurrence
                               - concurrence_general(s.matrix()).concurrence))
    assert worst <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(1e-6, 1.0), min_size=4, max_size=4), st.floats(-1.0, 1.0))
def test_xstate_equals_general(weights, frac):
    a, b, c, d = np.array(weights) / sum(weights)
    s = TwoSpinState(1, 2, a, b, c, d, frac * np.sqrt(b * c))
    x, g = concurrence_xstate(s), concurrence_general(s.matrix())
    assert abs(x.concurrence - g.concurrence) <= 1e-12
    np.testing.assert_allclose(x.lambdas, g.lambdas, atol=1e-12)


def test_local_unitary_invariance(rng):
    for _ in range(200):
        rho = random_density(rng, 4, rank=int(rng.integers(1, 5)))
        U = np.kron(random_unitary(rng), random_unitary(rng))
        c0 = concurrence_general(rho).concurrence
        c1 = concurrence_general(U @ rho @ U.conj().T).concurrence
        assert abs(c0 - c1) <= 1e-10


def test_product_states_are_unentangled(rng):
    for _ in range(500):
        rho = np.kron(random_density(rng, 2), random_density(rng, 2))
        assert concurrence_general(rho).concurrence == 0.0
    for a in range(2):
        for b in range(2):
            e = np.zeros(4)
            e[2 * a + b] = 1
            assert concurrence_general(proj(e)).concurrence == 0.0


def test_pure_product_states_near_zero(rng):
    for _ in range(200):
        rho = np.kron(random_density(rng, 2, 1), random_density(rng, 2, 1))
        assert concurrence_general(rho).concurrence <= 1e-14


def test_result_fields_consistent(rng):
    for _ in range(200):
        r = concurrence_general(random_density(rng, 4))
        lam = r.lambdas
        assert list(lam) == sorted(lam, reverse=True) and min(lam) >= 0
        assert abs(r.concurrence - max(0.0, lam[0] - sum(lam[1:]))) <= 1e-12
        assert 0.0 <= r.concurrence <= 1.0
