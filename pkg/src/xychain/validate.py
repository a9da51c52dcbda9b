"""Self-check suites comparing the fast path with its independent oracles."""

from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from .correlator import (
    alpha33_closed_form,
    greens_matrix,
    homogeneous_alphas,
    reduced_density_matrix,
    wick_alphas,
)
from .entanglement import concurrence_general, concurrence_xstate
from .oracle import (
    free_fermion_levels,
    many_body_spectrum,
    pair_alpha_coefficients,
    partial_trace_pair,
    solve,
)
from .spectrum import ChainSpec, alternating_aux, analytic_spectrum, chain_spectrum

# (p, q) index pairs of alpha^{pq} that vanish for an XY chain
STRUCTURAL_ZEROS = [(0, 1), (1, 0), (0, 2), (2, 0), (1, 3), (2, 3), (3, 1), (3, 2), (1, 2), (2, 1)]


@dataclass
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float
    cases: int

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_deviation) and self.max_deviation <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<28s} max dev {self.max_deviation:.3e}"
                f"  (tol {self.tolerance:.0e}, {self.cases} cases)")


def random_spec(rng, sizes, zero_field=True) -> ChainSpec:
    n = int(rng.choice(sizes))
    delta = float(rng.uniform(0.3, 3.0))
    tau = float(rng.uniform(0.0, 30.0))
    if zero_field:
        return ChainSpec(n, 0.0, 0.0, delta, tau)
    w1, w2 = rng.uniform(-1.5, 1.5, size=2)
    return ChainSpec(n, float(w1), float(w2), delta, tau)


def oracle_equivalence(rng, cases=50, sizes=(3, 5, 7, 9, 11)) -> SuiteResult:
    """Fast-path vs exact-diagonalization concurrence on nearest-neighbour pairs."""
    worst = 0.0
    for _ in range(cases):
        spec = random_spec(rng, sizes)
        state = solve(spec)
        G = greens_matrix(spec, chain_spectrum(spec))
        for i in range(1, spec.n_spins):
            c_fast = concurrence_xstate(reduced_density_matrix(spec, G, i, i + 1)).concurrence
            c_ed = concurrence_general(partial_trace_pair(state, i, i + 1)).concurrence
            worst = max(worst, abs(c_fast - c_ed))
    return SuiteResult("oracle equivalence |dC|", worst, 1e-8, cases)


def many_body_check(sizes=(3, 5, 7, 9), rng=None) -> SuiteResult:
    worst = 0.0
    for n in sizes:
        if rng is None:
            spec = ChainSpec(n, 0.0, 0.0, 1.5)
        else:
            spec = random_spec(rng, [n], zero_field=False)
        ed = many_body_spectrum(spec)
        ff = free_fermion_levels(chain_spectrum(spec).eigenvalues, spec.larmor())
        worst = max(worst, float(np.max(np.abs(ed - ff))))
    return SuiteResult("many-body spectrum", worst, 1e-9, len(sizes))


def structural_zeros(rng, cases=5, sizes=(3, 4, 5, 6, 7)) -> SuiteResult:
    worst = 0.0
    for _ in range(cases):
        spec = random_spec(rng, sizes, zero_field=False)
        state = solve(spec)
        n = spec.n_spins
        i = int(rng.integers(1, n))
        j = int(rng.integers(i + 1, n + 1))
        alpha = pair_alpha_coefficients(state, i, j)
        vals = [abs(alpha[p, q]) for p, q in STRUCTURAL_ZEROS]
        vals.append(abs(alpha[1, 1] - alpha[2, 2]))
        worst = max(worst, max(vals))
    return SuiteResult("structural zeros", worst, 1e-10, cases)


def closed_form_checks(rng, cases=100, sizes=(3, 5, 7, 9, 11, 17, 21),
                       alpha33_hook: Optional[Callable[[float], float]] = None) -> SuiteResult:
    """Closed-form alpha^{33} (both parities) and homogeneous sums vs the G route."""
    worst = 0.0
    for case in range(cases):
        if case % 2 == 0:
            spec = random_spec(rng, sizes, zero_field=bool(rng.integers(0, 2)))
            G = greens_matrix(spec, chain_spectrum(spec))
            aux = alternating_aux(spec)
            for i in range(1, spec.n_spins):
                cf = alpha33_closed_form(spec, aux, i)
                if alpha33_hook is not None:
                    cf = alpha33_hook(cf)
                worst = max(worst, abs(cf - wick_alphas(G, i, i + 1)[2]))
        else:
            n = int(rng.integers(2, 40))
            w0 = float(rng.uniform(-1.0, 1.0))
            tau = float(rng.uniform(0.0, 30.0))
            spec = ChainSpec(n, w0, w0, 1.0, tau)
            G = greens_matrix(spec, chain_spectrum(spec))
            i = int(rng.integers(1, n))
            h03, h30, h33, h11 = homogeneous_alphas(n, w0, tau, i, i + 1)
            g03, g30, g33 = wick_alphas(G, i, i + 1)
            worst = max(worst, abs(h03 - g03), abs(h30 - g30), abs(h33 - g33),
                        abs(h11 - 2.0 * G[i, i + 1]))
    return SuiteResult("closed-form alphas", worst, 1e-9, cases)


def analytic_vs_numeric(rng, cases=20, sizes=(3, 5, 9, 17, 33, 101)) -> SuiteResult:
    worst = 0.0
    for _ in range(cases):
        spec = random_spec(rng, sizes, zero_field=False)
        a = analytic_spectrum(spec)
        n = chain_spectrum(spec)
        worst = max(worst, float(np.max(np.abs(a.eigenvalues - n.eigenvalues))))
        Ga = greens_matrix(spec, a).matrix
        Gn = greens_matrix(spec, n).matrix
        worst = max(worst, float(np.max(np.abs(Ga - Gn))))
    return SuiteResult("analytic vs numeric spectrum", worst, 1e-10, cases)


def infinite_temperature(sizes=(2, 3, 8, 101)) -> SuiteResult:
    worst = 0.0
    for n in sizes:
        spec = ChainSpec(n, 0.0, 0.0, 1.7, 0.0)
        G = greens_matrix(spec, chain_spectrum(spec))
        for i in range(1, n):
            worst = max(worst, concurrence_xstate(reduced_density_matrix(spec, G, i, i + 1)).concurrence)
    return SuiteResult("tau = 0 concurrence", worst, 0.0, len(sizes))


def run_all(seed: int = 42, size: str = "small", inject_fault: bool = False) -> List[SuiteResult]:
    if size not in ("small", "full"):
        raise ValueError("size must be 'small' or 'full'")
    rng = np.random.default_rng(seed)
    full = size == "full"
    hook = (lambda v: v + 1e-3) if inject_fault else None
    return [
        oracle_equivalence(rng, cases=50 if full else 10,
                           sizes=(3, 5, 7, 9, 11) if full else (3, 5, 7)),
        many_body_check((3, 5, 7, 9) if full else (3, 5, 7), rng=rng),
        structural_zeros(rng, cases=10 if full else 3),
        closed_form_checks(rng, cases=100 if full else 20, alpha33_hook=hook),
        analytic_vs_numeric(rng, cases=40 if full else 10),
        infinite_temperature(),
    ]
