"""
Pair evaluation, parameter sweeps and the figure presets, with CSV output.

Engine selection for a pair ``(i, j)``:

* ``fastpath`` -- free-fermion Green's matrix, nearest neighbours only;
* ``oracle``   -- exact diagonalization, ``N <= 12``;
* ``auto``     -- fastpath for nearest neighbours, oracle otherwise,
  error when neither applies.
"""

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import __version__
from .correlator import greens_matrix, reduced_density_matrix
from .entanglement import concurrence_general, concurrence_xstate
from .exceptions import PairNotSupported
from .oracle import (
    DEFAULT_MAX_SPINS,
    build_full_hamiltonian,
    diagonalize,
    partial_trace_pair,
    thermal_state_from_eigen,
)
from .spectrum import ChainSpec, build_one_particle_matrix, numeric_spectrum

HEADER = ("n", "omega1", "omega2", "delta", "tau", "i", "j",
          "a", "b", "c", "d", "x", "concurrence", "source")
ENGINES = ("auto", "fastpath", "oracle")
MODES = ("temperature", "site", "delta", "length")

FIG_TAU_RANGE = (0.05, 50.0, 200, True)
FIG2_TAU = 30.0
FIG4_DELTA_RANGE = (0.1, 3.0, 146, False)


@dataclass(frozen=True)
class SweepRecord:
    n: int
    omega1: float
    omega2: float
    delta: float
    tau: float
    i: int
    j: int
    a: float
    b: float
    c: float
    d: float
    x: float
    concurrence: float
    source: str

    def row(self) -> List[str]:
        out = []
        for name in HEADER:
            v = getattr(self, name)
            if isinstance(v, str):
                out.append(v)
            elif isinstance(v, (int, np.integer)):
                out.append(str(int(v)))
            else:
                out.append(f"{float(v):.16e}")
        return out

    @classmethod
    def from_row(cls, row) -> "SweepRecord":
        kw = {}
        for name, v in zip(HEADER, row):
            if name in ("n", "i", "j"):
                kw[name] = int(v)
            elif name == "source":
                kw[name] = v
            else:
                kw[name] = float(v)
        return cls(**kw)


@lru_cache(maxsize=64)
def _fast_spectrum(n, omega1, omega2, delta):
    return numeric_spectrum(build_one_particle_matrix(ChainSpec(n, omega1, omega2, delta)))


@lru_cache(maxsize=4)
def _ed_eigensystem(n, omega1, omega2, delta):
    return diagonalize(build_full_hamiltonian(ChainSpec(n, omega1, omega2, delta)))


def _key(spec):
    return (spec.n_spins, spec.omega_odd, spec.omega_even, spec.delta)


def choose_engine(spec: ChainSpec, i: int, j: int, engine: str = "auto") -> str:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if not (1 <= i < j <= spec.n_spins):
        raise ValueError(f"need 1 <= i < j <= {spec.n_spins}, got ({i}, {j})")
    adjacent = j == i + 1
    if engine == "fastpath":
        if not adjacent:
            raise PairNotSupported(f"fastpath handles nearest neighbours only, got ({i}, {j})")
        return "fastpath"
    if engine == "oracle":
        if spec.n_spins > DEFAULT_MAX_SPINS:
            raise PairNotSupported(
                f"oracle limited to N <= {DEFAULT_MAX_SPINS}, got N = {spec.n_spins}"
            )
        return "oracle"
    if adjacent:
        return "fastpath"
    if spec.n_spins <= DEFAULT_MAX_SPINS:
        return "oracle"
    raise PairNotSupported(
        f"pair ({i}, {j}) is not nearest-neighbour and N = {spec.n_spins} "
        f"exceeds the oracle limit {DEFAULT_MAX_SPINS}"
    )


def _record(spec, i, j, a, b, c, d, x, conc, source):
    return SweepRecord(spec.n_spins, spec.omega_odd, spec.omega_even, spec.delta,
                       spec.tau, i, j, float(a), float(b), float(c), float(d),
                       float(x), float(conc), source)


def evaluate_pairs(spec: ChainSpec, pairs: Sequence[Tuple[int, int]],
                   engine: str = "auto") -> List[SweepRecord]:
    """Records for several pairs of one chain, sharing spectra between pairs."""
    engines = [choose_engine(spec, i, j, engine) for i, j in pairs]
    G = state = None
    out = []
    for (i, j), eng in zip(pairs, engines):
        if eng == "fastpath":
            if G is None:
                G = greens_matrix(spec, _fast_spectrum(*_key(spec)))
            s = reduced_density_matrix(spec, G, i, j)
            res = concurrence_xstate(s)
            out.append(_record(spec, i, j, s.a, s.b, s.c, s.d, s.x, res.concurrence, "fastpath"))
        else:
            if state is None:
                state = thermal_state_from_eigen(*_ed_eigensystem(*_key(spec)), spec.tau, spec)
            r = partial_trace_pair(state, i, j)
            res = concurrence_general(r)
            out.append(_record(spec, i, j, r[0, 0].real, r[1, 1].real, r[2, 2].real,
                               r[3, 3].real, r[1, 2].real, res.concurrence, "oracle"))
    return out


def cmd_concurrence(spec: ChainSpec, i: int, j: int, engine: str = "auto") -> SweepRecord:
    return evaluate_pairs(spec, [(i, j)], engine)[0]


@dataclass(frozen=True)
class SweepRequest:
    """A one-parameter sweep.

    ``pairs`` is either a list of ``(i, j)`` tuples or the string ``"nn"``
    for all nearest-neighbour bonds.  In ``site`` mode the varied value is
    the bond index ``i`` and ``pairs`` is ignored; ``vary`` may be None
    to cover every bond.
    """

    mode: str
    base: ChainSpec
    vary: Optional[Tuple[float, float, int, bool]] = None
    pairs: Union[str, Tuple[Tuple[int, int], ...]] = "nn"
    engine: str = "auto"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if self.vary is None and self.mode != "site":
            raise ValueError(f"mode {self.mode!r} needs a range")
        if self.vary is not None:
            start, stop, count, log = self.vary
            if count < 2:
                raise ValueError("range count must be >= 2")
            if log and (start <= 0 or stop <= 0):
                raise ValueError("log range needs positive bounds")
            lo = min(start, stop)
            if self.mode == "temperature" and lo < 0:
                raise ValueError("tau must be >= 0")
            if self.mode == "delta" and lo <= 0:
                raise ValueError("delta must be > 0")
            if self.mode == "length" and lo < 2:
                raise ValueError("chain length must be >= 2")
            if self.mode == "site" and (lo < 1 or max(start, stop) > self.base.n_spins - 1):
                raise ValueError(f"bond index must lie in 1..{self.base.n_spins - 1}")

    def values(self) -> np.ndarray:
        if self.vary is None:
            return np.arange(1, self.base.n_spins)
        start, stop, count, log = self.vary
        grid = np.geomspace(start, stop, count) if log else np.linspace(start, stop, count)
        if self.mode in ("site", "length"):
            grid = np.unique(np.rint(grid).astype(int))
        return np.sort(grid)


def _pairs_for(n, pairs):
    if pairs == "nn":
        return [(i, i + 1) for i in range(1, n)]
    for i, j in pairs:
        if not 1 <= i < j <= n:
            raise ValueError(f"pair ({i}, {j}) out of range for N = {n}")
    return sorted(pairs)


def cmd_sweep(req: SweepRequest) -> List[SweepRecord]:
    """All records of a sweep, ordered by (varied value, i, j)."""
    base = req.base
    records = []
    for v in req.values():
        if req.mode == "temperature":
            spec = base.with_tau(float(v))
            pairs = _pairs_for(spec.n_spins, req.pairs)
        elif req.mode == "delta":
            spec = ChainSpec(base.n_spins, base.omega_odd, base.omega_even, float(v), base.tau)
            pairs = _pairs_for(spec.n_spins, req.pairs)
        elif req.mode == "length":
            spec = ChainSpec(int(v), base.omega_odd, base.omega_even, base.delta, base.tau)
            pairs = _pairs_for(spec.n_spins, req.pairs)
        else:
            spec = base
            pairs = [(int(v), int(v) + 1)]
        records.extend(evaluate_pairs(spec, pairs, req.engine))
    return records


def write_csv(records: Iterable[SweepRecord], stream, metadata: Sequence[str] = ()):
    stream.write(f"# xychain {__version__}\n")
    for line in metadata:
        stream.write(f"# {line}\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        w.writerow(r.row())


def read_csv(stream) -> List[SweepRecord]:
    lines = [l for l in stream if not l.startswith("#")]
    rows = list(csv.reader(lines))
    if tuple(rows[0]) != HEADER:
        raise ValueError("unexpected CSV header")
    return [SweepRecord.from_row(r) for r in rows[1:]]


def to_csv_text(records, metadata=()) -> str:
    buf = io.StringIO()
    write_csv(records, buf, metadata)
    return buf.getvalue()


@dataclass(frozen=True)
class Curve:
    name: str
    request: SweepRequest
    notes: Tuple[str, ...] = field(default=())


def figure_curves(fig: int) -> List[Curve]:
    """Preset sweeps behind each figure.  All presets use zero Larmor frequencies."""
    tau_note = "tau grid log-spaced over [0.05, 50], 200 points (chosen default)"
    if fig == 1:
        return [Curve("fig1_pair2-3",
                      SweepRequest("temperature", ChainSpec(101, delta=1.5), FIG_TAU_RANGE, ((2, 3),)),
                      (tau_note,))]
    if fig == 2:
        return [Curve("fig2_sites",
                      SweepRequest("site", ChainSpec(100, delta=1.0, tau=FIG2_TAU)),
                      (f"assumed tau = {FIG2_TAU} (low-temperature default)",))]
    if fig == 3:
        return [Curve(f"fig3_delta{d:g}",
                      SweepRequest("site", ChainSpec(17, delta=d, tau=30.0)))
                for d in (1.0, 1.17, 3.0)]
    if fig == 4:
        note = "delta grid linear over [0.1, 3.0], 146 points (chosen default)"
        return [Curve(f"fig4_pair{i}-{i + 1}",
                      SweepRequest("delta", ChainSpec(55, tau=30.0), FIG4_DELTA_RANGE, ((i, i + 1),)),
                      (note,))
                for i in (1, 2)]
    if fig in (5, 6):
        i = 1 if fig == 5 else 2
        return [Curve(f"fig{fig}_N{n}_pair{i}-{i + 1}",
                      SweepRequest("temperature", ChainSpec(n, delta=1.0), FIG_TAU_RANGE, ((i, i + 1),)),
                      (tau_note,))
                for n in (3, 4, 6, 7, 100, 105)]
    raise ValueError(f"figure id must be 1..6, got {fig}")
