"""
(theta, T) grid sweeps and truncation-convergence studies.

A sweep evaluates, at every grid point, the negativity, purity and linear
entropy of the three one-versus-rest cuts.  The mode count ``d`` entering
the linear entropy is fixed once per subsystem from the whole sweep, so
values are comparable across the grid.
"""

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .errors import IonCavityError
from .fock import (DEFAULT_TRUNCATION_TOL, SpaceDims, StateVector,
                   coherent_amplitudes)
from .hamiltonians import (ModelParams, Tier, assign_blocks, block_support,
                           build_hamiltonian)
from .measures import (SUBSYSTEMS, effective_mode_count, linear_entropy,
                       negativity, reduce)
from .propagator import Propagator
from .states import Family, InitialSpec, coherent_terms, make_initial

__all__ = [
    "Grid", "SweepConfig", "SweepRecord", "SweepResult", "RECORD_FIELDS",
    "run_sweep", "convergence_study", "ConvergenceReport", "parse_d_mode",
]

RECORD_FIELDS = (
    "theta_deg", "T_deg", "N_A", "N_B", "N_C", "Sl_A", "Sl_B", "Sl_C",
    "purity_A", "purity_B", "purity_C", "norm_error", "leakage",
)


@dataclass(frozen=True)
class Grid:
    """Inclusive linear grid ``start..stop`` with ``count`` points."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"grid count must be an integer >= 1, got {self.count}")
        if self.stop < self.start:
            raise ValueError(f"grid stop {self.stop} is below start {self.start}")
        if self.count == 1 and self.stop != self.start:
            raise ValueError("a single-point grid needs start == stop")

    @classmethod
    def single(cls, value: float) -> "Grid":
        return cls(value, value, 1)

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """``'start:stop:count'`` or a single value."""
        parts = text.split(":")
        if len(parts) == 1:
            return cls.single(float(parts[0]))
        if len(parts) != 3:
            raise ValueError(f"grid must be 'start:stop:count', got {text!r}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))

    def __str__(self):
        return f"{self.start:g}:{self.stop:g}:{self.count}"

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


def parse_d_mode(d_mode: str) -> Optional[int]:
    """``'auto'`` -> None, ``'fixed:D'`` -> D."""
    if d_mode == "auto":
        return None
    if d_mode.startswith("fixed:"):
        D = int(d_mode.split(":", 1)[1])
        if D < 1:
            raise ValueError(f"fixed d must be >= 1, got {D}")
        return D
    raise ValueError(f"d-mode must be 'auto' or 'fixed:<D>', got {d_mode!r}")


@dataclass(frozen=True)
class SweepConfig:
    """Everything needed to reproduce a sweep.

    Defaults: ``mu/a = 4``, ``beta = 1``, theta over [0, 180] in 5 degree
    steps and T over [0, 180] in 1 degree steps.  ``g_eta_c = 2`` sets the
    unit ``a = 1``.
    """

    tier: Tier = Tier.BLOCK
    family: Family = Family.I
    beta: complex = 1.0
    mu_over_a: float = 4.0
    g_eta_c: float = 2.0
    eta_L: float = 0.1
    eta_c: float = 0.1
    theta: Grid = Grid(0.0, 180.0, 37)
    T: Grid = Grid(0.0, 180.0, 181)
    cutoff_m: int = 14
    cutoff_n: int = 14
    d_mode: str = "auto"
    truncation_tol: Optional[float] = DEFAULT_TRUNCATION_TOL
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "tier", Tier(self.tier))
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.mu_over_a < 1:
            raise ValueError(f"mu/a must be >= 1, got {self.mu_over_a}")
        parse_d_mode(self.d_mode)
        self.dims  # validates cutoffs

    @property
    def dims(self) -> SpaceDims:
        return SpaceDims(self.cutoff_m, self.cutoff_n)

    @property
    def params(self) -> ModelParams:
        return ModelParams.from_ratio(self.mu_over_a, self.g_eta_c, self.eta_L, self.eta_c)

    def replace(self, **changes) -> "SweepConfig":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> Dict[str, object]:
        """Flat, JSON-friendly view with the same keys as the CLI flags."""
        return {
            "tier": self.tier.value,
            "family": self.family.value,
            "beta-re": self.beta.real,
            "beta-im": self.beta.imag,
            "mu-over-a": self.mu_over_a,
            "g-eta-c": self.g_eta_c,
            "eta-l": self.eta_L,
            "eta-c": self.eta_c,
            "theta-grid": str(self.theta),
            "t-grid": str(self.T),
            "cutoff-m": self.cutoff_m,
            "cutoff-n": self.cutoff_n,
            "d-mode": self.d_mode,
            "truncation-tol": self.truncation_tol,
        }


@dataclass(frozen=True)
class SweepRecord:
    theta_deg: float
    T_deg: float
    N_A: float
    N_B: float
    N_C: float
    Sl_A: float
    Sl_B: float
    Sl_C: float
    purity_A: float
    purity_B: float
    purity_C: float
    norm_error: float
    leakage: float

    def values(self) -> tuple:
        return dataclasses.astuple(self)


@dataclass
class SweepResult:
    """Records in row-major order (theta outer, T inner) plus run metadata."""

    config: SweepConfig
    records: List[SweepRecord]
    effective_d: Dict[str, int]
    notes: List[str] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, item):
        return self.records[item]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])

    def grid(self, name: str) -> np.ndarray:
        """Field as a ``(n_theta, n_T)`` array."""
        return self.column(name).reshape(self.config.theta.count, self.config.T.count)


@dataclass
class _Row:
    theta_deg: float
    rhos: Dict[str, list]
    negs: List[tuple]
    norm_errors: List[float]
    leakages: List[float]


def _annotate(err: Exception, where: str) -> Exception:
    err.args = (f"{where}: {err.args[0] if err.args else ''}",) + err.args[1:]
    return err


class _Engine:
    def __init__(self, config: SweepConfig):
        self.config = config
        self.dims = config.dims
        self.params = config.params
        self._shared = None
        if config.tier is not Tier.BLOCK:
            h = build_hamiltonian(config.tier, self.dims, self.params)
            self._shared = Propagator(h, self.params.a, self.dims)
        self._block_cache = {}

    def propagator(self, blocks) -> Propagator:
        if self._shared is not None:
            return self._shared
        key = tuple(blocks)
        if key not in self._block_cache:
            h = build_hamiltonian(Tier.BLOCK, self.dims, self.params, key)
            self._block_cache[key] = Propagator(h, self.params.a, self.dims)
        return self._block_cache[key]

    def prepare(self, theta):
        cfg = self.config
        psi0 = make_initial(InitialSpec(cfg.family, theta, cfg.beta), self.dims,
                            cfg.truncation_tol)
        blocks = [spec for spec, _ in assign_blocks(psi0)]
        return psi0, blocks

    def row(self, theta: float) -> _Row:
        try:
            psi0, blocks = self.prepare(theta)
            prop = self.propagator(blocks)
            outside = ~block_support(self.dims, blocks)
            coeffs = prop.coefficients(psi0)
            row = _Row(theta, {s: [] for s in SUBSYSTEMS}, [], [], [])
            for T in self.config.T.values():
                amps = prop.evolve_amplitudes(coeffs, T)
                norm = np.linalg.norm(amps)
                psi = StateVector(self.dims, amps)
                row.norm_errors.append(abs(norm - 1.0))
                row.leakages.append(float(np.sum(np.abs(amps[outside]) ** 2)))
                row.negs.append(tuple(negativity(psi, s) for s in SUBSYSTEMS))
                for s in SUBSYSTEMS:
                    row.rhos[s].append(reduce(psi, s))
            return row
        except IonCavityError as err:
            raise _annotate(err, f"theta={theta:g} deg")

    def run(self) -> List[_Row]:
        thetas = list(self.config.theta.values())
        if self.config.workers > 1:
            with ThreadPoolExecutor(self.config.workers) as pool:
                return list(pool.map(self.row, thetas))
        return [self.row(th) for th in thetas]


# theta at which both branches of every family are populated
REFERENCE_THETA = 45.0


def _mode_counts(config: SweepConfig, rows: Sequence[_Row], engine: "_Engine") -> Dict[str, int]:
    fixed = parse_d_mode(config.d_mode)
    if fixed is not None:
        # the ion is a qubit whatever the phonon/photon mode count
        return {"A": 2, "B": fixed, "C": fixed}
    # d is a property of the family, so a sweep restricted to special theta
    # values (where one branch vanishes) still sees the family's full support
    rows = list(rows)
    if not any(row.theta_deg == REFERENCE_THETA for row in rows):
        rows.append(engine.row(REFERENCE_THETA))
    return {s: effective_mode_count(rho for row in rows for rho in row.rhos[s])
            for s in SUBSYSTEMS}


def run_sweep(config: SweepConfig) -> SweepResult:
    """Evaluate every ``(theta, T)`` grid point.

    Returns
    -------
    SweepResult
        Records in row-major order (theta outer, T inner).  The result is
        independent of ``config.workers``.
    """
    engine = _Engine(config)
    rows = engine.run()
    d = _mode_counts(config, rows, engine)
    notes = []
    if config.family is Family.III:
        notes.append("family iii state renormalized after coherent expansion over "
                     f"{coherent_terms(config.dims)} phonon levels")
    if 1 in d.values():
        notes.append("linear entropy set to 0 where d = 1")
    records = []
    for row in rows:
        for k, T in enumerate(config.T.values()):
            rhos = {s: row.rhos[s][k] for s in SUBSYSTEMS}
            try:
                sl = {s: linear_entropy(rhos[s], d[s]) for s in SUBSYSTEMS}
            except IonCavityError as err:
                raise _annotate(err, f"theta={row.theta_deg:g} deg, T={T:g} deg")
            n = row.negs[k]
            records.append(SweepRecord(
                float(row.theta_deg), float(T), n[0], n[1], n[2],
                sl["A"], sl["B"], sl["C"],
                rhos["A"].purity, rhos["B"].purity, rhos["C"].purity,
                row.norm_errors[k], row.leakages[k],
            ))
    return SweepResult(config, records, d, notes)


@dataclass
class ConvergenceReport:
    """Differences between sweeps at consecutive cutoffs.

    ``rungs[k]`` is ``(lo, hi, max_abs_diff, worst_field)``.
    """

    rungs: List[tuple]
    deficits: Dict[int, float]
    threshold: float

    @property
    def converged(self) -> bool:
        return self.rungs[-1][2] < self.threshold

    @property
    def differences(self) -> List[float]:
        return [r[2] for r in self.rungs]


def convergence_study(config: SweepConfig, ladder: Sequence[int],
                      threshold: float = 1e-4) -> ConvergenceReport:
    """Rerun ``config`` with both cutoffs set to each rung of ``ladder``.

    The truncation check on the initial state is disabled, since low rungs
    are expected to truncate; the coherent-state deficit of every rung is
    reported instead.
    """
    ladder = list(ladder)
    if len(ladder) < 2 or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError(f"ladder must be strictly increasing with >= 2 rungs, got {ladder}")

    fields = RECORD_FIELDS[2:]
    results, deficits = {}, {}
    for c in ladder:
        cfg = config.replace(cutoff_m=c, cutoff_n=c, truncation_tol=None)
        res = run_sweep(cfg)
        results[c] = np.array([[getattr(r, f) for f in fields] for r in res])
        if cfg.family is Family.III:
            deficits[c] = coherent_amplitudes(cfg.beta, coherent_terms(cfg.dims), None)[1]
        else:
            deficits[c] = 0.0
    rungs = []
    for lo, hi in zip(ladder, ladder[1:]):
        diff = np.abs(results[hi] - results[lo])
        worst = np.unravel_index(np.argmax(diff), diff.shape)
        rungs.append((lo, hi, float(diff[worst]), fields[worst[1]]))
    return ConvergenceReport(rungs, deficits, threshold)
