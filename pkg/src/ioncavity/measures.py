"""
Reduced density matrices, partial transposes, negativity and linear entropy
for one-versus-rest cuts of the tripartite state.

Subsystem labels: ``A`` the ion qubit, ``B`` the phonon mode, ``C`` the
cavity photon mode.
"""

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DimensionMismatchError
from .fock import HermitianOperator, StateVector

__all__ = [
    "SUBSYSTEMS", "DensityMatrix", "MeasureResult", "reduce",
    "partial_transpose", "transpose_subsystem", "reduce_rest", "pt_eigenvalues", "negativity", "trace_norm",
    "schmidt_values", "linear_entropy", "mode_count", "effective_mode_count",
    "measure",
]

log = logging.getLogger(__name__)

SUBSYSTEMS = ("A", "B", "C")
POPULATION_THRESHOLD = 1e-9
NEGATIVE_EIG_THRESHOLD = -1e-12
# Schmidt values below this are dropped before building the compressed PT
_SCHMIDT_FLOOR = 1e-14


def _axis(label: str) -> int:
    try:
        return SUBSYSTEMS.index(label)
    except ValueError:
        raise ValueError(f"subsystem must be one of {SUBSYSTEMS}, got {label!r}")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Reduced state of one subsystem."""

    label: str
    matrix: np.ndarray

    def __post_init__(self):
        _axis(self.label)
        mat = np.asarray(self.matrix, dtype=complex)
        if np.max(np.abs(mat - mat.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def purity(self) -> float:
        """``tr(rho^2)``, computed as the squared Frobenius norm."""
        return float(np.sum(np.abs(self.matrix) ** 2))

    @property
    def populations(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True)
class MeasureResult:
    negativity: float
    linear_entropy: float
    purity: float
    effective_d: int


def _split(psi: StateVector, label: str) -> np.ndarray:
    """Amplitudes as a (d_X, d_rest) matrix for the cut X | rest."""
    t = np.moveaxis(psi.tensor, _axis(label), 0)
    return t.reshape(t.shape[0], -1)


def reduce(psi: StateVector, keep: str) -> DensityMatrix:
    """Partial trace of ``|psi><psi|`` over the two other subsystems."""
    mat = _split(psi, keep)
    return DensityMatrix(keep, mat @ mat.conj().T)


def transpose_subsystem(rho: np.ndarray, shape, subsystem: str) -> np.ndarray:
    """Transpose the indices of one subsystem of an operator on ``shape``.

    ``<i,m,n| rho^T_A |j,r,s> = <j,m,n| rho |i,r,s>``, and analogously for
    ``B`` and ``C``.
    """
    ax = _axis(subsystem)
    total = int(np.prod(shape))
    t = np.asarray(rho).reshape(tuple(shape) * 2)
    return np.swapaxes(t, ax, ax + 3).reshape(total, total)


def partial_transpose(psi: StateVector, subsystem: str) -> HermitianOperator:
    """Partial transpose of ``|psi><psi|`` on the full tripartite space."""
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return HermitianOperator(transpose_subsystem(rho, psi.dims.shape, subsystem))


def reduce_rest(psi: StateVector, traced: str) -> np.ndarray:
    """Reduced state of the two subsystems other than ``traced``."""
    mat = _split(psi, traced)
    return mat.T @ mat.conj()


def schmidt_values(psi: StateVector, subsystem: str) -> np.ndarray:
    """Squared Schmidt coefficients across ``subsystem | rest``, descending."""
    s = np.linalg.svd(_split(psi, subsystem), compute_uv=False)
    return s**2


def _compressed_pt(psi: StateVector, subsystem: str) -> np.ndarray:
    # Rotate both sides of the cut to their Schmidt bases and drop the null
    # space; a local change of basis leaves the PT spectrum unchanged apart
    # from zeros.
    s = np.linalg.svd(_split(psi, subsystem), compute_uv=False)
    s = s[s > _SCHMIDT_FLOOR]
    r = s.size
    amps = np.diag(s).astype(complex)
    rho = np.multiply.outer(amps, amps.conj())          # [x, y, x', y']
    return np.swapaxes(rho, 0, 2).reshape(r * r, r * r)


def pt_eigenvalues(psi: StateVector, subsystem: str, method: str = "compressed") -> np.ndarray:
    """Eigenvalues of the partial transpose on ``subsystem``.

    ``method='full'`` diagonalizes the PT on the whole tripartite space;
    ``'compressed'`` works on the support of the two reduced states, which
    has the same nonzero spectrum and is much smaller.
    """
    if method == "full":
        return partial_transpose(psi, subsystem).eigenvalues
    if method == "compressed":
        return np.linalg.eigvalsh(_compressed_pt(psi, subsystem))
    raise ValueError(f"unknown method {method!r}")


def negativity(psi: StateVector, subsystem: str, method: str = "compressed") -> float:
    """Sum of the moduli of the negative PT eigenvalues."""
    vals = pt_eigenvalues(psi, subsystem, method)
    return float(-np.sum(vals[vals < NEGATIVE_EIG_THRESHOLD]))


def trace_norm(psi: StateVector, subsystem: str, method: str = "compressed") -> float:
    """``||rho^T||_1`` for the partial transpose on ``subsystem``."""
    return float(np.sum(np.abs(pt_eigenvalues(psi, subsystem, method))))


def linear_entropy(rho: DensityMatrix, d: int) -> float:
    """``d/(d-1) (1 - tr rho^2)``; zero when ``d == 1``.

    Raises
    ------
    DimensionMismatchError
        If ``d`` is smaller than the number of eigenvalues of ``rho`` above
        the population threshold.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    rank = int(np.sum(rho.eigenvalues > POPULATION_THRESHOLD))
    if d < rank:
        raise DimensionMismatchError(
            f"d={d} is smaller than the rank {rank} of rho^{rho.label}")
    if d == 1:
        log.info("linear entropy with d=1 for subsystem %s set to 0", rho.label)
        return 0.0
    return d / (d - 1) * (1.0 - rho.purity)


def mode_count(populations: np.ndarray, threshold: float = POPULATION_THRESHOLD) -> int:
    """Smallest D with total population on levels >= D not above ``threshold``."""
    pops = np.asarray(populations, dtype=float)
    # tail[D] = sum(pops[D:]); tail[len] = 0
    tail = np.concatenate([np.cumsum(pops[::-1])[::-1], [0.0]])
    return int(np.argmax(tail <= threshold))


def effective_mode_count(trajectory: Iterable, threshold: float = POPULATION_THRESHOLD) -> int:
    """Number of modes available to a subsystem over a whole trajectory.

    Parameters
    ----------
    trajectory : iterable of DensityMatrix or population arrays
        Reduced states of one subsystem at the sampled times.

    Returns
    -------
    int
        ``max(2, D)`` where ``D`` is the smallest level count that holds all
        but ``threshold`` of the population at every sample.
    """
    D = None
    for rho in trajectory:
        pops = rho.populations if isinstance(rho, DensityMatrix) else rho
        D = max(D or 0, mode_count(pops, threshold))
    if D is None:
        raise ValueError("empty trajectory")
    return max(2, D)


def measure(psi: StateVector, subsystem: str, d: int) -> MeasureResult:
    rho = reduce(psi, subsystem)
    return MeasureResult(
        negativity=negativity(psi, subsystem),
        linear_entropy=linear_entropy(rho, d),
        purity=rho.purity,
        effective_d=d,
    )
