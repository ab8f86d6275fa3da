"""
Truncated Hilbert space of the ion qubit, the trap phonon mode and the
cavity photon mode.

Basis states are |i, m, n> with i in {g, e}, m the phonon number and n the
photon number.  Flat indices are row-major with the qubit outermost, so a
state vector reshaped to ``(2, phonon_cutoff, photon_cutoff)`` is indexed
as ``psi[i, m, n]``.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from .errors import DimensionMismatchError, TruncationError

__all__ = [
    "SpaceDims", "StateVector", "HermitianOperator", "qubit_level",
    "basis_index", "unindex", "basis_state", "ladder_matrices",
    "ok_diagonal", "ok_matrix", "coherent_amplitudes",
    "DEFAULT_TRUNCATION_TOL",
]

DEFAULT_TRUNCATION_TOL = 1e-9

_LEVELS = {"g": 0, "e": 1, 0: 0, 1: 1}


def qubit_level(i):
    """Map ``'g'``/``'e'`` (or 0/1) to the qubit index."""
    try:
        return _LEVELS[i]
    except (KeyError, TypeError):
        raise ValueError(f"qubit level must be 'g', 'e', 0 or 1, got {i!r}")


@dataclass(frozen=True)
class SpaceDims:
    """Cutoffs of the qubit x phonon x photon product space.

    Phonon numbers run over ``0..phonon_cutoff-1`` and photon numbers over
    ``0..photon_cutoff-1``.
    """

    phonon_cutoff: int
    photon_cutoff: int

    def __post_init__(self):
        for name in ("phonon_cutoff", "photon_cutoff"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {value!r}")

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (2, self.phonon_cutoff, self.photon_cutoff)

    @property
    def total(self) -> int:
        return 2 * self.phonon_cutoff * self.photon_cutoff


def basis_index(dims: SpaceDims, i, m: int, n: int) -> int:
    """Flat index of |i, m, n>.

    Examples
    --------
    >>> basis_index(SpaceDims(3, 2), 'g', 2, 1)
    5
    """
    q = qubit_level(i)
    if not 0 <= m < dims.phonon_cutoff:
        raise IndexError(f"phonon number m={m} outside 0..{dims.phonon_cutoff - 1}")
    if not 0 <= n < dims.photon_cutoff:
        raise IndexError(f"photon number n={n} outside 0..{dims.photon_cutoff - 1}")
    return (q * dims.phonon_cutoff + m) * dims.photon_cutoff + n


def unindex(dims: SpaceDims, index: int) -> Tuple[int, int, int]:
    """Inverse of :func:`basis_index`; returns ``(i, m, n)`` with i in {0, 1}."""
    if not 0 <= index < dims.total:
        raise IndexError(f"flat index {index} outside 0..{dims.total - 1}")
    return tuple(int(x) for x in np.unravel_index(index, dims.shape))


def basis_state(dims: SpaceDims, i, m: int, n: int) -> "StateVector":
    amps = np.zeros(dims.total, dtype=complex)
    amps[basis_index(dims, i, m, n)] = 1.0
    return StateVector(dims, amps)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of the tripartite system."""

    dims: SpaceDims
    amplitudes: np.ndarray

    # guard only; tests hold evolution to 1e-12
    NORM_TOL = 1e-10

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.dims.total:
            raise DimensionMismatchError(
                f"{amps.size} amplitudes for a space of dimension {self.dims.total}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > self.NORM_TOL:
            raise ValueError(f"state is not normalized (norm {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, dims: SpaceDims, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(dims, amps / norm)

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes as a ``(2, M, N)`` array indexed ``[i, m, n]``."""
        return self.amplitudes.reshape(self.dims.shape)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, i, m, n) -> complex:
        return complex(self.amplitudes[basis_index(self.dims, i, m, n)])

    def overlap(self, other: "StateVector") -> complex:
        """Inner product <self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense Hermitian matrix with a lazily computed eigensystem.

    The matrix is symmetrized on construction after checking that it is
    Hermitian to ``atol``; eigenvalues come back in ascending order.
    """

    matrix: np.ndarray
    atol: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got shape {mat.shape}")
        dev = np.max(np.abs(mat - mat.conj().T)) if mat.size else 0.0
        if dev > self.atol:
            raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3g})")
        mat = 0.5 * (mat + mat.conj().T)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def eigensystem(self) -> Tuple[np.ndarray, np.ndarray]:
        vals, vecs = np.linalg.eigh(self.matrix)
        vals.setflags(write=False)
        vecs.setflags(write=False)
        return vals, vecs

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eigensystem[0]

    def __matmul__(self, other):
        return self.matrix @ other


def _embed(dims: SpaceDims, qubit=None, phonon=None, photon=None) -> np.ndarray:
    factors = [
        np.eye(2) if qubit is None else qubit,
        np.eye(dims.phonon_cutoff) if phonon is None else phonon,
        np.eye(dims.photon_cutoff) if photon is None else photon,
    ]
    return np.kron(np.kron(factors[0], factors[1]), factors[2])


def _destroy(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), 1)


def ladder_matrices(dims: SpaceDims):
    """Phonon and photon annihilators and qubit raising/lowering operators.

    Returns
    -------
    a, b, sigma_plus, sigma_minus : ndarray
        Full-space matrices; ``a`` lowers the phonon number, ``b`` the photon
        number, ``sigma_plus`` maps |g> to |e>.
    """
    sp = np.array([[0.0, 0.0], [1.0, 0.0]])
    a = _embed(dims, phonon=_destroy(dims.phonon_cutoff))
    b = _embed(dims, photon=_destroy(dims.photon_cutoff))
    sigma_plus = _embed(dims, qubit=sp)
    return a, b, sigma_plus, sigma_plus.T.copy()


def ok_diagonal(cutoff: int, k: int, eta: float) -> np.ndarray:
    """Diagonal of the Lamb-Dicke operator O_k in the phonon number basis.

    ``O_k = exp(-eta^2/2) sum_p (i eta)^(2p) a^dag^p a^p / (p! (p+k)!)``.
    On |m> the series stops at p = m, giving

        exp(-eta^2/2) sum_{p=0}^{m} (-eta^2)^p C(m, p) / (p+k)!
    """
    if eta < 0:
        raise ValueError(f"eta must be >= 0, got {eta}")
    if int(k) != k or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k}")
    x = -float(eta) ** 2
    prefactor = math.exp(x / 2)
    diag = np.empty(cutoff)
    for m in range(cutoff):
        diag[m] = sum(
            x**p * math.comb(m, p) / math.factorial(p + k) for p in range(m + 1)
        )
    return prefactor * diag


def ok_matrix(dims: SpaceDims, k: int, eta: float) -> np.ndarray:
    """O_k acting on the phonon factor, embedded in the full product space."""
    return _embed(dims, phonon=np.diag(ok_diagonal(dims.phonon_cutoff, k, eta)))


def coherent_amplitudes(beta: complex, cutoff: int,
                        tol: Optional[float] = DEFAULT_TRUNCATION_TOL):
    """Fock amplitudes of the coherent state |beta> up to ``cutoff`` terms.

    Parameters
    ----------
    beta : complex
        Coherent amplitude; the mean phonon number is ``|beta|**2``.
    cutoff : int
        Number of retained terms, m = 0..cutoff-1.
    tol : float or None
        Largest accepted truncation deficit.  ``None`` disables the check.

    Returns
    -------
    amps : ndarray
        ``exp(-|beta|^2/2) beta^m / sqrt(m!)``.
    deficit : float
        ``1 - sum |amps|^2``.

    Raises
    ------
    TruncationError
        If the deficit exceeds ``tol``.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    beta = complex(beta)
    amps = np.empty(cutoff, dtype=complex)
    # recurrence avoids overflow in beta**m / sqrt(m!)
    amps[0] = math.exp(-abs(beta) ** 2 / 2)
    for m in range(1, cutoff):
        amps[m] = amps[m - 1] * beta / math.sqrt(m)
    if amps[0] > 0:
        deficit = _poisson_tail(abs(beta) ** 2, cutoff)
    else:
        # exp(-|beta|^2/2) underflowed; nothing representable was kept
        deficit = 1.0
    if tol is not None and deficit > tol:
        raise TruncationError(
            f"coherent state beta={beta} truncated at {cutoff} terms loses "
            f"{deficit:.3g} of its norm (tolerance {tol:.3g})", deficit)
    return amps, deficit


def _poisson_tail(mean: float, cutoff: int) -> float:
    # 1 - sum_{m<cutoff} e^-x x^m/m!, summed from the tail to keep precision
    if mean == 0:
        return 0.0
    term = math.exp(-mean)
    for m in range(1, cutoff):
        term *= mean / m
    tail, m = 0.0, cutoff
    term *= mean / m
    while True:
        tail += term
        m += 1
        nxt = term * mean / m
        if nxt < 1e-18 * tail or nxt == 0.0:
            break
        term = nxt
    return tail
