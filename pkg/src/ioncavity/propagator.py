"""
Unitary evolution under a time-independent Hamiltonian, and the closed-form
solution on the lowest block B(1,1).

Times are scaled times ``T = a*t`` given in degrees.
"""

import math
import warnings
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import PreconditionError
from .fock import HermitianOperator, SpaceDims, StateVector
from .hamiltonians import ModelParams
from .states import ghz_target

__all__ = [
    "Propagator", "evolve", "analytic_block11", "ghz_fidelity",
    "ExtrapolationWarning", "scaled_time_to_t",
]


class ExtrapolationWarning(UserWarning):
    """Closed form used away from the instants mu*t = p*pi where it is exact."""


def scaled_time_to_t(T_deg, a: float):
    """Convert scaled time in degrees to physical time ``t = T_rad / a``."""
    return np.deg2rad(T_deg) / a


class Propagator:
    """Eigendecomposition-based propagator ``exp(-i H t)``.

    The Hamiltonian is split into its connected components (sets of basis
    states linked by nonzero matrix elements) and each component is
    diagonalized once.  States outside every coupled component are left
    untouched, so populations that start at zero there stay exactly zero.
    Instances are never mutated after construction and can be shared
    between threads.

    Parameters
    ----------
    hamiltonian : HermitianOperator
        Matrix acting on ``dims``.
    a : float
        Scale ``g*eta_c/2`` used to convert scaled time to physical time.
    dims : SpaceDims
    """

    def __init__(self, hamiltonian: HermitianOperator, a: float, dims: SpaceDims):
        if hamiltonian.dim != dims.total:
            raise ValueError(
                f"Hamiltonian of dimension {hamiltonian.dim} does not act on {dims}")
        self.hamiltonian = hamiltonian
        self.a = float(a)
        self.dims = dims
        h = hamiltonian.matrix
        n_comp, labels = connected_components(
            csr_matrix(h != 0), directed=False)
        self.components = []
        for c in range(n_comp):
            idx = np.flatnonzero(labels == c)
            sub = h[np.ix_(idx, idx)]
            if idx.size == 1 and sub[0, 0] == 0:
                continue
            vals, vecs = np.linalg.eigh(sub)
            self.components.append((idx, vals, vecs))

    def coefficients(self, psi0: StateVector):
        """Initial amplitudes and their components in each eigenbasis."""
        amps = psi0.amplitudes
        return amps, [v.conj().T @ amps[idx] for idx, _, v in self.components]

    def evolve_amplitudes(self, coeffs, T_deg: float) -> np.ndarray:
        amps, parts = coeffs
        t = scaled_time_to_t(T_deg, self.a)
        out = np.array(amps, dtype=complex)
        for (idx, vals, vecs), c in zip(self.components, parts):
            out[idx] = vecs @ (np.exp(-1j * vals * t) * c)
        return out

    def evolve(self, psi0: StateVector, T_deg: float) -> StateVector:
        if psi0.dims != self.dims:
            raise ValueError(f"state lives on {psi0.dims}, propagator on {self.dims}")
        return StateVector(self.dims, self.evolve_amplitudes(self.coefficients(psi0), T_deg))


def evolve(prop: Propagator, psi0: StateVector, T_deg: float) -> StateVector:
    return prop.evolve(psi0, T_deg)


def analytic_block11(params: ModelParams, theta_deg: float, T_deg: float,
                     p: Optional[int] = None) -> np.ndarray:
    """Closed-form amplitudes on {|g,0,0>, |e,0,0>, |g,1,1>, |e,1,1>}.

    Starting from ``(cos th |g> + sin th |e>)|0,0>``, at the instants
    ``mu*t = p*pi``::

        (-1)^p (cos th cos aT, sin th cos aT, -i sin th sin aT, -i cos th sin aT)

    With ``p`` given, ``T_deg`` must be that instant (to 1e-9 in mu*t).
    Without ``p`` the parity is taken from ``round(mu*t/pi)`` and an
    :class:`ExtrapolationWarning` is issued when T is not such an instant,
    since the formula is then not the solution of the block dynamics.
    """
    aT = math.radians(T_deg)
    mut = params.mu / params.a * aT
    nearest = round(mut / math.pi)
    on_instant = abs(mut - nearest * math.pi) <= 1e-9
    if p is not None:
        if abs(mut - p * math.pi) > 1e-9:
            raise PreconditionError(
                f"T={T_deg} deg gives mu*t={mut:.12g}, not {p}*pi; "
                f"expected T={params.pi_instant_deg(p):.12g} deg")
        parity = p
    else:
        parity = nearest
        if not on_instant:
            warnings.warn(
                f"closed form evaluated at mu*t={mut:.6g}, not a multiple of pi",
                ExtrapolationWarning, stacklevel=2)
    th = math.radians(theta_deg)
    c, s = math.cos(aT), math.sin(aT)
    vec = np.array([
        math.cos(th) * c,
        math.sin(th) * c,
        -1j * math.sin(th) * s,
        -1j * math.cos(th) * s,
    ], dtype=complex)
    return (-1) ** parity * vec


def ghz_fidelity(psi: StateVector, q: int = 0) -> float:
    """``|<GHZ_q|psi>|^2``; independent of global phase."""
    target = ghz_target(q, psi.dims)
    return float(abs(target.overlap(psi)) ** 2)
