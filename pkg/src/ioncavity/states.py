"""Initial-state families and the GHZ target state."""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fock import (DEFAULT_TRUNCATION_TOL, SpaceDims, StateVector,
                   basis_index, coherent_amplitudes)

__all__ = ["Family", "InitialSpec", "make_initial", "ghz_target", "coherent_terms"]


class Family(str, enum.Enum):
    I = "i"      # (cos th |g> + sin th |e>) |0, 0>
    II = "ii"    # (cos th |g,1> + sin th |e,0>) |0>
    III = "iii"  # (cos th |g,beta> + sin th |e,-beta>) |0>, renormalized


@dataclass(frozen=True)
class InitialSpec:
    family: Family
    theta_deg: float
    beta: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not 0.0 <= self.theta_deg <= 180.0:
            raise ValueError(f"theta must lie in [0, 180] degrees, got {self.theta_deg}")


def coherent_terms(dims: SpaceDims) -> int:
    """Number of phonon levels used for a coherent-state expansion.

    The top phonon level is left empty so that every populated |i,m,0> has
    its closed block B(m+1, 1) inside the truncated space.
    """
    return max(dims.phonon_cutoff - 1, 1)


def make_initial(spec: InitialSpec, dims: SpaceDims,
                 tol: float = DEFAULT_TRUNCATION_TOL) -> StateVector:
    """Build one of the three initial states.

    Raises
    ------
    TruncationError
        Family ``iii`` when the coherent expansion loses more than ``tol``.
    IndexError
        When the cutoffs cannot hold the required Fock states.
    """
    th = math.radians(spec.theta_deg)
    c, s = math.cos(th), math.sin(th)
    psi = np.zeros(dims.shape, dtype=complex)
    if spec.family is Family.I:
        psi.flat[basis_index(dims, "g", 0, 0)] = c
        psi.flat[basis_index(dims, "e", 0, 0)] = s
    elif spec.family is Family.II:
        psi.flat[basis_index(dims, "g", 1, 0)] = c
        psi.flat[basis_index(dims, "e", 0, 0)] = s
    else:
        K = coherent_terms(dims)
        plus, _ = coherent_amplitudes(spec.beta, K, tol)
        minus, _ = coherent_amplitudes(-spec.beta, K, tol)
        psi[0, :K, 0] = c * plus
        psi[1, :K, 0] = s * minus
    # <beta|-beta> != 0 and truncation both leave family iii unnormalized
    return StateVector.normalized(dims, psi)


def ghz_target(q: int, dims: SpaceDims) -> StateVector:
    """``(-1)^(1+q)/sqrt(2) (|g,0,0> - i|e,1,1>)``."""
    if q not in (0, 1):
        raise ValueError(f"q must be 0 or 1, got {q}")
    amps = np.zeros(dims.total, dtype=complex)
    sign = (-1) ** (1 + q) / math.sqrt(2)
    amps[basis_index(dims, "g", 0, 0)] = sign
    amps[basis_index(dims, "e", 1, 1)] = -1j * sign
    return StateVector(dims, amps)
