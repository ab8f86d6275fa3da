"""
Interaction Hamiltonians of a trapped ion driven by a resonant laser and
coupled to a cavity mode tuned to the red motional sideband.

Three fidelity tiers are available:

``full``
    Laser and cavity terms dressed with the Lamb-Dicke operators ``O_0``
    (at ``eta_L``) and ``O_1`` (at ``eta_c``).
``ld``
    Lamb-Dicke limit, ``O_k -> 1``.
``block``
    Direct sum of closed four-level blocks
    ``{|g,M-1,N-1>, |e,M-1,N-1>, |g,M,N>, |e,M,N>}``; the coupling from a
    block's top state to the next rung of the ladder is dropped.

Units: hbar = 1, energies in the same units as ``a = g*eta_c/2``; times are
handled as the scaled time ``T = a*t``.
"""

import enum
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import BlockAmbiguityError, TruncationError
from .fock import (HermitianOperator, SpaceDims, StateVector, basis_index,
                   ladder_matrices, ok_matrix)

__all__ = [
    "Tier", "ModelParams", "BlockSpec", "build_ld", "build_full",
    "build_block", "build_block_model", "assign_blocks", "block_support",
    "sever_couplings", "build_hamiltonian",
]


class Tier(str, enum.Enum):
    BLOCK = "block"
    LD = "ld"
    FULL = "full"


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the ion-trap-cavity model.

    Parameters
    ----------
    Omega : float
        Laser Rabi coupling.
    g : float
        Ion-cavity coupling.
    eta_L, eta_c : float
        Lamb-Dicke parameters of the laser and cavity fields.
    """

    Omega: float
    g: float
    eta_L: float = 0.0
    eta_c: float = 0.1

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"a = g*eta_c/2 must be positive, got {self.a}")
        if self.eta_L < 0 or self.eta_c < 0:
            raise ValueError("Lamb-Dicke parameters must be non-negative")

    @property
    def a(self) -> float:
        return 0.5 * self.g * self.eta_c

    @property
    def mu(self) -> float:
        return math.hypot(self.a, self.Omega)

    @classmethod
    def from_ratio(cls, mu_over_a=4.0, g_eta_c=2.0, eta_L=0.1, eta_c=0.1):
        """Parameters fixed by ``mu/a`` and the product ``g*eta_c = 2a``."""
        if mu_over_a < 1:
            raise ValueError(f"mu/a must be >= 1, got {mu_over_a}")
        if eta_c <= 0:
            raise ValueError("eta_c must be positive to fix g from g*eta_c")
        a = 0.5 * g_eta_c
        return cls(Omega=a * math.sqrt(mu_over_a**2 - 1), g=g_eta_c / eta_c,
                   eta_L=eta_L, eta_c=eta_c)

    def pi_instant_deg(self, p: int) -> float:
        """Scaled time (degrees) at which ``mu*t = p*pi``."""
        return p * 180.0 * self.a / self.mu


@dataclass(frozen=True)
class BlockSpec:
    """Closed block B(M, N) on {|g,M-1,N-1>, |e,M-1,N-1>, |g,M,N>, |e,M,N>}."""

    M: int
    N: int

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ValueError(f"block indices must be >= 1, got ({self.M}, {self.N})")

    @property
    def states(self) -> Tuple[Tuple[int, int, int], ...]:
        M, N = self.M, self.N
        return ((0, M - 1, N - 1), (1, M - 1, N - 1), (0, M, N), (1, M, N))

    def fits(self, dims: SpaceDims) -> bool:
        return self.M < dims.phonon_cutoff and self.N < dims.photon_cutoff

    def indices(self, dims: SpaceDims) -> List[int]:
        return [basis_index(dims, *s) for s in self.states]


def build_ld(dims: SpaceDims, params: ModelParams) -> HermitianOperator:
    """Lamb-Dicke-limit Hamiltonian.

    ``Omega (s+ + s-) + g eta_c (s+ b a + s- b^dag a^dag)``
    """
    a, b, sp, sm = ladder_matrices(dims)
    sideband = sp @ b @ a
    h = params.Omega * (sp + sm) + params.g * params.eta_c * (sideband + sideband.T)
    return HermitianOperator(h)


def build_full(dims: SpaceDims, params: ModelParams) -> HermitianOperator:
    """Hamiltonian with the Lamb-Dicke operators kept to all orders.

    ``Omega (s+ O0(eta_L) + s- O0(eta_L)) + g eta_c (s+ b O1(eta_c) a + h.c.)``
    """
    a, b, sp, sm = ladder_matrices(dims)
    o0 = ok_matrix(dims, 0, params.eta_L)
    o1 = ok_matrix(dims, 1, params.eta_c)
    sideband = sp @ b @ o1 @ a
    h = params.Omega * (sp @ o0 + sm @ o0) + params.g * params.eta_c * (
        sideband + sideband.conj().T)
    return HermitianOperator(h)


def build_block(spec: BlockSpec, params: ModelParams) -> HermitianOperator:
    """4x4 Hamiltonian of block B(M, N) in its own ordered basis."""
    bond = params.g * params.eta_c * math.sqrt(spec.M * spec.N)
    h = np.zeros((4, 4))
    for k, c in enumerate((params.Omega, bond, params.Omega)):
        h[k, k + 1] = h[k + 1, k] = c
    return HermitianOperator(h)


def build_block_model(dims: SpaceDims, blocks: Sequence[BlockSpec],
                      params: ModelParams) -> HermitianOperator:
    """Direct sum of closed blocks embedded in the full product space."""
    h = np.zeros((dims.total, dims.total))
    for spec in blocks:
        if not spec.fits(dims):
            raise TruncationError(
                f"block B({spec.M},{spec.N}) does not fit cutoffs "
                f"({dims.phonon_cutoff}, {dims.photon_cutoff})")
        idx = spec.indices(dims)
        h[np.ix_(idx, idx)] += build_block(spec, params).matrix.real
    return HermitianOperator(h)


def assign_blocks(initial: StateVector) -> List[Tuple[BlockSpec, np.ndarray]]:
    """Split a state into closed blocks.

    Every populated component |i,m,n> is taken as a lower-rung state of
    B(m+1, n+1): |g,m,n> is the block's first element and |e,m,n> its second.

    Returns
    -------
    list of (BlockSpec, ndarray)
        Disjoint blocks, ordered by first appearance in the flat basis, each
        with its four amplitudes.

    Raises
    ------
    BlockAmbiguityError
        If a populated state is also an upper-rung member of another block.
    TruncationError
        If a required block reaches beyond the cutoffs.
    """
    dims = initial.dims
    psi = initial.tensor
    populated = [tuple(int(x) for x in ix) for ix in np.argwhere(psi != 0)]
    blocks = {}
    for i, m, n in populated:
        spec = BlockSpec(m + 1, n + 1)
        if not spec.fits(dims):
            raise TruncationError(
                f"state |{'ge'[i]},{m},{n}> needs block B({m + 1},{n + 1}), "
                f"which exceeds cutoffs ({dims.phonon_cutoff}, {dims.photon_cutoff})")
        amps = blocks.setdefault(spec, np.zeros(4, dtype=complex))
        amps[i] = psi[i, m, n]

    owner = {}
    for spec in blocks:
        for s in spec.states:
            if s in owner:
                raise BlockAmbiguityError(
                    f"state |{'ge'[s[0]]},{s[1]},{s[2]}> belongs to both "
                    f"B({owner[s].M},{owner[s].N}) and B({spec.M},{spec.N})")
            owner[s] = spec
    return list(blocks.items())


def block_support(dims: SpaceDims, blocks: Sequence[BlockSpec]) -> np.ndarray:
    """Boolean mask over the flat basis marking the blocks' states."""
    mask = np.zeros(dims.total, dtype=bool)
    for spec in blocks:
        mask[spec.indices(dims)] = True
    return mask


def sever_couplings(h: HermitianOperator, dims: SpaceDims,
                    blocks: Sequence[BlockSpec]) -> HermitianOperator:
    """Zero every matrix element linking a block to states outside it.

    Test-harness hook: applied to the ``ld`` Hamiltonian this removes the
    ladder couplings above each block and should reproduce the block model
    on the blocks' support.
    """
    mat = np.array(h.matrix)
    for spec in blocks:
        inside = np.zeros(dims.total, dtype=bool)
        inside[spec.indices(dims)] = True
        mat[np.ix_(inside, ~inside)] = 0
        mat[np.ix_(~inside, inside)] = 0
    return HermitianOperator(mat)


def build_hamiltonian(tier, dims: SpaceDims, params: ModelParams,
                      blocks: Sequence[BlockSpec] = ()) -> HermitianOperator:
    """Dispatch on the model tier; ``blocks`` is only used by ``block``."""
    tier = Tier(tier)
    if tier is Tier.BLOCK:
        return build_block_model(dims, blocks, params)
    if tier is Tier.LD:
        return build_ld(dims, params)
    return build_full(dims, params)
