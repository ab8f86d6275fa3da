"""
Tripartite entanglement dynamics of a trapped ion in an optical cavity.

The ion's internal qubit (A), its trap phonon mode (B) and the cavity
photon mode (C) evolve under a laser carrier drive plus a red-sideband
cavity coupling.  The package builds the Hamiltonian in three fidelity
tiers, evolves pure states exactly, and evaluates negativity and linear
entropy for each subsystem, alone or over (theta, T) grids.
"""

from .errors import (BlockAmbiguityError, DimensionMismatchError,
                     IonCavityError, PreconditionError, TruncationError)
from .fock import (HermitianOperator, SpaceDims, StateVector, basis_index,
                   basis_state, coherent_amplitudes, ladder_matrices,
                   ok_diagonal, ok_matrix, unindex)
from .hamiltonians import (BlockSpec, ModelParams, Tier, assign_blocks,
                           build_block, build_block_model, build_full,
                           build_hamiltonian, build_ld, sever_couplings)
from .measures import (DensityMatrix, MeasureResult, effective_mode_count,
                       linear_entropy, measure, negativity, partial_transpose,
                       transpose_subsystem, reduce_rest,
                       reduce)
from .propagator import (ExtrapolationWarning, Propagator, analytic_block11,
                         evolve, ghz_fidelity)
from .states import Family, InitialSpec, ghz_target, make_initial
from .sweep import (ConvergenceReport, Grid, SweepConfig, SweepRecord,
                    SweepResult, convergence_study, run_sweep)

__version__ = "0.1.0"
