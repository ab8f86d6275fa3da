import math

import numpy as np
import pytest

from ioncavity.errors import BlockAmbiguityError, TruncationError
from ioncavity.fock import SpaceDims, StateVector, basis_index, unindex
from ioncavity.hamiltonians import (BlockSpec, ModelParams, assign_blocks,
                                    block_support, build_block,
                                    build_block_model, build_full, build_ld,
                                    sever_couplings)
from ioncavity.states import Family, InitialSpec, make_initial

from oracles import full_hamiltonian, ld_hamiltonian

PARAMS = ModelParams.from_ratio(4.0)          # a = 1, Omega = sqrt(15)
DIMS = SpaceDims(5, 4)


def test_model_params_derived():
    p = ModelParams(Omega=0.7, g=3.0, eta_c=0.2)
    assert p.a == pytest.approx(0.3)
    assert p.mu**2 - p.a**2 - p.Omega**2 == pytest.approx(0, abs=1e-12)
    assert PARAMS.a == pytest.approx(1.0, abs=1e-15)
    assert PARAMS.mu == pytest.approx(4.0, abs=1e-14)
    assert PARAMS.pi_instant_deg(1) == pytest.approx(45.0, abs=1e-12)
    with pytest.raises(ValueError):
        ModelParams(Omega=1.0, g=0.0)


class TestLD:
    h = build_ld(DIMS, PARAMS).matrix

    def el(self, bra, ket):
        return self.h[basis_index(DIMS, *bra), basis_index(DIMS, *ket)]

    def test_matrix_elements(self):
        assert self.el(("e", 0, 0), ("g", 1, 1)) == pytest.approx(2 * PARAMS.a)
        assert self.el(("e", 0, 0), ("g", 0, 0)) == pytest.approx(PARAMS.Omega)
        assert self.el(("g", 0, 0), ("g", 0, 0)) == 0

    def test_matches_elementwise_oracle(self):
        ref = ld_hamiltonian(5, 4, PARAMS.Omega, PARAMS.g * PARAMS.eta_c)
        np.testing.assert_allclose(self.h, ref, atol=1e-14)

    def test_hermitian(self):
        assert np.max(np.abs(self.h - self.h.conj().T)) <= 1e-14

    def test_conserves_phonon_minus_photon(self):
        for r, c in zip(*np.nonzero(self.h)):
            _, m1, n1 = unindex(DIMS, r)
            _, m2, n2 = unindex(DIMS, c)
            assert m1 - n1 == m2 - n2


class TestFull:
    def test_equals_ld_in_lamb_dicke_limit(self):
        # a = g*eta_c/2 must stay finite, so eta -> 0 is taken with g*eta_c fixed;
        # at eta = 1e-9 every O_k element rounds to exactly 1
        p = ModelParams(Omega=PARAMS.Omega, g=2.0 / 1e-9, eta_L=1e-9, eta_c=1e-9)
        np.testing.assert_array_equal(build_full(DIMS, p).matrix, build_ld(DIMS, p).matrix)

    def test_exact_equality_with_ld_when_both_eta_vanish_in_ok(self):
        # eta_L = 0 gives O_0 = 1 exactly; laser terms must coincide
        p = ModelParams(Omega=1.3, g=20.0, eta_L=0.0, eta_c=0.1)
        full, ld = build_full(DIMS, p).matrix, build_ld(DIMS, p).matrix
        i, j = basis_index(DIMS, "e", 2, 1), basis_index(DIMS, "g", 2, 1)
        assert full[i, j] == ld[i, j] == 1.3

    def test_matrix_elements(self):
        p = ModelParams(Omega=1.7, g=20.0, eta_L=0.1, eta_c=0.1)
        h = build_full(DIMS, p).matrix
        e00, g00, g11 = (basis_index(DIMS, *s) for s in (("e", 0, 0), ("g", 0, 0), ("g", 1, 1)))
        assert h[e00, g00] == pytest.approx(1.7 * math.exp(-0.005), abs=1e-15)
        assert h[e00, g11] == pytest.approx(20.0 * 0.1 * math.exp(-0.005), abs=1e-14)

    @pytest.mark.parametrize("eta_L, eta_c", [(0.1, 0.1), (0.3, 0.05), (0.0, 0.4)])
    def test_matches_elementwise_oracle(self, eta_L, eta_c):
        p = ModelParams(Omega=1.1, g=0.8 / eta_c, eta_L=eta_L, eta_c=eta_c)
        ref = full_hamiltonian(5, 4, p.Omega, p.g, eta_L, eta_c)
        np.testing.assert_allclose(build_full(DIMS, p).matrix, ref, atol=1e-13)

    def test_converges_to_ld(self):
        errs = []
        for eta in (0.1, 0.01, 0.001):
            p = ModelParams(Omega=1.0, g=2.0 / eta, eta_L=eta, eta_c=eta)
            errs.append(np.max(np.abs(build_full(DIMS, p).matrix - build_ld(DIMS, p).matrix)))
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-4


class TestBlock:
    def test_eigenvalues_b11(self):
        vals = build_block(BlockSpec(1, 1), PARAMS).eigenvalues
        a, mu = PARAMS.a, PARAMS.mu
        np.testing.assert_allclose(vals, [-(mu + a), -(mu - a), mu - a, mu + a], atol=1e-12)

    def test_uncoupled_laser(self):
        p = ModelParams(Omega=0.0, g=20.0, eta_c=0.1)
        np.testing.assert_allclose(build_block(BlockSpec(1, 1), p).eigenvalues,
                                   [-2.0, 0, 0, 2.0], atol=1e-14)

    @pytest.mark.parametrize("M, N", [(1, 1), (2, 1), (3, 2)])
    def test_structure(self, M, N):
        h = build_block(BlockSpec(M, N), PARAMS).matrix.real
        assert np.trace(h) == 0
        np.testing.assert_allclose(np.diag(h, 1), [PARAMS.Omega, 2 * math.sqrt(M * N), PARAMS.Omega])
        assert np.count_nonzero(np.triu(h, 2)) == 0

    def test_block_model_embeds_ld_submatrix(self):
        spec = BlockSpec(2, 1)
        h = build_block_model(DIMS, [spec], PARAMS).matrix
        ld = build_ld(DIMS, PARAMS).matrix
        idx = spec.indices(DIMS)
        np.testing.assert_allclose(h[np.ix_(idx, idx)], ld[np.ix_(idx, idx)], atol=1e-14)
        assert np.count_nonzero(h) == 6

    def test_block_must_fit(self):
        with pytest.raises(TruncationError):
            build_block_model(SpaceDims(2, 2), [BlockSpec(2, 1)], PARAMS)


class TestAssignBlocks:
    def test_ground_state(self):
        psi = make_initial(InitialSpec(Family.I, 0.0), DIMS)
        [(spec, amps)] = assign_blocks(psi)
        assert spec == BlockSpec(1, 1)
        np.testing.assert_array_equal(amps, [1, 0, 0, 0])

    def test_family_ii(self):
        th = math.radians(30)
        psi = make_initial(InitialSpec(Family.II, 30.0), DIMS)
        blocks = assign_blocks(psi)
        assert [b for b, _ in blocks] == [BlockSpec(2, 1), BlockSpec(1, 1)]
        np.testing.assert_allclose(blocks[0][1], [math.cos(th), 0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(blocks[1][1], [0, math.sin(th), 0, 0], atol=1e-15)

    def test_coherent_family(self):
        dims = SpaceDims(7, 2)
        psi = make_initial(InitialSpec(Family.III, 45.0, 1.0), dims, tol=1e-2)
        blocks = assign_blocks(psi)
        assert [b for b, _ in blocks] == [BlockSpec(m + 1, 1) for m in range(6)]
        mask = block_support(dims, [b for b, _ in blocks])
        assert mask.sum() == 24
        assert np.sum(np.abs(psi.amplitudes[~mask]) ** 2) == 0

    def test_ambiguous_state_rejected(self):
        amps = np.zeros(DIMS.total, dtype=complex)
        amps[basis_index(DIMS, "g", 0, 0)] = amps[basis_index(DIMS, "g", 1, 1)] = 1
        with pytest.raises(BlockAmbiguityError, match=r"\|g,1,1>"):
            assign_blocks(StateVector.normalized(DIMS, amps))

    def test_block_outside_cutoff_rejected(self):
        dims = SpaceDims(3, 3)
        amps = np.zeros(dims.total)
        amps[basis_index(dims, "e", 2, 0)] = 1
        with pytest.raises(TruncationError):
            assign_blocks(StateVector(dims, amps))


def test_sever_couplings_isolates_block():
    spec = BlockSpec(1, 1)
    h = sever_couplings(build_ld(DIMS, PARAMS), DIMS, [spec]).matrix
    idx = spec.indices(DIMS)
    outside = np.setdiff1d(np.arange(DIMS.total), idx)
    assert not np.any(h[np.ix_(idx, outside)])
    ref = ld_hamiltonian(5, 4, PARAMS.Omega, 2.0, sever=[((1, 1, 1), (0, 2, 2))])
    np.testing.assert_allclose(h, ref, atol=1e-14)
