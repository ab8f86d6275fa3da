import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ioncavity.errors import DimensionMismatchError
from ioncavity.fock import SpaceDims, StateVector, basis_state
from ioncavity.measures import (DensityMatrix, effective_mode_count,
                                linear_entropy, measure, mode_count,
                                negativity, partial_transpose, pt_eigenvalues,
                                reduce, schmidt_values, trace_norm)
from ioncavity.states import ghz_target

from oracles import pt_brute, random_state, reduced, schmidt_negativity

GHZ_DIMS = SpaceDims(2, 2)


@pytest.fixture
def ghz():
    return ghz_target(0, GHZ_DIMS)


class TestReduce:
    @pytest.mark.parametrize("label", "ABC")
    def test_ghz_marginals(self, ghz, label):
        rho = reduce(ghz, label)
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-15)
        assert rho.purity == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("label, keep", [("A", 0), ("B", 1), ("C", 2)])
    def test_against_explicit_trace(self, label, keep):
        dims = SpaceDims(3, 4)
        psi = StateVector(dims, random_state(np.random.default_rng(5), dims.total))
        np.testing.assert_allclose(reduce(psi, label).matrix,
                                   reduced(psi.amplitudes, dims.shape, keep), atol=1e-14)

    def test_product_state_is_pure(self):
        rho = reduce(basis_state(SpaceDims(3, 3), "e", 2, 1), "B")
        assert rho.purity == pytest.approx(1.0)
        np.testing.assert_array_equal(rho.populations, [0, 0, 1])

    def test_rejects_bad_label(self, ghz):
        with pytest.raises(ValueError):
            reduce(ghz, "D")


class TestPartialTranspose:
    @pytest.mark.parametrize("label, which", [("A", 0), ("B", 1), ("C", 2)])
    def test_against_index_swap(self, label, which):
        dims = SpaceDims(2, 3)
        psi = StateVector(dims, random_state(np.random.default_rng(7), dims.total))
        np.testing.assert_allclose(partial_transpose(psi, label).matrix,
                                   pt_brute(psi.amplitudes, dims.shape, which), atol=1e-14)

    @pytest.mark.parametrize("label", "ABC")
    def test_ghz_spectrum(self, ghz, label):
        vals = np.sort(pt_eigenvalues(ghz, label, "full"))
        np.testing.assert_allclose(vals, [-0.5, 0, 0, 0, 0, 0.5, 0.5, 0.5], atol=1e-14)
        assert negativity(ghz, label) == pytest.approx(0.5, abs=1e-14)
        assert trace_norm(ghz, label) == pytest.approx(2.0, abs=1e-14)

    def test_unknown_method(self, ghz):
        with pytest.raises(ValueError):
            pt_eigenvalues(ghz, "A", "lanczos")


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from("ABC"), st.integers(0, 2**32 - 1))
def test_compressed_and_full_negativity_agree(M, N, label, seed):
    dims = SpaceDims(M, N)
    psi = StateVector(dims, random_state(np.random.default_rng(seed), dims.total))
    full = negativity(psi, label, "full")
    assert negativity(psi, label) == pytest.approx(full, abs=1e-10)
    # pure states: N = ((sum sqrt(lambda))^2 - 1)/2
    keep = "ABC".index(label)
    assert full == pytest.approx(schmidt_negativity(psi.amplitudes, dims.shape, keep), abs=1e-10)


def test_negativity_bounds():
    rng = np.random.default_rng(9)
    dims = SpaceDims(4, 4)
    for _ in range(20):
        psi = StateVector(dims, random_state(rng, dims.total))
        for label in "ABC":
            d = min(reduce(psi, label).dim, dims.total // reduce(psi, label).dim)
            assert 0 <= negativity(psi, label) <= (d - 1) / 2 + 1e-12


def test_product_state_has_no_negativity():
    psi = basis_state(SpaceDims(3, 3), "g", 1, 2)
    for label in "ABC":
        assert negativity(psi, label) == 0.0
        assert schmidt_values(psi, label)[0] == pytest.approx(1.0, abs=1e-15)
        assert np.sum(schmidt_values(psi, label)[1:]) == 0.0


def test_phase_invariance():
    dims = SpaceDims(3, 2)
    psi = StateVector(dims, random_state(np.random.default_rng(4), dims.total))
    other = StateVector(dims, np.exp(1.1j) * psi.amplitudes)
    for label in "ABC":
        assert negativity(other, label) == pytest.approx(negativity(psi, label), abs=1e-13)


class TestLinearEntropy:
    def test_maximally_mixed_qubit(self, ghz):
        assert linear_entropy(reduce(ghz, "A"), 2) == pytest.approx(1.0, abs=1e-14)

    def test_pure_state(self):
        rho = reduce(basis_state(SpaceDims(3, 3), "g", 0, 0), "B")
        assert linear_entropy(rho, 3) == pytest.approx(0.0, abs=1e-15)

    def test_qutrit_bound(self):
        rho = DensityMatrix("B", np.diag([0.5, 0.5, 0.0]))
        assert linear_entropy(rho, 3) == pytest.approx(0.75)
        assert linear_entropy(rho, 2) == pytest.approx(1.0)

    def test_d_one_is_zero(self):
        rho = DensityMatrix("C", np.diag([1.0, 0.0]))
        assert linear_entropy(rho, 1) == 0.0

    def test_dimension_mismatch(self):
        rho = DensityMatrix("B", np.diag([0.4, 0.3, 0.3]))
        with pytest.raises(DimensionMismatchError):
            linear_entropy(rho, 2)
        with pytest.raises(ValueError):
            linear_entropy(rho, 0)

    def test_measure_bundle(self, ghz):
        res = measure(ghz, "B", 2)
        assert (res.negativity, res.linear_entropy, res.purity, res.effective_d) == \
            pytest.approx((0.5, 1.0, 0.5, 2), abs=1e-14)


class TestModeCount:
    @pytest.mark.parametrize("pops, expected", [
        ([1.0, 0.0, 0.0], 1),
        ([0.5, 0.5, 0.0], 2),
        ([0.5, 0.5 - 1e-10, 1e-10], 2),
        ([0.5, 0.5 - 1e-8, 1e-8], 3),
        ([0.0, 0.0, 1.0], 3),
    ])
    def test_single_sample(self, pops, expected):
        assert mode_count(pops) == expected

    def test_trajectory_takes_maximum_and_floor_of_two(self):
        assert effective_mode_count([[1.0, 0.0, 0.0]] * 3) == 2
        assert effective_mode_count([[1.0, 0, 0, 0], [0.2, 0.3, 0.5, 0]]) == 3

    def test_accepts_density_matrices(self, ghz):
        assert effective_mode_count([reduce(ghz, "A"), reduce(ghz, "B")]) == 2

    def test_empty(self):
        with pytest.raises(ValueError):
            effective_mode_count([])


def test_schmidt_values_sum_to_one():
    dims = SpaceDims(3, 3)
    psi = StateVector(dims, random_state(np.random.default_rng(8), dims.total))
    for label in "ABC":
        vals = schmidt_values(psi, label)
        assert vals.sum() == pytest.approx(1.0, abs=1e-13)
        assert np.all(np.diff(vals) <= 0)
    assert math.isclose(schmidt_values(ghz_target(1, GHZ_DIMS), "C")[0], 0.5)
