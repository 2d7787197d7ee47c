from __future__ import annotations

import numpy as np
import pytest

from distmeas import (
    DIM_CAP,
    DimSpec,
    complete_to_unitary,
    eig_hermitian,
    frobenius_distance,
    make_rng,
    matrix_from_json,
    matrix_to_json,
    operator_norm_estimate,
    partial_trace,
    random_complex_matrix,
    random_hermitian,
    random_unitary,
    tensor,
)
from distmeas.errors import (
    DimensionCapError,
    NonHermitianError,
    NotOrthonormalError,
    ShapeMismatchError,
)
from helpers import partial_trace_oracle


class TestTensor:
    def test_identity_case(self):
        assert np.array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_vector_index_convention(self):
        # first factor slowest: e0 (x) e1 lands at composite index 1
        a = np.array([[1.0], [0.0]])
        b = np.array([[0.0], [1.0]])
        assert np.array_equal(tensor(a, b).reshape(-1), np.array([0, 1, 0, 0]))

    def test_trace_multiplicativity(self):
        rng = make_rng(101)
        a = random_complex_matrix(2, 2, rng)
        b = random_complex_matrix(3, 3, rng)
        lhs = np.trace(tensor(a, b))
        rhs = np.trace(a) * np.trace(b)
        assert abs(lhs - rhs) < 1e-12

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_mixed_product_identity(self, seed):
        rng = make_rng(seed)
        a, c = (random_complex_matrix(2, 2, rng) for _ in range(2))
        b, d = (random_complex_matrix(3, 3, rng) for _ in range(2))
        assert frobenius_distance(tensor(a, b) @ tensor(c, d), tensor(a @ c, b @ d)) < 1e-12

    def test_dimension_cap(self):
        with pytest.raises(DimensionCapError):
            tensor(np.eye(100), np.eye(100))


class TestPartialTrace:
    def test_matches_index_sum_oracle(self):
        rng = make_rng(7)
        x = random_complex_matrix(6, 6, rng)
        got = partial_trace(x, (2, 3), (1,))
        want = partial_trace_oracle(x, (2, 3), (1,))
        assert frobenius_distance(got, want) < 1e-12

    def test_three_factor_oracle(self):
        rng = make_rng(8)
        x = random_complex_matrix(12, 12, rng)
        for traced in [(0,), (2,), (0, 2), (1, 2)]:
            got = partial_trace(x, (2, 2, 3), traced)
            want = partial_trace_oracle(x, (2, 2, 3), traced)
            assert frobenius_distance(got, want) < 1e-12

    def test_product_operator_factorizes(self):
        rng = make_rng(9)
        a = random_complex_matrix(2, 2, rng)
        b = random_complex_matrix(3, 3, rng)
        got = partial_trace(tensor(a, b), (2, 3), (1,))
        assert frobenius_distance(got, a * np.trace(b)) < 1e-12

    def test_bell_state_reduces_to_maximally_mixed(self):
        bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
        rho = np.outer(bell, bell.conj())
        got = partial_trace(rho, (2, 2), (1,))
        assert frobenius_distance(got, np.eye(2) / 2) < 1e-14

    def test_empty_trace_set_is_identity(self):
        rng = make_rng(10)
        x = random_complex_matrix(4, 4, rng)
        assert np.array_equal(partial_trace(x, (2, 2), ()), x)

    @pytest.mark.parametrize("seed", [3, 4, 5])
    def test_trace_preserved(self, seed):
        rng = make_rng(seed)
        x = random_complex_matrix(12, 12, rng)
        got = partial_trace(x, (3, 4), (0,))
        assert abs(np.trace(got) - np.trace(x)) < 1e-12

    @pytest.mark.parametrize("seed", [11, 12, 13])
    def test_linearity(self, seed):
        rng = make_rng(seed)
        x = random_complex_matrix(6, 6, rng)
        y = random_complex_matrix(6, 6, rng)
        alpha, beta = 0.7 - 0.2j, -1.1 + 0.4j
        lhs = partial_trace(alpha * x + beta * y, (2, 3), (1,))
        rhs = alpha * partial_trace(x, (2, 3), (1,)) + beta * partial_trace(y, (2, 3), (1,))
        assert frobenius_distance(lhs, rhs) < 1e-12

    @pytest.mark.parametrize("seed", [14, 15, 16])
    def test_kept_factor_operators_move_out(self, seed):
        # operators on the kept factor slide out of the trace, order preserved
        rng = make_rng(seed)
        a = random_complex_matrix(2, 2, rng)
        c = random_complex_matrix(2, 2, rng)
        x = random_complex_matrix(6, 6, rng)
        big_a = tensor(a, np.eye(3))
        big_c = tensor(c, np.eye(3))
        lhs = partial_trace(big_a @ x @ big_c, (2, 3), (1,))
        rhs = a @ partial_trace(x, (2, 3), (1,)) @ c
        assert frobenius_distance(lhs, rhs) < 1e-12

    def test_dimension_mismatch_names_expected_and_actual(self):
        with pytest.raises(ShapeMismatchError) as err:
            partial_trace(np.eye(5), (2, 3), (0,))
        assert err.value.expected == 6
        assert err.value.actual == 5


class TestEigHermitian:
    def test_diagonal_permutation(self):
        vals, vecs = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(vals, [1.0, 2.0, 3.0])
        assert np.allclose(np.abs(vecs), np.abs(np.eye(3)[:, [1, 2, 0]]))

    def test_pauli_x(self):
        vals, vecs = eig_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(vals, [-1.0, 1.0])
        minus, plus = vecs[:, 0], vecs[:, 1]
        # eigenvectors are (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase
        assert abs(abs(np.vdot(minus, np.array([1, -1]) / np.sqrt(2))) - 1) < 1e-12
        assert abs(abs(np.vdot(plus, np.array([1, 1]) / np.sqrt(2))) - 1) < 1e-12

    @pytest.mark.parametrize("seed", [21, 22, 23])
    def test_reconstruction_and_orthonormality(self, seed):
        rng = make_rng(seed)
        h = random_hermitian(6, rng)
        vals, vecs = eig_hermitian(h)
        assert frobenius_distance(vecs @ np.diag(vals) @ vecs.conj().T, h) < 1e-10
        assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(6))) < 1e-10

    def test_non_hermitian_rejected_with_asymmetry(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(NonHermitianError) as err:
            eig_hermitian(bad)
        assert err.value.asymmetry == pytest.approx(1.0)


class TestCompleteToUnitary:
    def test_full_identity_passthrough(self):
        assert np.array_equal(complete_to_unitary(np.eye(3)), np.eye(3))

    def test_single_column(self):
        u = complete_to_unitary(np.array([[0.0], [1.0]]))
        assert np.array_equal(u[:, 0], np.array([0.0 + 0j, 1.0 + 0j]))
        assert frobenius_distance(u.conj().T @ u, np.eye(2)) < 1e-12

    @pytest.mark.parametrize("seed", [31, 32, 33])
    def test_random_isometry_8x2(self, seed):
        rng = make_rng(seed)
        iso = random_unitary(8, rng)[:, :2]
        u = complete_to_unitary(iso)
        assert np.array_equal(u[:, :2], iso)
        assert frobenius_distance(u.conj().T @ u, np.eye(8)) < 1e-12

    @pytest.mark.parametrize("seed", list(range(40, 50)))
    def test_unitarity_property(self, seed):
        rng = make_rng(seed)
        n = int(rng.integers(2, 9))
        k = int(rng.integers(0, n + 1))
        iso = random_unitary(n, rng)[:, :k]
        u = complete_to_unitary(iso)
        assert frobenius_distance(u.conj().T @ u, np.eye(n)) < 1e-10

    def test_deterministic(self):
        iso = random_unitary(6, make_rng(3))[:, :3]
        assert np.array_equal(complete_to_unitary(iso), complete_to_unitary(iso))

    def test_non_orthonormal_rejected_with_gram_deviation(self):
        bad = np.array([[1.0, 1.0], [0.0, 0.0]])
        with pytest.raises(NotOrthonormalError) as err:
            complete_to_unitary(bad)
        assert err.value.gram_deviation == pytest.approx(1.0)


class TestNormsAndRng:
    def test_frobenius_identity_distance_zero(self):
        assert frobenius_distance(np.eye(2), np.eye(2)) == 0.0

    def test_frobenius_zero_to_identity(self):
        assert frobenius_distance(np.zeros((2, 2)), np.eye(2)) == pytest.approx(np.sqrt(2))

    def test_frobenius_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            frobenius_distance(np.eye(2), np.eye(3))

    def test_operator_norm_matches_svd(self):
        rng = make_rng(55)
        a = random_complex_matrix(4, 4, rng)
        assert operator_norm_estimate(a) == pytest.approx(np.linalg.svd(a)[1][0])

    def test_rng_determinism(self):
        draws1 = make_rng(42).standard_normal(16)
        draws2 = make_rng(42).standard_normal(16)
        assert np.array_equal(draws1, draws2)

    def test_rng_seed_range(self):
        with pytest.raises(ValueError):
            make_rng(-1)

    @pytest.mark.parametrize("seed", [61, 62])
    def test_random_unitary_is_unitary(self, seed):
        u = random_unitary(5, make_rng(seed))
        assert frobenius_distance(u.conj().T @ u, np.eye(5)) < 1e-12


class TestDimSpecAndJson:
    def test_dimspec_product_and_cap(self):
        assert DimSpec((2, 3, 4)).dim == 24
        with pytest.raises(DimensionCapError):
            DimSpec((64, 65))
        with pytest.raises(ValueError):
            DimSpec((0, 2))

    def test_matrix_json_round_trip(self):
        rng = make_rng(71)
        m = random_complex_matrix(3, 2, rng)
        back = matrix_from_json(matrix_to_json(m))
        assert np.array_equal(back, m)

    def test_matrix_json_entry_count_checked(self):
        with pytest.raises(ShapeMismatchError):
            matrix_from_json({"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]})
