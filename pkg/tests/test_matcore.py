import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import H4_BALANCED, J3, H3, J4_BALANCED, jt_matrix
from sddkit import (
    AsymmetricMatrixError,
    EigenConvergenceError,
    MatrixError,
    MatrixFormatError,
    SingularMatrixError,
    SingularUpdateError,
    SymMatrix,
    classify,
    delta,
    eigen_sym,
    inf_norm,
    inverse_dense,
    load_matrix,
    loewner_geq,
    save_matrix,
    smw_update,
    symmetrize,
)
from sddkit.randmat import random_dominant, trial_rng


def ones_plus(alpha, n):
    return SymMatrix(alpha * np.eye(n) + np.ones((n, n)))


class TestSymMatrix:
    def test_rejects_asymmetric(self):
        with pytest.raises(AsymmetricMatrixError):
            SymMatrix(jt_matrix(1.0))

    def test_rejects_non_square(self):
        with pytest.raises(MatrixError):
            SymMatrix(np.zeros((2, 3)))

    def test_entries_are_read_only(self):
        M = SymMatrix(np.eye(2))
        with pytest.raises(ValueError):
            M.entries[0, 0] = 5.0

    def test_symmetrize_guard(self):
        a = np.eye(3)
        a[0, 1] = 1e-3
        with pytest.raises(AsymmetricMatrixError):
            symmetrize(a)
        a[0, 1] = 1e-12
        M = symmetrize(a)
        assert M.entries[0, 1] == M.entries[1, 0]


class TestDelta:
    def test_identity(self):
        np.testing.assert_array_equal(delta(SymMatrix(np.eye(3))), [1, 1, 1])

    def test_balanced_reference(self):
        np.testing.assert_array_equal(delta(ones_plus(2, 4)), np.zeros(4))

    def test_balanced_example(self):
        np.testing.assert_array_equal(delta(J4_BALANCED), np.zeros(4))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.integers(2, 8))
    def test_permutation_equivariant(self, seed, n):
        rng = trial_rng(seed)
        J = random_dominant(rng, n)
        perm = rng.permutation(n)
        JP = SymMatrix(J.entries[np.ix_(perm, perm)])
        np.testing.assert_allclose(delta(JP), delta(J)[perm], atol=1e-12)


class TestClassify:
    def test_balanced_not_strict(self):
        rep = classify(ones_plus(2, 4), tol=0.0)
        assert rep.is_balanced and rep.is_dominant and not rep.is_strictly_dominant

    def test_strictly_dominant(self):
        rep = classify(ones_plus(3, 4), tol=0.0)
        assert rep.is_strictly_dominant
        np.testing.assert_array_equal(rep.deltas, np.ones(4))

    def test_offdiag_stats(self):
        rep = classify(H4_BALANCED)
        assert rep.is_balanced
        assert rep.min_offdiag == 1 and rep.max_offdiag == 7

    def test_exact_integer_balanced_at_zero_tol(self):
        assert classify(J4_BALANCED, tol=0.0).is_balanced

    def test_single_entry_has_no_offdiag(self):
        rep = classify(SymMatrix(np.array([[4.0]])))
        assert rep.min_offdiag is None and rep.max_offdiag is None

    def test_negative_tol_rejected(self):
        with pytest.raises(ValueError):
            classify(ones_plus(2, 4), tol=-1.0)


class TestInverseDense:
    def test_identity(self):
        np.testing.assert_array_equal(inverse_dense(SymMatrix(np.eye(5))).entries, np.eye(5))

    def test_reference_closed_form(self):
        # Oracle: (alpha I + ones)^{-1} = (1/alpha) I - 1/(alpha(alpha+n)) ones
        # at alpha=2, n=4 gives diagonal 5/12, off-diagonal -1/12.
        inv = inverse_dense(ones_plus(2, 4))
        expect = (5.0 / 12.0) * np.eye(4) - (1.0 / 12.0) * (np.ones((4, 4)) - np.eye(4))
        np.testing.assert_allclose(inv.entries, expect, atol=1e-14)

    def test_rebalancing_can_grow_the_norm(self):
        assert inf_norm(inverse_dense(H3)) < inf_norm(inverse_dense(J3))
        assert inf_norm(inverse_dense(H4_BALANCED)) < inf_norm(inverse_dense(J4_BALANCED))

    def test_singular_reports_pivot(self):
        with pytest.raises(SingularMatrixError) as err:
            inverse_dense(SymMatrix(np.ones((2, 2))))
        assert err.value.pivot >= 0.0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(3, 12))
    def test_roundtrip_random_sdd(self, seed, n):
        J = random_dominant(trial_rng(seed), n)
        prod = inverse_dense(J).entries @ J.entries
        np.testing.assert_allclose(prod, np.eye(n), atol=1e-9)


class TestInfNorm:
    def test_identity(self):
        assert inf_norm(SymMatrix(np.eye(7))) == 1.0

    def test_reference_inverse_norms(self):
        assert inf_norm(inverse_dense(ones_plus(2, 4))) == pytest.approx(2 / 3, abs=1e-14)
        assert inf_norm(inverse_dense(ones_plus(3, 4))) == pytest.approx(3 / 7, abs=1e-14)


class TestEigenSym:
    def test_balanced_reference_spectrum(self):
        lams = eigen_sym(ones_plus(3, 5))
        np.testing.assert_allclose(lams, [3, 3, 3, 3, 8], atol=1e-10)

    def test_diagonal(self):
        np.testing.assert_allclose(eigen_sym(SymMatrix(np.diag([1.0, 2.0, 3.0]))),
                                   [1, 2, 3], atol=1e-14)

    def test_strictly_dominant_reference(self):
        np.testing.assert_allclose(eigen_sym(ones_plus(5, 4)), [5, 5, 5, 9], atol=1e-10)

    def test_single_entry(self):
        np.testing.assert_array_equal(eigen_sym(SymMatrix(np.array([[-2.0]]))), [-2.0])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.integers(2, 15))
    def test_matches_lapack(self, seed, n):
        rng = trial_rng(seed)
        a = rng.normal(size=(n, n))
        M = symmetrize(a + a.T, max_skew=np.inf)
        np.testing.assert_allclose(eigen_sym(M), np.linalg.eigvalsh(M.entries),
                                   atol=1e-10 * max(1.0, inf_norm(M)))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.integers(2, 12))
    def test_sum_is_trace(self, seed, n):
        J = random_dominant(trial_rng(seed), n)
        assert abs(eigen_sym(J).sum() - np.trace(J.entries)) <= 1e-8 * n * inf_norm(J)

    def test_nonconvergence_reports_residual(self):
        M = ones_plus(2, 4)
        with pytest.raises(EigenConvergenceError) as err:
            eigen_sym(M, max_sweeps=0)
        assert err.value.residual > 0


class TestSmwUpdate:
    def test_zero_t_is_identity_map(self):
        K = inverse_dense(J4_BALANCED)
        out = smw_update(K, np.array([1.0, 0, 1, 0]), 0.0)
        np.testing.assert_array_equal(out.entries, K.entries)

    def test_scalar_case(self):
        out = smw_update(SymMatrix(np.eye(3)), np.array([1.0, 0, 0]), 1.0)
        expect = np.eye(3)
        expect[0, 0] = 0.5
        np.testing.assert_allclose(out.entries, expect, atol=1e-15)

    def test_singular_update(self):
        with pytest.raises(SingularUpdateError):
            smw_update(SymMatrix(np.eye(3)), np.array([1.0, 0, 0]), -1.0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(3, 10),
           st.floats(-10, 10), st.booleans())
    def test_agrees_with_dense_inverse(self, seed, n, t, pair):
        rng = trial_rng(seed)
        J = random_dominant(rng, n)
        i, j = rng.integers(0, n, size=2)
        u = np.zeros(n)
        u[i] = 1.0
        if pair and j != i:
            u[j] = 1.0
        updated = SymMatrix(J.entries + t * np.outer(u, u))
        try:
            expect = inverse_dense(updated)
        except SingularMatrixError:
            return
        K = inverse_dense(J)
        try:
            got = smw_update(K, u, t)
        except SingularUpdateError:
            return
        np.testing.assert_allclose(got.entries, expect.entries, atol=1e-9)


class TestLoewner:
    def test_reflexive(self):
        assert loewner_geq(J4_BALANCED, J4_BALANCED, tol=0.0)

    def test_balanced_dominates_reference(self):
        S = ones_plus(2, 4)
        assert loewner_geq(J4_BALANCED, S)

    def test_scaling_reverses(self):
        S = ones_plus(2, 4)
        assert not loewner_geq(S, SymMatrix(3 * S.entries))

    def test_dimension_mismatch(self):
        with pytest.raises(MatrixError):
            loewner_geq(J3, J4_BALANCED)


class TestMatrixIO:
    def test_roundtrip_bitwise(self, tmp_path):
        J = inverse_dense(J4_BALANCED)
        path = tmp_path / "m.txt"
        save_matrix(J, path)
        back = load_matrix(path)
        np.testing.assert_array_equal(back.entries, J.entries)

    def test_rejects_asymmetric_file(self, tmp_path):
        path = tmp_path / "jt.txt"
        rows = "\n".join(" ".join(str(v) for v in row) for row in jt_matrix(1.0))
        path.write_text("3\n" + rows + "\n")
        with pytest.raises(AsymmetricMatrixError):
            load_matrix(path)

    def test_bad_dimension_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("x\n")
        with pytest.raises(MatrixFormatError) as err:
            load_matrix(path)
        assert err.value.line == 1

    def test_short_row(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2\n1 0\n0\n")
        with pytest.raises(MatrixFormatError) as err:
            load_matrix(path)
        assert err.value.line == 3

    def test_missing_rows(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3\n1 0 0\n")
        with pytest.raises(MatrixFormatError):
            load_matrix(path)
