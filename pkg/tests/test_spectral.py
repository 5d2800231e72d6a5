import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loewner_lab import (
    FROBENIUS,
    OPERATOR,
    TRACE,
    DimensionMismatchError,
    DomainError,
    SplitMix64,
    SymMatrix,
    as_sym,
    decompose,
    ky_fan,
    loewner_compare,
    matrix_function,
    op_norm,
    parse_norm,
    quadratic_form_slack,
    schatten,
    spectrum_bounds,
    ui_norm,
)
from loewner_lab.generate import derive_seed, random_orthogonal


def random_sym(dim, seed, scale=1.0):
    rng = SplitMix64(seed)
    raw = rng.normal_matrix(dim, dim) * scale
    return SymMatrix(raw)


class TestSymMatrix:
    def test_symmetrizes_on_construction(self):
        x = SymMatrix([[1.0, 2.0], [0.0, 3.0]])
        np.testing.assert_allclose(x.data, [[1.0, 1.0], [1.0, 3.0]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            SymMatrix([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            SymMatrix([[1.0, np.inf], [np.inf, 1.0]])

    def test_data_is_read_only(self):
        x = SymMatrix.identity(2)
        with pytest.raises(ValueError):
            x.data[0, 0] = 5.0

    def test_add_requires_matching_dims(self):
        with pytest.raises(DimensionMismatchError):
            SymMatrix.identity(2) + SymMatrix.identity(3)


class TestDecompose:
    def test_diagonal_input(self):
        dec = decompose(SymMatrix.diagonal([3.0, 1.0]))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 3.0])
        np.testing.assert_allclose(np.abs(dec.basis), np.eye(2)[:, ::-1], atol=1e-14)

    def test_two_by_two_hand_values(self):
        # char poly of [[2,1],[1,2]] gives (2-l)^2 = 1, so l in {1, 3}
        dec = decompose(SymMatrix([[2.0, 1.0], [1.0, 2.0]]))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 3.0], atol=1e-12)

    def test_identity(self):
        dec = decompose(SymMatrix.identity(5))
        np.testing.assert_allclose(dec.eigenvalues, np.ones(5))

    @pytest.mark.parametrize("dim", [1, 2, 5, 9, 16])
    def test_reconstruction_contract(self, dim):
        for seed in range(4):
            a = random_sym(dim, derive_seed(11, dim, seed), scale=3.0)
            dec = decompose(a)
            rebuilt = dec.basis @ np.diag(dec.eigenvalues) @ dec.basis.T
            err = np.linalg.norm(rebuilt - a.data)
            assert err <= 1e-12 * max(1.0, np.linalg.norm(a.data))
            orth = np.linalg.norm(dec.basis.T @ dec.basis - np.eye(dim))
            assert orth <= 1e-12 * dim
            assert np.all(np.diff(dec.eigenvalues) >= 0)


class TestMatrixFunction:
    def test_diagonal_sqrt(self):
        out = matrix_function(SymMatrix.diagonal([4.0, 9.0]), math.sqrt)
        np.testing.assert_allclose(out.data, np.diag([2.0, 3.0]), atol=1e-12)

    def test_identity_function(self):
        a = random_sym(4, 99)
        out = matrix_function(a, lambda x: x)
        np.testing.assert_allclose(out.data, a.data, atol=1e-12 * max(1, op_norm(a)))

    def test_square_by_direct_multiplication(self):
        a = SymMatrix([[2.0, 1.0], [1.0, 2.0]])
        out = matrix_function(a, lambda x: x * x)
        np.testing.assert_allclose(out.data, [[5.0, 4.0], [4.0, 5.0]], atol=1e-12)

    def test_domain_error_names_eigenvalue(self):
        a = SymMatrix.diagonal([0.0, 1.0])
        with pytest.raises(DomainError, match="0.0"):
            matrix_function(a, lambda x: 1.0 / x)

    def test_commutes_with_argument(self):
        for seed in range(5):
            a = random_sym(5, derive_seed(23, seed))
            fa = matrix_function(a, lambda x: math.exp(0.3 * x))
            comm = a.data @ fa.data - fa.data @ a.data
            scale = op_norm(a) * op_norm(fa)
            assert np.linalg.norm(comm) <= 1e-10 * max(1.0, scale)

    def test_spectral_mapping(self):
        for seed in range(5):
            a = random_sym(6, derive_seed(37, seed))
            fa = matrix_function(a, lambda x: x**3 - x)
            image = np.sort([(x**3 - x) for x in decompose(a).eigenvalues])
            np.testing.assert_allclose(
                np.sort(decompose(fa).eigenvalues), image, atol=1e-10 * max(1, op_norm(fa))
            )


class TestLoewnerCompare:
    def test_diagonal_gap(self):
        v = loewner_compare(SymMatrix.diagonal([1.0, 2.0]), SymMatrix.diagonal([2.0, 3.0]), 1e-9)
        assert v.relation == "LE"
        assert v.slack_le == pytest.approx(1.0)

    def test_reflexivity(self):
        x = random_sym(3, 5)
        assert loewner_compare(x, x, 1e-9).relation == "EQ"

    def test_incomparable(self):
        v = loewner_compare(SymMatrix.diagonal([1.0, 2.0]), SymMatrix.diagonal([2.0, 1.0]), 1e-9)
        assert v.relation == "INCOMPARABLE"
        assert v.slack_le == pytest.approx(-1.0)
        assert v.slack_ge == pytest.approx(-1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            loewner_compare(SymMatrix.identity(2), SymMatrix.identity(3))

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_swap_symmetry(self, seed):
        x = random_sym(4, derive_seed(1, seed))
        y = random_sym(4, derive_seed(2, seed))
        fwd = loewner_compare(x, y, 1e-9)
        rev = loewner_compare(y, x, 1e-9)
        swap = {"LE": "GE", "GE": "LE", "EQ": "EQ", "INCOMPARABLE": "INCOMPARABLE"}
        assert rev.relation == swap[fwd.relation]
        assert rev.slack_le == pytest.approx(fwd.slack_ge, abs=1e-12)

    def test_oracle_never_contradicts_verdict(self):
        # Sampled quadratic forms sit above lambda_min, so a certified LE/GE
        # can never be strictly refuted by the sampler.
        for seed in range(40):
            dim = 2 + seed % 5  # dims 2..6
            x = random_sym(dim, derive_seed(71, seed))
            y = random_sym(dim, derive_seed(72, seed))
            tol = 1e-9 * max(1.0, op_norm(x) + op_norm(y))
            verdict = loewner_compare(x, y, tol)
            if verdict.relation in ("LE", "EQ"):
                assert quadratic_form_slack(x, y, 1000, seed) >= -tol
            if verdict.relation in ("GE", "EQ"):
                assert quadratic_form_slack(y, x, 1000, seed) >= -tol


class TestNorms:
    def test_operator_norm_diagonal(self):
        assert ui_norm(SymMatrix.diagonal([2.0, -3.0]), OPERATOR) == pytest.approx(3.0)

    def test_trace_norm_identity(self):
        assert ui_norm(SymMatrix.identity(4), TRACE) == pytest.approx(4.0)

    def test_schatten2_hand_value(self):
        # singular values of [[2,1],[1,2]] are {1, 3}
        value = ui_norm(SymMatrix([[2.0, 1.0], [1.0, 2.0]]), schatten(2))
        assert value == pytest.approx(math.sqrt(10.0), rel=1e-12)

    def test_frobenius_matches_schatten2(self):
        x = random_sym(5, 17)
        assert ui_norm(x, FROBENIUS) == pytest.approx(ui_norm(x, schatten(2)), rel=1e-12)

    def test_ky_fan_out_of_range(self):
        with pytest.raises(ValueError):
            ui_norm(SymMatrix.identity(3), ky_fan(4))

    def test_parse_norm(self):
        assert parse_norm("operator") == OPERATOR
        assert parse_norm("kyfan:2").param == 2
        assert parse_norm("schatten:3").param == 3.0
        with pytest.raises(ValueError):
            parse_norm("spectralish")

    @pytest.mark.parametrize(
        "kind", [OPERATOR, TRACE, FROBENIUS, ky_fan(2), schatten(3), schatten(1.5)]
    )
    def test_unitary_invariance(self, kind):
        for seed in range(5):
            x = random_sym(5, derive_seed(301, seed))
            u = random_orthogonal(5, SplitMix64(derive_seed(302, seed)))
            rotated = SymMatrix(u.T @ x.data @ u)
            base = ui_norm(x, kind)
            assert abs(ui_norm(rotated, kind) - base) <= 1e-9 * base

    @pytest.mark.parametrize(
        "kind", [OPERATOR, TRACE, FROBENIUS, ky_fan(2), schatten(3), schatten(1.5)]
    )
    def test_monotone_on_psd_cone(self, kind):
        # X <= Y with both PSD implies ||X|| <= ||Y|| for every implemented kind.
        rng = SplitMix64(404)
        for _ in range(20):
            raw = rng.normal_matrix(4, 4)
            x = SymMatrix(raw @ raw.T)
            bump = rng.normal_matrix(4, 4)
            y = SymMatrix(x.data + bump @ bump.T)
            assert loewner_compare(x, y).relation in ("LE", "EQ")
            assert ui_norm(x, kind) <= ui_norm(y, kind) + 1e-9


class TestSpectrumBounds:
    def test_diagonal(self):
        assert spectrum_bounds(SymMatrix.diagonal([1.0, 4.0])) == (1.0, 4.0)

    def test_identity(self):
        assert spectrum_bounds(SymMatrix.identity(3)) == (1.0, 1.0)

    def test_hand_computed(self):
        lo, hi = spectrum_bounds(SymMatrix([[2.0, 1.0], [1.0, 2.0]]))
        assert lo == pytest.approx(1.0, abs=1e-12)
        assert hi == pytest.approx(3.0, abs=1e-12)


def test_as_sym_passthrough_and_coercion():
    x = SymMatrix.identity(2)
    assert as_sym(x) is x
    y = as_sym([[1.0, 0.0], [0.0, 2.0]])
    assert isinstance(y, SymMatrix)
