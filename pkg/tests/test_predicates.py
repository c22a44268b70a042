"""Matrix and numeric predicates, cross-checked against the 2x2 eigenvalue oracle."""

import numpy as np
import pytest

from infofn.predicates import (
    between,
    matrix_like,
    one_of,
    positive_definite,
    positive_number,
    positive_semidefinite,
    symmetric,
)
from infofn.typeexpr import check_predicate

from .oracles import eig2x2

IDENTITY = [[1, 0], [0, 1]]
ZERO = [[0, 0], [0, 0]]
DIAG21 = [[2, 0], [0, 1]]
SKEWED = [[1, 2], [3, 4]]


def _is_sym(m):
    return m[0][1] == m[1][0]


@pytest.mark.parametrize("m", [IDENTITY, ZERO, DIAG21, [[5, -1], [-1, 3]]])
def test_definiteness_agrees_with_eigenvalue_oracle(m):
    lo, hi = eig2x2(m)
    assert positive_definite(m) == (lo > 0 and hi > 0)
    assert positive_semidefinite(m) == (lo >= 0 and hi >= 0)


class TestMatrixSuite:
    def test_identity(self):
        # oracle: eigenvalues (1, 1)
        assert eig2x2(IDENTITY) == (1.0, 1.0)
        assert symmetric(IDENTITY)
        assert positive_definite(IDENTITY)
        assert positive_semidefinite(IDENTITY)

    def test_zero_matrix(self):
        # oracle: eigenvalues (0, 0)
        assert eig2x2(ZERO) == (0.0, 0.0)
        assert symmetric(ZERO)
        assert not positive_definite(ZERO)
        assert positive_semidefinite(ZERO)

    def test_diag_2_1(self):
        # oracle: eigenvalues (1, 2)
        assert eig2x2(DIAG21) == (1.0, 2.0)
        assert positive_definite(DIAG21)

    def test_skewed_not_symmetric(self):
        assert not _is_sym(SKEWED)
        assert not symmetric(SKEWED)

    def test_nonsymmetric_never_definite(self):
        assert not positive_definite(SKEWED)
        assert not positive_semidefinite(SKEWED)


class TestMatrixConcept:
    def test_nested_lists_count_as_matrix(self):
        assert matrix_like([[1, 2], [3, 4]])

    def test_numpy_arrays_count(self):
        assert matrix_like(np.eye(3))

    def test_wrong_dimension(self):
        assert not matrix_like([1, 2, 3])
        assert not matrix_like(5)
        assert not matrix_like("abc")

    def test_ragged_input_rejected_quietly(self):
        res = check_predicate([[1, 2], [3]], matrix_like)
        assert not res.ok

    def test_symmetric_rejects_non_square(self):
        assert not symmetric([[1, 2, 3], [2, 1, 4]])


class TestNumericPredicates:
    def test_between(self):
        coeff = between(0, 1)
        assert coeff(0.5) and coeff(0) and coeff(1)
        assert not coeff(1.5)
        assert not coeff("0.5")
        assert not coeff(True)

    def test_one_of(self):
        kernel = one_of("mean", "gaussian3")
        assert kernel("mean")
        assert not kernel("median")

    def test_positive_number(self):
        pos = positive_number()
        assert pos(2) and pos(0.1)
        assert not pos(0) and not pos(-1) and not pos(True)
