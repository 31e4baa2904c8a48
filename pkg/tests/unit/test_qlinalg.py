# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

from fractions import Fraction

import pytest
from sympy import Rational

from mackeylab import qlinalg
from mackeylab.exceptions import ShapeMismatch
from mackeylab.qlinalg import RationalMatrix


@pytest.mark.parametrize(
    "value, expected",
    [
        (3, Fraction(3)),
        ("2/4", Fraction(1, 2)),
        (Fraction(-6, 4), Fraction(-3, 2)),
        (Rational(5, 7), Fraction(5, 7)),
    ],
)
def test_to_rational(value, expected):
    assert qlinalg.to_rational(value) == expected


@pytest.mark.parametrize("value", [0.5, True, None])
def test_to_rational_rejects_inexact(value):
    with pytest.raises(TypeError):
        qlinalg.to_rational(value)


def test_from_rows_and_columns_agree():
    by_rows = RationalMatrix.from_rows([[1, 2], [3, 4]])
    by_columns = RationalMatrix.from_columns([[1, 3], [2, 4]], 2)
    assert by_rows == by_columns
    assert by_rows.transpose() == RationalMatrix.from_rows([[1, 3], [2, 4]])


def test_from_columns_wrong_length():
    with pytest.raises(ShapeMismatch):
        RationalMatrix.from_columns([[1, 2, 3]], 2)


def test_ragged_rows():
    with pytest.raises(ShapeMismatch):
        RationalMatrix.from_rows([[1, 2], [3]])


def test_matmul_is_composition():
    a = RationalMatrix.from_rows([[1, 1]])
    b = RationalMatrix.from_rows([[1], [1]])
    assert a @ b == RationalMatrix.scalar(2)
    assert b @ a == RationalMatrix.from_rows([[1, 1], [1, 1]])


def test_matmul_with_empty_shapes():
    a = RationalMatrix.zeros(2, 0)
    b = RationalMatrix.zeros(0, 3)
    assert a @ b == RationalMatrix.zeros(2, 3)


def test_matmul_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        RationalMatrix.identity(2) @ RationalMatrix.identity(3)


def test_arithmetic():
    a = RationalMatrix.from_rows([[1, 2], [3, 4]])
    assert a + a == a.scale(2)
    assert (a - a).is_zero()
    assert -a == a.scale(-1)
    assert a.apply([1, "1/2"]) == (Fraction(2), Fraction(5))


def test_inverse():
    a = RationalMatrix.from_rows([[2, 1], [1, 1]])
    assert a @ a.inverse() == RationalMatrix.identity(2)
    assert RationalMatrix.zeros(0, 0).inverse() == RationalMatrix.zeros(0, 0)


def test_direct_sum():
    block = qlinalg.direct_sum(RationalMatrix.scalar(2), RationalMatrix.from_rows([[1, 1]]))
    assert block == RationalMatrix.from_rows([[2, 0, 0], [0, 1, 1]])


@pytest.mark.parametrize(
    "rows, expected_rank",
    [
        ([[1, 2], [2, 4]], 1),
        ([[1, 0], [0, 1]], 2),
        ([[0, 0, 0]], 0),
        ([[1, 1, 0], [0, 1, 1], [1, 0, -1]], 2),
    ],
)
def test_rank(rows, expected_rank):
    assert qlinalg.rank(RationalMatrix.from_rows(rows)) == expected_rank


def test_rank_of_empty_matrix():
    assert qlinalg.rank(RationalMatrix.zeros(0, 4)) == 0


def test_kernel_basis():
    m = RationalMatrix.from_rows([[1, 1]])
    assert qlinalg.kernel_basis(m) == [(Fraction(-1), Fraction(1))]


def test_kernel_of_map_to_zero_space():
    basis = qlinalg.kernel_basis(RationalMatrix.zeros(0, 2))
    assert basis == [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def test_rank_nullity():
    m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert qlinalg.rank(m) + len(qlinalg.kernel_basis(m)) == m.cols
    for v in qlinalg.kernel_basis(m):
        assert all(x == 0 for x in m.apply(v))


def test_image_basis_uses_original_columns():
    m = RationalMatrix.from_rows([[0, 2, 4], [0, 1, 2]])
    assert qlinalg.image_basis(m) == [(Fraction(2), Fraction(1))]


def test_solve():
    m = RationalMatrix.from_rows([[1, 1], [1, -1]])
    assert qlinalg.solve(m, [2, 0]) == (Fraction(1), Fraction(1))


def test_solve_inconsistent():
    m = RationalMatrix.from_rows([[1], [1]])
    assert qlinalg.solve(m, [1, 2]) is None


def test_solve_wrong_length():
    with pytest.raises(ShapeMismatch):
        qlinalg.solve(RationalMatrix.identity(2), [1])


def test_solve_matrix():
    m = RationalMatrix.from_rows([[2, 0], [0, 4]])
    b = RationalMatrix.from_rows([[2, 4], [4, 8]])
    assert qlinalg.solve_matrix(m, b) == RationalMatrix.from_rows([[1, 2], [1, 2]])


def test_quotient_coordinates():
    subspace = RationalMatrix.from_columns([[0, 1]], 2)
    projection, section = qlinalg.quotient_coordinates(subspace)
    assert projection == RationalMatrix.from_rows([[1, 0]])
    assert (projection @ subspace).is_zero()
    assert projection @ section == RationalMatrix.identity(1)


def test_quotient_by_nothing():
    projection, section = qlinalg.quotient_coordinates(RationalMatrix.zeros(2, 0))
    assert projection == RationalMatrix.identity(2)
    assert section == RationalMatrix.identity(2)


def test_to_json():
    assert RationalMatrix.from_rows([[Fraction(1, 2), -3]]).to_json() == [["1/2", "-3"]]


def test_rref_of_permutation_is_identity():
    reduced, pivots = qlinalg.rref(RationalMatrix.from_rows([[0, 1], [1, 0]]))
    assert reduced == RationalMatrix.identity(2)
    assert pivots == (0, 1)


def test_rref_scales_and_clears_pivots():
    reduced, pivots = qlinalg.rref(RationalMatrix.from_rows([[2, 4, 2], [1, 2, 3]]))
    assert reduced == RationalMatrix.from_rows([[1, 2, 0], [0, 0, 1]])
    assert pivots == (0, 2)


def test_rref_of_empty_matrix():
    assert qlinalg.rref(RationalMatrix.zeros(0, 3)) == (RationalMatrix.zeros(0, 3), ())


def test_kernel_of_rank_one_matrix():
    m = RationalMatrix.from_rows([[2, -1], [-4, 2]])
    (v,) = qlinalg.kernel_basis(m)
    assert v == (Fraction(1, 2), Fraction(1))
    assert v[1] == 2 * v[0]


def test_solve_scalar():
    assert qlinalg.solve(RationalMatrix.scalar(2), [1]) == (Fraction(1, 2),)


MATRICES = [
    [[1, 2], [2, 4]],
    [[1, 1, 0], [0, 1, 1], [1, 0, -1]],
    [[0, 2, 4], [0, 1, 2]],
    [[3, "1/2", -1], [0, 0, 0], [6, 1, 5]],
]


@pytest.mark.parametrize("rows", MATRICES)
def test_rank_of_transpose(rows):
    m = RationalMatrix.from_rows(rows)
    assert qlinalg.rank(m) == qlinalg.rank(m.transpose())


@pytest.mark.parametrize("rows", MATRICES)
def test_solve_recovers_image_point(rows):
    m = RationalMatrix.from_rows(rows)
    b = m.apply([1, -2, "3/4"][: m.cols])
    x = qlinalg.solve(m, b)
    assert x is not None
    assert m.apply(x) == b


@pytest.mark.parametrize(
    "operation",
    [
        lambda: RationalMatrix(-1, 0, ()),
        lambda: RationalMatrix.identity(2) + RationalMatrix.identity(3),
        lambda: RationalMatrix.identity(2).apply([1, 2, 3]),
        lambda: RationalMatrix.identity(2).hstack(RationalMatrix.identity(3)),
        lambda: RationalMatrix.identity(2).vstack(RationalMatrix.zeros(1, 3)),
        lambda: RationalMatrix.zeros(2, 3).inverse(),
        lambda: qlinalg.solve_matrix(RationalMatrix.identity(2), RationalMatrix.identity(3)),
    ],
)
def test_shape_mismatches(operation):
    with pytest.raises(ShapeMismatch):
        operation()


def test_solve_matrix_inconsistent():
    m = RationalMatrix.from_rows([[1], [1]])
    b = RationalMatrix.from_rows([[1, 1], [1, 2]])
    assert qlinalg.solve_matrix(m, b) is None


def test_complement_and_stacking():
    subspace = RationalMatrix.from_columns([[1, 1, 0]], 3)
    section = qlinalg.complement(subspace)
    assert section == RationalMatrix.from_columns([[1, 0, 0], [0, 0, 1]], 3)
    assert qlinalg.rank(subspace.hstack(section)) == 3
    stacked = RationalMatrix.identity(2).vstack(RationalMatrix.from_rows([[1, 2]]))
    assert stacked.select_rows([2, 0]) == RationalMatrix.from_rows([[1, 2], [1, 0]])
