from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from blowuplab.exactnum import (QMatrix, determinant, inverse, kernel_basis, rank, rational,
                                rational_str, rref)

from strategies import matrices, small_fractions


def test_rational_coercion():
    assert rational("3/6") == Fraction(1, 2)
    assert rational(-4) == Fraction(-4)
    assert rational("0") == Fraction(0, 1)
    with pytest.raises(TypeError):
        rational(True)
    with pytest.raises(TypeError):
        rational(0.5)


def test_rational_canonical_form():
    q = rational("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)
    assert rational_str(q) == "-3/2"
    assert rational_str(Fraction(5)) == "5"


def test_rref_identity():
    red, r, piv = rref(QMatrix.identity(2))
    assert red == QMatrix.identity(2) and r == 2 and piv == [0, 1]


def test_rref_hand_example():
    red, r, piv = rref(QMatrix.from_rows([[1, 1, 1], [0, 1, 2]]))
    assert r == 2 and piv == [0, 1]
    assert red.to_rows() == [[1, 0, -1], [0, 1, 2]]


def test_rref_zero():
    red, r, piv = rref(QMatrix.zero(3, 3))
    assert red == QMatrix.zero(3, 3) and r == 0 and piv == []


def test_kernel_examples():
    assert kernel_basis(QMatrix.from_columns([[1, 0], [0, 1], [1, 1]])) == [(1, 1, -1)]
    assert kernel_basis(QMatrix.identity(3)) == []
    assert kernel_basis(QMatrix.from_columns([[1], [2]])) == [(1, Fraction(-1, 2))]


def test_rank_examples():
    assert rank(QMatrix.identity(3)) == 3
    assert rank(QMatrix.zero(2, 4)) == 0
    assert rank(QMatrix.from_columns([[1, 0], [0, 1], [1, 1]])) == 2


def test_shape_errors():
    with pytest.raises(ValueError):
        QMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        QMatrix.identity(2) @ QMatrix.identity(3)
    with pytest.raises(ZeroDivisionError):
        inverse(QMatrix.from_rows([[1, 2], [2, 4]]))


def test_determinant_and_inverse():
    m = QMatrix.from_rows([[2, 1], [5, 3]])
    assert determinant(m) == 1
    assert m @ inverse(m) == QMatrix.identity(2)


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(matrices())
def test_rref_idempotent(m):
    red = rref(m)[0]
    assert rref(red)[0] == red


@given(matrices())
def test_kernel_vectors_are_in_kernel_and_normalized(m):
    for v in kernel_basis(m):
        assert all(x == 0 for x in m.apply(v))
        assert next(x for x in v if x) == 1


@given(matrices(max_rows=3, max_cols=3))
def test_pivots_increase(m):
    piv = rref(m)[2]
    assert piv == sorted(set(piv))


@given(small_fractions, small_fractions)
def test_exact_sum_two_ways(x, y):
    p, q = x.numerator, x.denominator
    r, s = y.numerator, y.denominator
    assert x + y == Fraction(p * s + r * q, q * s)
    assert (x + y) - y == x
