from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blowuplab.blowup import ot_ideal, rees_ideal, special_fiber_ideal, symmetric_ideal, t_ring, y_ring
from blowuplab.groebner import IdealHandle, ideal
from blowuplab.hilbert import (BigradedSeries, HilbertSeries, bigraded_hilbert_series, codim,
                               hilbert_series, krull_dim, monomial_numerator, reduction_number,
                               series_from_poincare)
from blowuplab.matroid import Arrangement, ot_hilbert_prediction
from blowuplab.poly import PolyRing


def _count_standard(ideal_: IdealHandle, degree: int) -> int:
    """dim of (S/I)_d by counting monomials outside the initial ideal."""
    leads = ideal_.groebner().leading_exponents() if not ideal_.is_zero() else []
    nv = ideal_.ring.nvars
    count = 0
    for e in product(range(degree + 1), repeat=nv):
        if sum(e) != degree:
            continue
        if not any(all(a >= b for a, b in zip(e, lead)) for lead in leads):
            count += 1
    return count


def test_polynomial_ring():
    S = y_ring(3)
    hs = hilbert_series(IdealHandle(S, [S.zero()]))
    assert (hs.numerator, hs.denom_exponent) == ((1,), 3)
    assert str(hs) == "1/(1 - s)^3"


def test_hypersurface():
    S = y_ring(2)
    hs = hilbert_series(ideal(S, ["y1*y2"]))
    assert (hs.numerator, hs.denom_exponent) == ((1, 1), 1)
    assert str(hs) == "(1 + s)/(1 - s)"
    assert hs.coefficients(4) == [1, 2, 2, 2, 2]


def test_unit_ideal_is_zero_series():
    S = y_ring(2)
    hs = hilbert_series(ideal(S, ["1"]))
    assert hs.krull_dim == -1 and str(hs) == "0"


def test_triangle_fiber(tri):
    fib = special_fiber_ideal(tri)
    hs = hilbert_series(fib)
    assert hs == ot_hilbert_prediction(tri)
    assert hs.numerator == (1, 1) and hs.denom_exponent == 2
    assert reduction_number(fib) == 1
    assert krull_dim(fib) == 2


def test_generic_rank2_five_lines():
    a = Arrangement.from_forms([[1, 0], [0, 1], [1, 1], [1, 2], [1, 3]])
    fib = special_fiber_ideal(a)
    assert krull_dim(fib) == 2
    assert reduction_number(fib) == 1
    assert hilbert_series(fib).numerator == (1, 3)


def test_reduction_number_of_unit_ideal_raises():
    with pytest.raises(ValueError):
        reduction_number(ideal(y_ring(1), ["1"]))


def test_non_homogeneous_rejected():
    with pytest.raises(ValueError, match="not homogeneous"):
        hilbert_series(ideal(y_ring(2), ["y1 + y2^2"]))
    with pytest.raises(ValueError, match="not bihomogeneous"):
        bigraded_hilbert_series(ideal(t_ring(1, 1), ["x1 + y1"]))


def test_codim_of_symmetric_ideals(tri):
    assert codim(symmetric_ideal(tri)) == 2
    assert codim(symmetric_ideal(Arrangement.boolean(3))) == 2


@pytest.mark.parametrize("k", [2, 3])
def test_boolean_bigraded(k):
    got = bigraded_hilbert_series(rees_ideal(Arrangement.boolean(k)))
    assert got.cross_equal(BigradedSeries.closed_form(k, k, k - 1))
    assert not got.cross_equal(BigradedSeries.closed_form(k, k, k))


def test_bigraded_of_free_algebra():
    T = t_ring(1, 1)
    got = bigraded_hilbert_series(IdealHandle(T, [T.zero()]))
    assert got.numerator == (((0, 0), 1),)
    assert str(got) == "(1)/((1 - u)^1*(1 - v)^1)"


def test_bigraded_string_and_json():
    s = BigradedSeries.closed_form(2, 2, 2)
    assert str(s) == "(1 - 2*u*v + u^2*v^2)/((1 - u)^2*(1 - v)^2)"
    assert s.to_json()["numerator"] == [[1, 0, 0], [0, -2, 0], [0, 0, 1]]


def test_diagonal_matches_single_grading(tri):
    rees = rees_ideal(tri)
    assert bigraded_hilbert_series(rees).diagonal() == hilbert_series(rees)


def test_series_from_poincare():
    assert series_from_poincare([1, 3, 2], 2) == HilbertSeries((1, 1), 2)
    assert series_from_poincare([1, 2, 1], 2) == HilbertSeries((1,), 2)
    with pytest.raises(ValueError):
        series_from_poincare([1, 1, 1], 1)


def test_reduced_cancels_common_factors():
    # (1 - s^2)/(1 - s)^3 = (1 + s)/(1 - s)^2
    assert HilbertSeries.reduced([1, 0, -1], 3) == HilbertSeries((1, 1), 2)
    assert HilbertSeries.reduced([0, 0], 4) == HilbertSeries((), 0)


def test_monomial_numerator_simple():
    # Q[a, b]/<a*b>: 1 - s^2
    assert monomial_numerator([(1, 1)], [(1,), (1,)]) == {(0,): 1, (2,): -1}


# ---------------------------------------------------------------- properties

R3 = PolyRing.of("a", "b", "c")
monomial_gens = st.lists(st.tuples(*[st.integers(0, 3)] * 3).filter(any), min_size=1, max_size=4)


@given(monomial_gens)
def test_coefficients_match_monomial_count(gens):
    polys = [R3.monomial(e) for e in gens]
    I = IdealHandle(R3, polys)
    hs = hilbert_series(I)
    coeffs = hs.coefficients(8)
    for d in range(9):
        assert coeffs[d] == _count_standard(I, d)


@given(st.permutations(["y1", "y2", "y3", "y4"]))
def test_shuffle_invariance(perm):
    S = y_ring(4)
    gens = ["y1*y2 - y3^2", "y2*y4 - y1*y3", "y4^2"]
    ren = PolyRing(tuple(perm))
    base = hilbert_series(ideal(S, gens))
    mapping = {old: ren.var(new) for old, new in zip(S.names, perm)}
    moved = [S.parse(g).substitute(mapping, ren) for g in gens]
    assert hilbert_series(IdealHandle(ren, moved)) == base


@pytest.mark.parametrize("n", [3, 4, 5])
def test_generic_rank2_coefficient_spot_checks(n):
    a = Arrangement.from_forms([[1, 0], [0, 1]] + [[1, c] for c in range(1, n - 1)])
    fib = ot_ideal(a)
    coeffs = hilbert_series(fib).coefficients(8)
    for d in range(9):
        assert coeffs[d] == _count_standard(fib, d)
