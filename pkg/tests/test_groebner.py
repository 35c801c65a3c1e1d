from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blowuplab.blowup import ot_ideal, rees_ideal, symmetric_ideal
from blowuplab.groebner import (Budget, BudgetExceeded, IdealHandle, budget_scope, buchberger, colon,
                                eliminate, ideal, ideal_equal, intersect, is_groebner, membership,
                                normal_form, saturate, saturate_iterated)
from blowuplab.matroid import Arrangement
from blowuplab.poly import MonomialOrder, PolyRing

from strategies import polynomials

R3 = PolyRing.of("x1", "x2", "x3")
T33 = PolyRing.blowup(3, 3)


def test_single_generator_is_its_own_basis():
    T = PolyRing.blowup(2, 2)
    gb = buchberger([T.parse("2*x1*y1 - 2*x2*y2")])
    assert gb.elements == [T.parse("x1*y1 - x2*y2")]


def test_complete_intersection_basis_is_confluent():
    I = ideal(T33, ["x1*y1 - x2*y2", "x2*y2 - x3*y3"])
    gb = I.groebner()
    assert gb.spairs_confluent()
    assert I.contains(T33.parse("x1*y1 - x3*y3"))


def test_circuit_quadrics_of_pencil_are_groebner(pencil4):
    assert is_groebner(ot_ideal(pencil4).generators, MonomialOrder.degrevlex(4))


def test_cyclic4_basis_size():
    R = PolyRing.of("a", "b", "c", "d")
    I = ideal(R, ["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"])
    assert len(I.groebner()) == 7


def test_membership_examples(tri):
    I = ideal(R3, ["x1"])
    assert membership(R3.parse("x1"), I)
    assert not membership(R3.one(), I)
    I1 = symmetric_ideal(tri)
    T = I1.ring
    d = ot_ideal(tri, T).generators[0]
    assert membership(T.var("x1") * d, I1)
    assert not membership(d, I1)


def test_normal_form_is_exact_remainder():
    I = ideal(R3, ["x1^2 - x2", "x2*x3 - 1"])
    gb = I.groebner()
    f = R3.parse("1/2*x1^3 + x3")
    r = normal_form(f, gb)
    assert r == R3.parse("1/2*x1*x2 + x3")
    assert I.contains(f - r)


def test_ideal_equal_examples(tri):
    assert ideal_equal(ideal(R3, ["x1", "x2"]), ideal(R3, ["x1+x2", "x2"]))
    assert not ideal_equal(ideal(R3, ["x1"]), ideal(R3, ["x1^2"]))
    assert ideal_equal(rees_ideal(tri, "colon"), rees_ideal(tri, "kernel"))


def test_eliminate_examples(tri):
    S = PolyRing.of("t", "x1", "x2", "y1", "y2")
    E = eliminate(ideal(S, ["y1 - t*x2", "y2 - t*x1"]), ["t"])
    assert E.minimal_generators() == [E.ring.parse("x1*y1 - x2*y2")]
    T = PolyRing.blowup(2, 2)
    assert eliminate(ideal(T, ["x1*y1 - x2*y2"]), ["x1", "x2"]).is_zero()
    fib = eliminate(rees_ideal(tri), ["x1", "x2"])
    assert fib.minimal_generators() == [fib.ring.parse("y1*y2 - y1*y3 - y2*y3")]


def test_intersect_examples():
    I = ideal(R3, ["x1*x2", "x3^2"])
    assert ideal_equal(intersect(I, I), I)
    assert ideal_equal(intersect(ideal(R3, ["x1"]), ideal(R3, ["x2"])), ideal(R3, ["x1*x2"]))
    J = intersect(intersect(ideal(R3, ["x1", "x2"]), ideal(R3, ["x1", "x3"])), ideal(R3, ["x2", "x3"]))
    assert ideal_equal(J, ideal(R3, ["x1*x2", "x1*x3", "x2*x3"]))


def test_colon_examples(tri):
    I = ideal(R3, ["x1*x2", "x3^3"])
    assert ideal_equal(colon(I, R3.one()), I)
    assert ideal_equal(colon(ideal(R3, ["x1*x2"]), R3.parse("x1")), ideal(R3, ["x2"]))
    I1 = symmetric_ideal(tri)
    T = I1.ring
    expected = I1 + ot_ideal(tri).extend(T)
    assert ideal_equal(colon(I1, T.parse("x1*y1")), expected)
    with pytest.raises(ZeroDivisionError):
        colon(I, R3.zero())


def test_saturate_examples(tri):
    T = PolyRing.blowup(1, 1)
    assert ideal_equal(saturate(ideal(T, ["x1^2*y1"]), T.parse("x1")), ideal(T, ["y1"]))
    I = ideal(R3, ["x1*x2"])
    assert ideal_equal(saturate(I, R3.parse("7")), I)
    # deletion step: <x1 y1 - x2 y2, Rees({x2, x1+x2}) in y2, y3> : x1^inf
    Tt = PolyRing.blowup(2, 3)
    J = ideal(Tt, ["x1*y1 - x2*y2", "x2*y2 - (x1+x2)*y3"])
    assert ideal_equal(saturate(J, Tt.parse("x1")), rees_ideal(tri))


def test_saturate_matches_iterated_colon():
    I = ideal(R3, ["x1^3*x2", "x1*x3^2", "x2^2*x3"])
    f = R3.parse("x1")
    assert ideal_equal(saturate(I, f), saturate_iterated(I, f))


def test_budget_exceeded_is_loud():
    R = PolyRing.of("a", "b", "c", "d")
    I = ideal(R, ["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"])
    with budget_scope(Budget(max_basis=2)):
        with pytest.raises(BudgetExceeded):
            buchberger(I.generators)
    with budget_scope(Budget(max_reductions=3)):
        with pytest.raises(BudgetExceeded):
            buchberger(I.generators)


def test_cache_per_order():
    I = ideal(R3, ["x1 + x2 + x3", "x1*x2 - x3^2"])
    lex = MonomialOrder.lex(3)
    assert I.groebner(lex) is I.groebner(lex)
    assert I.groebner() is not I.groebner(lex)


def test_zero_and_unit_ideals():
    Z = IdealHandle(R3, [R3.zero()])
    assert Z.is_zero() and Z.contains(R3.zero()) and not Z.contains(R3.one())
    U = ideal(R3, ["x1", "1 - x1"])
    assert U.is_unit()


# ---------------------------------------------------------------- properties

ideal_gens = st.lists(polynomials(R3, max_terms=3, max_exp=2), min_size=1, max_size=3)


@given(ideal_gens, st.randoms(use_true_random=False))
def test_canonical_under_shuffling(gens, rnd):
    gens = [g for g in gens if g]
    if not gens:
        return
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    shuffled = [g * (rnd.randint(1, 5)) for g in shuffled]
    assert buchberger(gens, ring=R3).elements == buchberger(shuffled, ring=R3).elements


@given(ideal_gens, st.sampled_from(["degrevlex", "deglex", "lex"]))
def test_basis_is_reduced_and_confluent(gens, kind):
    gens = [g for g in gens if g]
    if not gens:
        return
    order = MonomialOrder.base(kind, 3)
    gb = buchberger(gens, order, ring=R3)
    assert gb.spairs_confluent()
    leads = gb.leading_exponents()
    for i, g in enumerate(gb.elements):
        assert g.leading_term(order)[1] == 1
        for j, lead in enumerate(leads):
            if i == j:
                continue
            for e in g.terms_dict:
                assert not all(a >= b for a, b in zip(e, lead))
    for g in gens:
        assert gb.reduces_to_zero(g)


@given(ideal_gens, polynomials(R3, max_terms=2, max_exp=1))
def test_colon_saturate_chain(gens, f):
    gens = [g for g in gens if g]
    if not gens or not f:
        return
    I = IdealHandle(R3, gens)
    c = colon(I, f)
    s = saturate(I, f)
    assert c.contains_ideal(I)
    assert s.contains_ideal(c)
    assert ideal_equal(saturate(s, f), s)


@given(ideal_gens)
def test_elimination_soundness(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    I = IdealHandle(R3, gens)
    E = eliminate(I, ["x1"])
    for g in E.generators:
        assert "x1" not in g.variables()
        assert I.contains(g.to_ring(R3))
