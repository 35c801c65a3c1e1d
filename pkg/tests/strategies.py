"""Hypothesis strategies shared by the property tests."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from blowuplab.exactnum import QMatrix
from blowuplab.matroid import Arrangement, ArrangementError
from blowuplab.poly import PolyRing, Polynomial

small_fractions = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(small_fractions, min_size=r * c, max_size=r * c))
    return QMatrix(r, c, entries)


@st.composite
def polynomials(draw, ring: PolyRing, max_terms=4, max_exp=2):
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(ring.nvars))
        terms[e] = draw(small_fractions)
    return Polynomial(ring, terms)


@st.composite
def arrangements(draw, k_values=(2, 3), max_extra=2):
    k = draw(st.sampled_from(k_values))
    n = draw(st.integers(k, k + max_extra))
    forms = [[draw(st.integers(-2, 2)) for _ in range(k)] for _ in range(n)]
    try:
        return Arrangement.from_forms(forms)
    except ArrangementError:
        assume(False)
