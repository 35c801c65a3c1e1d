"""Acceptance criteria, one test per criterion.

All comparisons are exact (rational arithmetic, integer invariants); no
tolerance applies anywhere.  Each test prints a single PASS/FAIL summary line.
"""
from __future__ import annotations

import random
import subprocess
import sys

import pytest

from blowuplab import blowup as bu
from blowuplab.checks import PASS, SKIPPED, run_check, sampled_orders
from blowuplab.groebner import IdealHandle, buchberger, ideal_equal, intersect_all, is_groebner
from blowuplab.hilbert import BigradedSeries, bigraded_hilbert_series, codim, hilbert_series, krull_dim
from blowuplab.matroid import Arrangement, circuits, ot_hilbert_prediction

from conftest import CORPUS, SIMPLE


def _report(number: int, failures: list[str]):
    status = "PASS" if not failures else "FAIL"
    print(f"criterion {number}: {status}" + ("" if not failures else f" ({'; '.join(failures)})"))
    assert not failures, failures


def test_criterion_01_rees_methods_match_kernel():
    bad = []
    for aid, a in SIMPLE:
        oracle = bu.rees_ideal(a, "kernel")
        for method in ("colon", "saturation", "deletion"):
            if not ideal_equal(bu.rees_ideal(a, method), oracle):
                bad.append(f"{aid}/{method}")
    _report(1, bad)


def test_criterion_02_fiber_type():
    bad = [aid for aid, a in SIMPLE if not ideal_equal(bu.rees_ideal(a), bu.fiber_type_ideal(a))]
    _report(2, bad)


def test_criterion_03_special_fiber_is_orlik_terao():
    bad = [aid for aid, a in SIMPLE if not ideal_equal(bu.special_fiber_ideal(a), bu.ot_ideal(a))]
    _report(3, bad)


def test_criterion_04_hilbert_identity():
    bad = [aid for aid, a in SIMPLE if hilbert_series(bu.ot_ideal(a)) != ot_hilbert_prediction(a)]
    _report(4, bad)


def test_criterion_05_dimension_and_reduction_number():
    # stated literally: dim F = k and r = k - 1 on every corpus member
    bad = []
    for aid, a in SIMPLE:
        hs = hilbert_series(bu.special_fiber_ideal(a))
        if hs.krull_dim != a.k:
            bad.append(f"{aid}: dim {hs.krull_dim} != {a.k}")
        if hs.degree != a.k - 1:
            bad.append(f"{aid}: r {hs.degree} != {a.k - 1}")
    _report(5, bad)


def test_criterion_06_boolean_bigraded_series():
    bad = []
    for k in (2, 3, 4):
        got = bigraded_hilbert_series(bu.rees_ideal(Arrangement.boolean(k)))
        if not got.cross_equal(BigradedSeries.closed_form(k, k, k - 1)):
            bad.append(f"k={k}: {got}")
    _report(6, bad)


def test_criterion_07_sylvester_forms():
    bad = []
    for aid, a in SIMPLE:
        for c in circuits(a):
            d = bu.partial_of_circuit(c, bu.y_ring(a.n))
            if bu.sylvester_form(a, c) not in (d, -d):
                bad.append(f"{aid}:{[i + 1 for i in c.support]}")
    _report(7, bad)


def test_criterion_08_jacobian_dual():
    bad = []
    generic = [(aid, a) for aid, a in SIMPLE if a.is_generic() and a.n > a.k]
    assert generic
    for aid, a in generic:
        if not ideal_equal(bu.ot_ideal(a), bu.jacobian_dual_minors(a)):
            bad.append(f"{aid}: minors")
    for aid, a in SIMPLE:
        I1 = bu.symmetric_ideal(a)
        T = I1.ring
        for g in bu.jacobian_dual_minors(a).generators:
            for x in T.x_names:
                if not I1.contains(T.var(x) * g.to_ring(T)):
                    bad.append(f"{aid}: {x}*({g})")
    _report(8, bad)


def test_criterion_09_primary_decomposition():
    bad = []
    members = [(aid, a) for aid, a in SIMPLE if a.k in (2, 3) and a.n > a.k - 1]
    for aid, a in members:
        comps = [c for _, _, c in bu.primary_component_ideals(a)]
        if not ideal_equal(intersect_all(comps), bu.product_ideal(a)):
            bad.append(aid)
    _report(9, bad)


def test_criterion_10_deletion_and_restriction():
    bad = []
    ran = set()
    kinds = ("deletion_restriction", "restricted_ot_in_colon", "deletion_colon_equiv", "kplus1_radical")
    for aid, a in SIMPLE:
        for kind in kinds:
            r = run_check(a, kind, aid)
            if r.status == PASS:
                ran.add(kind)
            elif r.status != SKIPPED:
                bad.append(f"{aid}/{kind}: {r.status}")
    k3 = [aid for aid, a in SIMPLE if a.k == 3 and a.n == 4]
    for aid in k3:
        if run_check(dict(SIMPLE)[aid], "kplus1_radical", aid).status != PASS:
            bad.append(f"{aid}/kplus1_radical not run")
    bad += [f"{kind}: never applicable" for kind in kinds if kind not in ran]
    _report(10, bad)


def test_criterion_11_g_condition():
    bad = []
    for aid, a in SIMPLE:
        if not a.is_generic() or a.n <= a.k:
            continue
        for p in range(max(1, a.n - a.k + 1), a.n):
            got = codim(bu.minors_ideal_of_syzygy(a, p))
            if got != a.n - p + 1:
                bad.append(f"{aid}: p={p} codim {got}")
    _report(11, bad)


def test_criterion_12_groebner_self_checks():
    bad = []
    rnd = random.Random(12)
    for aid, a in SIMPLE:
        rees = bu.rees_ideal(a)
        gens = list(bu.fiber_type_ideal(a).generators)
        reference = buchberger(gens, ring=rees.ring)
        if not reference.spairs_confluent():
            bad.append(f"{aid}: not confluent")
        for _ in range(3):
            shuffled = list(gens)
            rnd.shuffle(shuffled)
            shuffled = [g * rnd.randint(1, 7) for g in shuffled]
            if buchberger(shuffled, ring=rees.ring).elements != reference.elements:
                bad.append(f"{aid}: shuffle changed the basis")
                break
        ot = bu.ot_ideal(a)
        if ot.is_zero():
            continue
        orders = sampled_orders(a.n, seed=0)
        if len(orders) < 20:
            bad.append(f"{aid}: only {len(orders)} orders")
        for order in orders:
            if not is_groebner(list(ot.generators), order):
                bad.append(f"{aid}: {order.describe()}")
    _report(12, bad)


def test_criterion_13_corpus_is_byte_identical():
    cmd = [sys.executable, "-m", "blowuplab", "corpus"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    bad = []
    if first.returncode != 0:
        bad.append(f"exit {first.returncode}")
    if first.stdout != second.stdout or not first.stdout:
        bad.append("outputs differ")
    _report(13, bad)
