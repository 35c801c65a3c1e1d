"""The verification battery: one function per check kind, each returning a report."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import blowup as bu
from .groebner import (Budget, BudgetExceeded, IdealHandle, budget_scope, colon, eliminate,
                       ideal_equal, is_groebner, saturate_ideal)
from .hilbert import BigradedSeries, bigraded_hilbert_series, codim, hilbert_series
from .matroid import (Arrangement, StretchedArrangement, circuits, deletion, irreducible_components,
                      ot_hilbert_prediction)
from .poly import MonomialOrder, PolyRing

PASS, FAIL, SKIPPED, INCONCLUSIVE = "pass", "fail", "skipped", "inconclusive"

CHECK_KINDS = (
    "fiber_type",
    "rees_methods_agree",
    "fiber_equals_ot",
    "colon_all_indices",
    "deletion_restriction",
    "deletion_colon_equiv",
    "restricted_ot_in_colon",
    "content_saturation",
    "primary_decomposition",
    "g_condition",
    "generic_jacobian_dual",
    "hilbert_prediction",
    "reduction_number",
    "analytic_spread",
    "boolean_bigraded",
    "universal_gb_sample",
    "kplus1_radical",
    "stretched_rees",
)


@dataclass
class CheckReport:
    arrangement: str
    check: str
    status: str
    witness: list[str] | None = None
    details: dict = field(default_factory=dict)
    millis: int = 0

    def to_json(self, timings: bool = False) -> dict:
        out = {"arrangement": self.arrangement, "check": self.check, "status": self.status}
        if self.witness:
            out["witness"] = list(self.witness)
        if self.details:
            out["details"] = self.details
        if timings:
            out["millis"] = self.millis
        return out


class _Skip(Exception):
    pass


def _outcome(ok: bool, witness=None, **details):
    return (PASS if ok else FAIL), (None if ok else witness), details


def _difference_witness(i: IdealHandle, j: IdealHandle) -> list[str]:
    """Generators of either ideal that fail to lie in the other."""
    out = [f"not in right: {g}" for g in i.minimal_generators() if not j.contains(g)]
    out += [f"not in left: {g}" for g in j.minimal_generators() if not i.contains(g)]
    return out


def _compare(i: IdealHandle, j: IdealHandle, **details):
    if ideal_equal(i, j):
        return _outcome(True, **details)
    return _outcome(False, _difference_witness(i, j), **details)


def _simple(a) -> Arrangement:
    if isinstance(a, StretchedArrangement):
        raise _Skip("precondition: needs a simple arrangement")
    return a


def _rename_y(ideal: IdealHandle, mapping: dict[str, str], target: PolyRing) -> IdealHandle:
    images = {nm: target.var(mapping.get(nm, nm)) for nm in ideal.ring.names}
    return IdealHandle(target, [g.substitute(images, target) for g in ideal.generators])


def _deleted_rees_in(a: Arrangement, i: int, T: PolyRing) -> IdealHandle:
    """Rees ideal of A minus form i, with each y keeping its original index."""
    sub, _ = deletion(a, i)
    rest = [j for j in range(a.n) if j != i]
    small = bu.rees_ideal(sub, "kernel")
    mapping = {f"y{t + 1}": f"y{j + 1}" for t, j in enumerate(rest)}
    return _rename_y(small, mapping, T)


# ---------------------------------------------------------------- individual checks


def check_fiber_type(a):
    a = _simple(a)
    return _compare(bu.rees_ideal(a, "kernel"), bu.fiber_type_ideal(a))


def check_rees_methods_agree(a):
    a = _simple(a)
    oracle = bu.rees_ideal(a, "kernel")
    perm, others = bu.saturation_order(a)
    bad, witness = [], []
    for m in ("colon", "saturation", "deletion"):
        other = bu.rees_ideal(a, m)
        if not ideal_equal(oracle, other):
            bad.append(m)
            witness += [f"{m}: {w}" for w in _difference_witness(oracle, other)]
    details = {"saturation_order": [p + 1 for p in perm], "saturated_by": [p + 1 for p in others],
               "linear_type": ideal_equal(oracle, bu.symmetric_ideal(a))}
    if bad:
        details["disagreeing"] = bad
    return _outcome(not bad, witness, **details)


def check_fiber_equals_ot(a):
    a = _simple(a)
    return _compare(bu.special_fiber_ideal(a), bu.ot_ideal(a),
                    circuits=[[i + 1 for i in c.support] for c in circuits(a)])


def check_colon_all_indices(a):
    a = _simple(a)
    oracle = bu.rees_ideal(a, "kernel")
    bad = [i + 1 for i in range(a.n) if not ideal_equal(bu.rees_colon(a, i), oracle)]
    return _outcome(not bad, [f"index {i}" for i in bad], indices=a.n)


def check_deletion_restriction(a):
    a = _simple(a)
    if a.n < 2:
        raise _Skip("precondition: needs n >= 2")
    rees = bu.rees_ideal(a, "kernel")
    T = rees.ring
    bad, witness = [], []
    for i in range(a.n):
        yi = f"y{i + 1}"
        restricted = eliminate(rees, [yi])
        Tp = restricted.ring
        deleted = _deleted_rees_in(a, i, Tp)
        if not ideal_equal(restricted, deleted):
            bad.append(i + 1)
            witness += [f"delete {i + 1}: {w}" for w in _difference_witness(restricted, deleted)]
    return _outcome(not bad, witness, deleted_indices=list(range(1, a.n + 1)))


def check_deletion_colon_equiv(a):
    a = _simple(a)
    if a.n < 2:
        raise _Skip("precondition: needs n >= 2")
    T = bu.t_ring(a.k, a.n)
    ells = a.linear_forms(T)
    bad, coloops = [], []
    for i in range(a.n):
        j = (i + 1) % a.n
        rest = [t for t in range(a.n) if t != i]
        I1p = IdealHandle(T, bu._sym_gens(a, rest, T))
        rel = ells[i] * T.var(f"y{i + 1}") - ells[j] * T.var(f"y{j + 1}")
        left = colon(I1p, rel)
        right = colon(I1p, ells[i])
        if not ideal_equal(left, right):
            bad.append(i + 1)
        sub, was_coloop = deletion(a, i)
        if was_coloop:
            coloops.append(i + 1)
            # a coloop makes the biform a nonzerodivisor
            if not ideal_equal(left, I1p):
                bad.append(i + 1)
    return _outcome(not bad, [f"index {i}" for i in sorted(set(bad))], coloops=coloops)


def check_restricted_ot_in_colon(a):
    a = _simple(a)
    I1 = bu.symmetric_ideal(a)
    T = I1.ring
    ells = a.linear_forms(T)
    witness = []
    count = 0
    for i in range(a.n):
        for g in bu.ot_restricted(a, i, T).generators:
            count += 1
            if not I1.contains(ells[i] * g):
                witness.append(f"index {i + 1}: {g}")
    return _outcome(not witness, witness, memberships=count)


def cramer_inclusion(a: Arrangement) -> list[str]:
    """Products x_r * (maximal minor of the Jacobian dual) missing from I_1."""
    I1 = bu.symmetric_ideal(a)
    T = I1.ring
    missing = []
    for g in bu.jacobian_dual_minors(a).generators:
        gT = g.to_ring(T)
        for x in T.x_names:
            if not I1.contains(T.var(x) * gT):
                missing.append(f"{x}*({g})")
    return missing


def check_content_saturation(a):
    a = _simple(a)
    if a.n <= a.k:
        raise _Skip("precondition: needs n > k")
    I1 = bu.symmetric_ideal(a)
    T = I1.ring
    minors = bu.jacobian_dual_minors(a).extend(T)
    sat = saturate_ideal(I1, minors)
    mT = IdealHandle(T, T.gens()[:a.k])
    missing = cramer_inclusion(a)
    ok = ideal_equal(sat, mT) and not missing
    witness = missing + ([] if ideal_equal(sat, mT) else [f"saturation: {sat.to_str()}"])
    return _outcome(ok, witness, minors=len(minors.generators))


def check_primary_decomposition(a):
    a = _simple(a)
    comps = bu.primary_component_ideals(a)
    if not comps:
        raise _Skip("precondition: needs a rank 2 flat")
    from .groebner import intersect_all
    inter = intersect_all([c for _, _, c in comps])
    details = {"components": [{"flat": [i + 1 for i in F], "mobius": mu} for F, mu, _ in comps]}
    return _compare(bu.product_ideal(a), inter, **details)


def check_g_condition(a):
    a = _simple(a)
    if not a.is_generic():
        raise _Skip("precondition: needs a generic arrangement")
    heights = {}
    bad = []
    for p in range(max(1, a.n - a.k + 1), a.n):
        h = codim(bu.minors_ideal_of_syzygy(a, p))
        heights[str(p)] = h
        if h != a.n - p + 1:
            bad.append(f"p={p}: codim {h}, expected {a.n - p + 1}")
    return _outcome(not bad, bad, heights=heights)


def check_generic_jacobian_dual(a):
    a = _simple(a)
    if not a.is_generic():
        raise _Skip("precondition: needs a generic arrangement")
    return _compare(bu.ot_ideal(a), bu.jacobian_dual_minors(a))


def check_hilbert_prediction(a):
    a = _simple(a)
    hs = hilbert_series(bu.ot_ideal(a))
    pred = ot_hilbert_prediction(a)
    return _outcome(hs == pred, [f"computed {hs}", f"predicted {pred}"],
                    series=str(hs))


def check_reduction_number(a):
    """Degree of the fiber's h-polynomial.

    The expected value is k minus the number of irreducible components, which
    is k - 1 for an irreducible arrangement.
    """
    a = _simple(a)
    hs = hilbert_series(bu.special_fiber_ideal(a))
    comps = len(irreducible_components(a))
    expected = a.k - comps
    return _outcome(hs.degree == expected, [f"h-vector {list(hs.h_vector)}"],
                    reduction_number=hs.degree, expected=expected, components=comps,
                    k_minus_1=a.k - 1, h_vector=list(hs.h_vector))


def check_analytic_spread(a):
    a = _simple(a)
    d = hilbert_series(bu.special_fiber_ideal(a)).krull_dim
    return _outcome(d == a.k, [f"fiber dimension {d}"], fiber_dimension=d)


def check_boolean_bigraded(a):
    a = _simple(a)
    if a.n != a.k:
        raise _Skip("precondition: needs n = k")
    hs = bigraded_hilbert_series(bu.rees_ideal(a, "kernel"))
    closed = BigradedSeries.closed_form(a.k, a.n, a.k - 1)
    return _outcome(hs.cross_equal(closed), [f"computed {hs}", f"expected {closed}"], series=str(hs))


def sampled_orders(nvars: int, seed: int, count: int = 21) -> list[MonomialOrder]:
    """Seeded random orders: permuted base orders and positive weight orders.

    Attempts cycle through deglex, lex, weighted, degrevlex; weighted orders use
    weights in 1..9 with a permuted lex tie-break.
    """
    rng = random.Random(seed)
    kinds = ("degrevlex", "deglex", "lex", "weighted")
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        perm = list(range(nvars))
        rng.shuffle(perm)
        kind = kinds[attempts % len(kinds)]
        if kind == "weighted":
            weights = [rng.randint(1, 9) for _ in range(nvars)]
            order = MonomialOrder.weighted(weights, MonomialOrder.permuted(perm, "lex"))
        else:
            order = MonomialOrder.permuted(perm, kind)
        if order in seen:
            continue
        seen.add(order)
        out.append(order)
    return out


def check_universal_gb_sample(a, seed: int = 0):
    a = _simple(a)
    ot = bu.ot_ideal(a)
    if ot.is_zero():
        raise _Skip("precondition: needs at least one circuit")
    orders = sampled_orders(a.n, seed)
    failing = [o.describe() for o in orders if not is_groebner(ot.generators, o)]
    return _outcome(not failing, failing, orders_tested=len(orders), seed=seed, evidence="sampled")


def check_kplus1_radical(a):
    a = _simple(a)
    if a.n != a.k + 1:
        raise _Skip("precondition: needs n = k + 1")
    comps = bu.kplus1_components(a)
    inter = bu.kplus1_intersection(a)
    return _compare(inter, bu.symmetric_ideal(a), components=[name for name, _ in comps])


def check_stretched_rees(a):
    if not isinstance(a, StretchedArrangement) or a.is_simple():
        raise _Skip("precondition: needs a stretched arrangement with a repeated form")
    return _compare(bu.stretched_rees_kernel(a), bu.stretched_rees_from_support(a),
                    multiplicities=list(a.multiplicities))


_CHECKS: dict[str, Callable] = {name: globals()[f"check_{name}"] for name in CHECK_KINDS}


def run_check(a, check: str, arrangement_id: str = "A", budget: Budget | None = None,
              seed: int = 0) -> CheckReport:
    if check not in _CHECKS:
        raise ValueError(f"unknown check {check!r}")
    fn = _CHECKS[check]
    start = time.perf_counter()
    try:
        with budget_scope(budget or Budget()):
            if check == "universal_gb_sample":
                status, witness, details = fn(a, seed=seed)
            else:
                status, witness, details = fn(a)
    except _Skip as exc:
        status, witness, details = SKIPPED, None, {"reason": str(exc)}
    except BudgetExceeded as exc:
        status, witness, details = INCONCLUSIVE, None, {"reason": str(exc)}
    millis = int((time.perf_counter() - start) * 1000)
    return CheckReport(arrangement_id, check, status, witness, details, millis)


def run_all(a, arrangement_id: str = "A", budget: Budget | None = None, seed: int = 0) -> list[CheckReport]:
    return [run_check(a, c, arrangement_id, budget, seed) for c in CHECK_KINDS]
