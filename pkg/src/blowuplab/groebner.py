"""Buchberger's algorithm and the ideal calculus built on it.

Internally a polynomial is a list of ``(key, packed_exponents, int_coeff)``
triples sorted by decreasing key.  ``key`` packs ``W @ e`` for the order's
weight matrix into one integer, so monomial comparison is integer comparison
and multiplying monomials adds keys.  Exponent vectors are packed into 16-bit
fields with a guard bit, which makes divisibility a subtraction and a mask.
Reduction is fraction free; coefficients are kept primitive.
"""
from __future__ import annotations

import contextvars
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .poly import MonomialOrder, Polynomial, PolyRing, RingMismatch

_FIELD = 16
_EXP_LIMIT = 1 << (_FIELD - 1)
_KEY_SHIFT = 48


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit one of its configured resource limits."""


@dataclass(frozen=True)
class Budget:
    max_basis: int = 4000
    max_degree: int = 200
    max_reductions: int = 20_000_000
    timeout_ms: int | None = None
    verify: bool = True

    def deadline(self) -> float | None:
        if self.timeout_ms is None:
            return None
        return time.monotonic() + self.timeout_ms / 1000.0


_budget: contextvars.ContextVar[Budget] = contextvars.ContextVar("blowuplab_budget", default=Budget())
_deadline: contextvars.ContextVar[float | None] = contextvars.ContextVar("blowuplab_deadline", default=None)


def current_budget() -> Budget:
    return _budget.get()


@contextmanager
def budget_scope(budget: Budget):
    """Run a block under ``budget``; a timeout applies to the block as a whole."""
    tok = _budget.set(budget)
    tok2 = _deadline.set(budget.deadline())
    try:
        yield budget
    finally:
        _budget.reset(tok)
        _deadline.reset(tok2)


def _check_deadline():
    dl = _deadline.get()
    if dl is not None and time.monotonic() > dl:
        raise BudgetExceeded("wall-clock budget exceeded")


# ---------------------------------------------------------------- engine


class _Engine:
    """Packing and reduction for one (number of variables, order) pair."""

    def __init__(self, nvars: int, order: MonomialOrder):
        if order.nvars != nvars:
            raise RingMismatch(f"order on {order.nvars} variables used in a ring with {nvars}")
        self.nvars = nvars
        self.order = order
        self.matrix = order.matrix
        rows = len(self.matrix)
        self.key_weights = [1 << (_KEY_SHIFT * (rows - 1 - r)) for r in range(rows)]
        self.shifts = [_FIELD * (nvars - 1 - i) for i in range(nvars)]
        self.guard = sum(1 << (s + _FIELD - 1) for s in self.shifts)
        self.reductions = 0
        self.budget = current_budget()

    # packing
    def pack(self, e: Sequence[int]) -> int:
        p = 0
        for x, s in zip(e, self.shifts):
            if x >= _EXP_LIMIT:
                raise BudgetExceeded("exponent too large for the packed representation")
            p |= x << s
        return p

    def unpack(self, p: int) -> tuple[int, ...]:
        mask = (1 << _FIELD) - 1
        return tuple((p >> s) & mask for s in self.shifts)

    def key(self, e: Sequence[int]) -> int:
        k = 0
        for row, w in zip(self.matrix, self.key_weights):
            d = 0
            for a, x in zip(row, e):
                if a and x:
                    d += a * x
            if d:
                k += d * w
        return k

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)

    def lcm(self, a: int, b: int) -> int:
        mask = (1 << _FIELD) - 1
        p = 0
        for s in self.shifts:
            p |= max((a >> s) & mask, (b >> s) & mask) << s
        return p

    def coprime(self, a: int, b: int) -> bool:
        return self.lcm(a, b) == a + b

    def degree(self, p: int) -> int:
        mask = (1 << _FIELD) - 1
        return sum((p >> s) & mask for s in self.shifts)

    def key_of_packed(self, p: int) -> int:
        return self.key(self.unpack(p))

    # conversion
    def from_poly(self, f: Polynomial) -> list:
        if f.ring.nvars != self.nvars:
            raise RingMismatch("polynomial ring does not match the engine")
        items = f.terms_dict
        if not items:
            return []
        den = lcm(*(c.denominator for c in items.values()))
        terms = [(self.key(e), self.pack(e), int(c * den)) for e, c in items.items()]
        terms.sort(key=lambda t: t[0], reverse=True)
        return _primitive(terms)

    def to_poly(self, terms: list, ring: PolyRing, monic: bool = True) -> Polynomial:
        if not terms:
            return ring.zero()
        lc = terms[0][2] if monic else 1
        return Polynomial(ring, {self.unpack(p): Fraction(c, lc) for _, p, c in terms})

    # arithmetic
    def _tick(self, n: int = 1):
        self.reductions += n
        if self.reductions > self.budget.max_reductions:
            raise BudgetExceeded(f"more than {self.budget.max_reductions} reduction steps")
        if not self.reductions & 0x3FF:
            _check_deadline()

    def reduce(self, f: list, basis: Sequence[list], full: bool = True, track: bool = False):
        """Reduce f modulo the polynomials in ``basis``.

        Returns the primitive remainder, and with ``track`` also the rational
        factor s such that the exact remainder equals ``result / s``.
        """
        leads = [(g[0][1], g) for g in basis if g]
        guard = self.guard
        scale = Fraction(1)
        f = list(f)
        i = 0
        steps = 0
        while i < len(f):
            K, P, c = f[i]
            red = None
            for gP, g in leads:
                if not ((P - gP) & guard):
                    red = g
                    break
            if red is None:
                if not full:
                    break
                i += 1
                continue
            gK, gP, gc = red[0]
            d = gcd(c, gc)
            a, b = gc // d, c // d
            if a < 0:
                a, b = -a, -b
            head = f[:i]
            if a != 1:
                head = [(k, p, a * x) for k, p, x in head]
                if track:
                    scale *= a
            f = head + _merge(f[i + 1:], a, red[1:], K - gK, P - gP, b)
            steps += 1
            if steps & 7 == 0 and f:
                g_all = _content(f)
                if g_all > 1:
                    f = [(k, p, x // g_all) for k, p, x in f]
                    if track:
                        scale /= g_all
            self._tick()
        if f:
            g_all = _content(f)
            if f[0][2] < 0:
                g_all = -g_all
            if g_all != 1:
                f = [(k, p, x // g_all) for k, p, x in f]
                if track:
                    scale /= g_all
        return (f, scale) if track else f

    def spoly(self, f: list, g: list) -> list:
        fK, fP, fc = f[0]
        gK, gP, gc = g[0]
        L = self.lcm(fP, gP)
        LK = self.key_of_packed(L)
        d = gcd(fc, gc)
        a, b = gc // d, fc // d
        # a * (L/lt f) * f - b * (L/lt g) * g ; leading terms cancel
        left = [(k + LK - fK, p + L - fP, a * x) for k, p, x in f[1:]]
        return _merge(left, 1, g[1:], LK - gK, L - gP, b)


def _merge(ft: list, a: int, gt: list, mK: int, mP: int, b: int) -> list:
    """a*ft - b*(m*gt) for sorted term lists; m given by (key, packed)."""
    out = []
    append = out.append
    i = j = 0
    lf, lg = len(ft), len(gt)
    if lg:
        gK = gt[0][0] + mK
    while i < lf and j < lg:
        fk = ft[i][0]
        if fk > gK:
            k, p, x = ft[i]
            append((k, p, a * x) if a != 1 else ft[i])
            i += 1
        elif fk < gK:
            k, p, x = gt[j]
            append((gK, p + mP, -b * x))
            j += 1
            if j < lg:
                gK = gt[j][0] + mK
        else:
            k, p, x = ft[i]
            v = a * x - b * gt[j][2]
            if v:
                append((k, p, v))
            i += 1
            j += 1
            if j < lg:
                gK = gt[j][0] + mK
    if i < lf:
        if a == 1:
            out.extend(ft[i:])
        else:
            out.extend((k, p, a * x) for k, p, x in ft[i:])
    while j < lg:
        k, p, x = gt[j]
        append((k + mK, p + mP, -b * x))
        j += 1
    return out


def _content(terms: list) -> int:
    return gcd(*(x for _, _, x in terms))


def _primitive(terms: list) -> list:
    if not terms:
        return terms
    g = _content(terms)
    if terms[0][2] < 0:
        g = -g
    if g == 1:
        return terms
    return [(k, p, x // g) for k, p, x in terms]


# ---------------------------------------------------------------- Groebner bases


class GroebnerBasis:
    """Reduced Groebner basis: monic elements sorted by increasing leading term."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements: list[Polynomial],
                 engine: _Engine, internal: list[list]):
        self.ring = ring
        self.order = order
        self.elements = elements
        self._engine = engine
        self._internal = internal

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order and self.elements == other.elements)

    def __hash__(self):
        return hash((self.ring, self.order, tuple(self.elements)))

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def leading_exponents(self) -> list[tuple[int, ...]]:
        eng = self._engine
        return [eng.unpack(g[0][1]) for g in self._internal]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        eng = _Engine(self.ring.nvars, self.order)
        terms = eng.from_poly(f)
        if not terms:
            return f
        # from_poly made f primitive; recover that factor too
        lead_e = eng.unpack(terms[0][1])
        factor = Fraction(terms[0][2]) / f.terms_dict[lead_e]
        r, s = eng.reduce(terms, self._internal, track=True)
        s = s * factor
        return Polynomial(self.ring, {eng.unpack(p): Fraction(c) / s for _, p, c in r})

    def reduces_to_zero(self, f: Polynomial) -> bool:
        eng = _Engine(self.ring.nvars, self.order)
        return not eng.reduce(eng.from_poly(f), self._internal)

    def spairs_confluent(self) -> bool:
        """Direct post-check: every S-pair of the basis reduces to zero.

        Pairs with coprime leading monomials are skipped (they always reduce
        to zero by Buchberger's first criterion).
        """
        return _spairs_confluent(self._engine, self._internal)

    def __repr__(self):
        return f"GroebnerBasis({self.order.describe()}, [{', '.join(map(str, self.elements))}])"


def _spairs_confluent(eng: _Engine, polys: list[list]) -> bool:
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            f, g = polys[i], polys[j]
            if eng.coprime(f[0][1], g[0][1]):
                continue
            if eng.reduce(eng.spoly(f, g), polys, full=False):
                return False
    return True


def is_groebner(polys: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """True iff the given polynomials (as they are) form a Groebner basis."""
    polys = [p for p in polys if p]
    if not polys:
        return True
    ring = polys[0].ring
    order = order or ring.default_order()
    eng = _Engine(ring.nvars, order)
    return _spairs_confluent(eng, [eng.from_poly(p) for p in polys])


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis via Buchberger with Gebauer-Moeller pair pruning.

    Pairs are selected by smallest lcm degree, then smallest lcm in ``order``.
    Raises :class:`BudgetExceeded` when a resource limit of the ambient
    :class:`Budget` is hit.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    order = order or ring.default_order()
    eng = _Engine(ring.nvars, order)
    budget = eng.budget
    _check_deadline()

    polys: list[list] = []
    basis: list[int] = []
    pairs: list[tuple[int, int, int]] = []  # (lcm packed, i, j)

    def update(h: int):
        nonlocal basis, pairs
        hP = polys[h][0][1]
        cands = [(eng.lcm(hP, polys[g][0][1]), h, g) for g in basis]
        kept = []
        for idx, (L, _, g) in enumerate(cands):
            gP = polys[g][0][1]
            if L == hP + gP:
                kept.append((L, h, g))
                continue
            dominated = False
            for L2, _, g2 in cands[idx + 1:]:
                if eng.divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for L2, _, g2 in kept:
                    if eng.divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                kept.append((L, h, g))
        new_pairs = [(L, a, b) for L, a, b in kept if L != hP + polys[b][0][1]]
        survivors = []
        for L, a, b in pairs:
            if (not eng.divides(hP, L)
                    or eng.lcm(polys[a][0][1], hP) == L
                    or eng.lcm(hP, polys[b][0][1]) == L):
                survivors.append((L, a, b))
        pairs = survivors + new_pairs
        basis = [g for g in basis if not eng.divides(hP, polys[g][0][1])] + [h]
        if len(polys) > budget.max_basis:
            raise BudgetExceeded(f"basis grew beyond {budget.max_basis} elements")

    for g in gens:
        t = eng.from_poly(g)
        if not t:
            continue
        t = eng.reduce(t, [polys[b] for b in basis])
        if not t:
            continue
        polys.append(t)
        update(len(polys) - 1)

    pair_keys: dict[int, tuple[int, int]] = {}

    def pair_rank(pr):
        L = pr[0]
        r = pair_keys.get(L)
        if r is None:
            r = pair_keys[L] = (eng.degree(L), eng.key_of_packed(L))
        return r + (pr[1], pr[2])

    while pairs:
        best = min(range(len(pairs)), key=lambda q: pair_rank(pairs[q]))
        L, a, b = pairs.pop(best)
        s = eng.spoly(polys[a], polys[b])
        h = eng.reduce(s, [polys[g] for g in basis])
        if not h:
            continue
        if eng.degree(h[0][1]) > budget.max_degree:
            raise BudgetExceeded(f"basis element degree exceeds {budget.max_degree}")
        polys.append(h)
        update(len(polys) - 1)

    # minimal basis
    leads = [(polys[g][0][1], g) for g in basis]
    minimal = []
    for idx, (P, g) in enumerate(leads):
        if any(eng.divides(P2, P) and (P2 != P or j < idx) for j, (P2, _) in enumerate(leads) if j != idx):
            continue
        minimal.append(g)
    # interreduce tails; heads are irreducible by minimality
    reduced = []
    for g in minimal:
        others = [polys[h] for h in minimal if h != g]
        reduced.append(_reduce_tail(eng, polys[g], others))
    reduced.sort(key=lambda t: t[0][0])
    elements = [eng.to_poly(t, ring) for t in reduced]
    gb = GroebnerBasis(ring, order, elements, eng, reduced)
    if budget.verify and not gb.spairs_confluent():
        raise AssertionError("Groebner post-check failed: an S-pair does not reduce to zero")
    return gb


def _reduce_tail(eng: _Engine, f: list, others: Sequence[list]) -> list:
    """Fully reduce every non-leading term of f by ``others``."""
    leads = [(g[0][1], g) for g in others if g]
    guard = eng.guard
    i = 1
    while i < len(f):
        K, P, c = f[i]
        red = None
        for gP, g in leads:
            if not ((P - gP) & guard):
                red = g
                break
        if red is None:
            i += 1
            continue
        gK, gP, gc = red[0]
        d = gcd(c, gc)
        a, b = gc // d, c // d
        if a < 0:
            a, b = -a, -b
        head = f[:i] if a == 1 else [(k, p, a * x) for k, p, x in f[:i]]
        f = head + _merge(f[i + 1:], a, red[1:], K - gK, P - gP, b)
        eng._tick()
    return _primitive(f)


# ---------------------------------------------------------------- ideals


class IdealHandle:
    """An ideal given by generators, with reduced Groebner bases cached per order."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = (), name: str | None = None):
        gens = []
        for g in generators:
            if g.ring != ring:
                g = g.to_ring(ring)
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.name = name
        self._cache: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.default_order()
        gb = self._cache.get(order)
        if gb is None:
            gb = buchberger(self.generators, order, ring=self.ring)
            with self._lock:
                gb = self._cache.setdefault(order, gb)
        return gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        if not f:
            return True
        if self.is_zero():
            return False
        return self.groebner().reduces_to_zero(f)

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        _same_ring(self, other)
        return IdealHandle(self.ring, self.generators + other.generators)

    def __mul__(self, other: "IdealHandle") -> "IdealHandle":
        _same_ring(self, other)
        return IdealHandle(self.ring, [f * g for f in self.generators for g in other.generators])

    def power(self, k: int) -> "IdealHandle":
        if k < 0:
            raise ValueError("negative power")
        result = IdealHandle(self.ring, [self.ring.one()])
        for _ in range(k):
            result = IdealHandle(self.ring, (result * self).minimal_generators())
        return result

    def minimal_generators(self) -> list[Polynomial]:
        """The reduced Groebner basis (a canonical generating set)."""
        if self.is_zero():
            return []
        return list(self.groebner().elements)

    def extend(self, ring: PolyRing) -> "IdealHandle":
        """The extended ideal in a ring containing this ring's variables."""
        return IdealHandle(ring, [g.to_ring(ring) for g in self.generators])

    def to_str(self) -> str:
        if self.is_zero():
            return "⟨0⟩"
        return "⟨" + ", ".join(str(g) for g in self.generators) + "⟩"

    def __repr__(self):
        return f"IdealHandle({self.ring}, {self.to_str()})"


def _same_ring(i: IdealHandle, j: IdealHandle):
    if i.ring != j.ring:
        raise RingMismatch(f"{i.ring} vs {j.ring}")


def ideal(ring: PolyRing, gens: Iterable[Polynomial | str]) -> IdealHandle:
    return IdealHandle(ring, [ring.parse(g) if isinstance(g, str) else g for g in gens])


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def membership(f: Polynomial, ideal_: IdealHandle, order: MonomialOrder | None = None) -> bool:
    if order is None:
        return ideal_.contains(f)
    if not f:
        return True
    if ideal_.is_zero():
        return False
    return ideal_.groebner(order).reduces_to_zero(f.to_ring(ideal_.ring))


def ideal_equal(i: IdealHandle, j: IdealHandle) -> bool:
    """Equality of ideals: identical reduced Groebner bases in the default order."""
    _same_ring(i, j)
    if i.is_zero() or j.is_zero():
        return i.is_zero() == j.is_zero() or (
            (i.is_zero() and all(not g for g in j.generators))
            or (j.is_zero() and all(not g for g in i.generators)))
    return i.groebner().elements == j.groebner().elements


def _fresh(ring: PolyRing, stem: str) -> str:
    name = stem
    i = 0
    while name in ring:
        i += 1
        name = f"{stem}{i}"
    return name


def eliminate(i: IdealHandle, front: Iterable[str]) -> IdealHandle:
    """Generators of I intersected with the subring without the ``front`` variables."""
    front = list(front)
    idx = [i.ring.index(v) for v in front]
    sub = i.ring.drop(front)
    if i.is_zero():
        return IdealHandle(sub, [])
    order = MonomialOrder.block(i.ring.nvars, idx)
    gb = i.groebner(order)
    kept = [g for g in gb.elements if not (g.variables() & set(front))]
    return IdealHandle(sub, [g.to_ring(sub) for g in kept])


def intersect(i: IdealHandle, j: IdealHandle) -> IdealHandle:
    """I cap J by eliminating t from t*I + (1-t)*J."""
    _same_ring(i, j)
    ring = i.ring
    if i.is_zero() or j.is_zero():
        return IdealHandle(ring, [])
    t = _fresh(ring, "_t")
    big = ring.extend([t])
    tv = big.var(t)
    gens = [tv * g.to_ring(big) for g in i.generators]
    gens += [(1 - tv) * g.to_ring(big) for g in j.generators]
    return eliminate(IdealHandle(big, gens), [t])


def intersect_all(ideals: Sequence[IdealHandle]) -> IdealHandle:
    if not ideals:
        raise ValueError("empty intersection")
    acc = ideals[0]
    for nxt in ideals[1:]:
        if nxt.contains_ideal(acc):
            continue
        if acc.contains_ideal(nxt):
            acc = nxt
            continue
        acc = intersect(acc, nxt)
    return acc


def colon(i: IdealHandle, f: Polynomial) -> IdealHandle:
    """(I : f), as (I cap <f>) / f."""
    if f.ring != i.ring:
        f = f.to_ring(i.ring)
    if not f:
        raise ZeroDivisionError("colon by the zero polynomial")
    if f.is_constant():
        return IdealHandle(i.ring, i.generators)
    inter = intersect(i, IdealHandle(i.ring, [f]))
    quotients = []
    for g in inter.generators:
        q = f.divides_exactly(g)
        if q is None:
            raise ArithmeticError(f"intersection generator {g} is not divisible by {f}")
        quotients.append(q)
    return IdealHandle(i.ring, quotients)


def colon_ideal(i: IdealHandle, j: IdealHandle) -> IdealHandle:
    """(I : J) = intersection of (I : g) over generators g of J."""
    _same_ring(i, j)
    if j.is_zero():
        return IdealHandle(i.ring, [i.ring.one()])
    return intersect_all([colon(i, g) for g in j.generators])


def saturate(i: IdealHandle, f: Polynomial) -> IdealHandle:
    """(I : f^infinity) by eliminating z from I + <1 - z*f>."""
    if f.ring != i.ring:
        f = f.to_ring(i.ring)
    if not f:
        raise ZeroDivisionError("saturation by the zero polynomial")
    if f.is_constant() or i.is_zero():
        return IdealHandle(i.ring, i.generators)
    z = _fresh(i.ring, "_z")
    big = i.ring.extend([z])
    gens = [g.to_ring(big) for g in i.generators] + [1 - big.var(z) * f.to_ring(big)]
    return eliminate(IdealHandle(big, gens), [z])


def saturate_iterated(i: IdealHandle, f: Polynomial, max_rounds: int = 64) -> IdealHandle:
    """(I : f^infinity) as the stable value of repeated colons."""
    cur = i
    for _ in range(max_rounds):
        nxt = colon(cur, f)
        if ideal_equal(nxt, cur):
            return cur
        cur = nxt
    raise BudgetExceeded("iterated colon did not stabilize")


def saturate_ideal(i: IdealHandle, j: IdealHandle) -> IdealHandle:
    """(I : J^infinity) = intersection of (I : g^infinity) over generators of J."""
    _same_ring(i, j)
    if j.is_zero():
        return IdealHandle(i.ring, [i.ring.one()])
    return intersect_all([saturate(i, g) for g in j.generators])


def with_budget(budget: Budget | None, **changes) -> Budget:
    base = budget or current_budget()
    return replace(base, **changes) if changes else base
