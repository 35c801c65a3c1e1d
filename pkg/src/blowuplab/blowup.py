"""Ideals attached to the blowup of the ideal of (n-1)-fold products.

Rings: R = Q[x1..xk] holds the linear forms, S = Q[y1..yn] the fiber side and
T = Q[x1..xk, y1..yn] the Rees side.  Indices into the arrangement are
0-based; variable y{i+1} belongs to form i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .groebner import IdealHandle, colon, eliminate, intersect_all, saturate
from .matroid import (Arrangement, Circuit, StretchedArrangement, circuits, closure,
                      intersection_lattice, is_coloop, stretched_products_factorization, x_ring)
from .poly import Polynomial, PolyRing

REES_METHODS = ("kernel", "colon", "saturation", "deletion")


def y_ring(n: int) -> PolyRing:
    return PolyRing(tuple(f"y{j}" for j in range(1, n + 1)))


def t_ring(k: int, n: int) -> PolyRing:
    return PolyRing.blowup(k, n)


@dataclass(frozen=True)
class BlowupData:
    arrangement: Arrangement
    R: PolyRing
    S: PolyRing
    T: PolyRing
    forms: tuple[Polynomial, ...]      # l_i in R
    products: tuple[Polynomial, ...]   # f_i = prod_{j != i} l_j in R

    def forms_in(self, ring: PolyRing) -> list[Polynomial]:
        return [l.to_ring(ring) for l in self.forms]

    def y(self, i: int) -> Polynomial:
        return self.T.var(f"y{i + 1}")


def blowup_data(a: Arrangement) -> BlowupData:
    R = x_ring(a.k)
    forms = tuple(a.linear_forms(R))
    return BlowupData(a, R, y_ring(a.n), t_ring(a.k, a.n), forms, tuple(fold_products(a, a.n - 1, R)))


def _prod(polys, ring: PolyRing) -> Polynomial:
    out = ring.one()
    for p in polys:
        out = out * p
    return out


def fold_products(a: Arrangement, fold: int, ring: PolyRing | None = None) -> list[Polynomial]:
    """All products of ``fold`` distinct forms, by lexicographic index set.

    For fold = n-1 the order is instead f_1..f_n, f_i omitting form i.
    """
    if not 1 <= fold <= a.n:
        raise ValueError(f"fold must be between 1 and {a.n}")
    ring = ring or x_ring(a.k)
    ells = a.linear_forms(ring)
    if fold == a.n - 1:
        return [_prod((l for j, l in enumerate(ells) if j != i), ring) for i in range(a.n)]
    return [_prod((ells[i] for i in s), ring) for s in combinations(range(a.n), fold)]


def product_ideal(a: Arrangement) -> IdealHandle:
    """I = <f_1, ..., f_n> in R."""
    R = x_ring(a.k)
    return IdealHandle(R, fold_products(a, a.n - 1, R))


def _sym_gens(a: Arrangement, indices: Sequence[int], T: PolyRing) -> list[Polynomial]:
    ells = a.linear_forms(T)
    ly = [ells[i] * T.var(f"y{i + 1}") for i in indices]
    return [ly[t] - ly[t + 1] for t in range(len(ly) - 1)]


def symmetric_ideal(a: Arrangement) -> IdealHandle:
    """I_1 = <l_i y_i - l_{i+1} y_{i+1}>, the linear-in-y relations."""
    T = t_ring(a.k, a.n)
    return IdealHandle(T, _sym_gens(a, range(a.n), T))


def partial_of_circuit(c: Circuit, ring: PolyRing) -> Polynomial:
    """sum_j c_j * prod_{t != j} y_{i_t}."""
    ys = [ring.var(f"y{i + 1}") for i in c.support]
    out = ring.zero()
    for j, cj in enumerate(c.coeffs):
        out = out + _prod((y for t, y in enumerate(ys) if t != j), ring) * cj
    return out


def ot_ideal(a: Arrangement, ring: PolyRing | None = None) -> IdealHandle:
    """Orlik-Terao ideal: one generator per circuit."""
    ring = ring or y_ring(a.n)
    return IdealHandle(ring, [partial_of_circuit(c, ring) for c in circuits(a)])


def ot_restricted(a: Arrangement, i: int, ring: PolyRing | None = None) -> IdealHandle:
    """Generators from the circuits that contain form i."""
    ring = ring or y_ring(a.n)
    return IdealHandle(ring, [partial_of_circuit(c, ring) for c in circuits(a) if i in c.support])


def poly_determinant(mat: Sequence[Sequence[Polynomial]], ring: PolyRing) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoized on column sets."""
    size = len(mat)
    if size == 0:
        return ring.one()
    memo: dict[tuple[int, ...], Polynomial] = {}

    def rec(r: int, cols: tuple[int, ...]) -> Polynomial:
        if r == size:
            return ring.one()
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = ring.zero()
        for pos, c in enumerate(cols):
            e = mat[r][c]
            if not e:
                continue
            minor = rec(r + 1, cols[:pos] + cols[pos + 1:])
            if minor:
                term = e * minor
                acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(size)))


def sylvester_matrix(a: Arrangement, c: Circuit, ring: PolyRing | None = None) -> list[list[Polynomial]]:
    """Coefficient matrix of the chained relations along a circuit.

    The forms are visited in the order i_2, ..., i_m, i_1.  Row t holds the
    coefficients of l_{a_t} y_{a_t} - l_{a_{t+1}} y_{a_{t+1}} on the
    independent forms a_1..a_{m-1}, with l_{i_1} rewritten through the circuit.
    """
    ring = ring or y_ring(a.n)
    seq = list(c.support[1:]) + [c.support[0]]
    # l_{i_1} = sum_j w_j l_{a_j}
    w = [-x for x in c.coeffs[1:]]
    m1 = len(seq) - 1
    ys = [ring.var(f"y{i + 1}") for i in seq]
    mat = [[ring.zero() for _ in range(m1)] for _ in range(m1)]
    for t in range(m1):
        mat[t][t] = mat[t][t] + ys[t]
        if t + 1 < m1:
            mat[t][t + 1] = mat[t][t + 1] - ys[t + 1]
        else:
            for j in range(m1):
                mat[t][j] = mat[t][j] - ys[m1] * w[j]
    return mat


def sylvester_form(a: Arrangement, c: Circuit, ring: PolyRing | None = None) -> Polynomial:
    ring = ring or y_ring(a.n)
    return poly_determinant(sylvester_matrix(a, c, ring), ring)


# ---------------------------------------------------------------- Rees ideal


def _reduced(ideal: IdealHandle) -> IdealHandle:
    return IdealHandle(ideal.ring, ideal.minimal_generators())


def rees_kernel(a: Arrangement) -> IdealHandle:
    """Eliminate t from <y_i - t f_i>."""
    T = t_ring(a.k, a.n)
    big = PolyRing(("_t",) + T.names)
    t = big.var("_t")
    ells = a.linear_forms(big)
    gens = [big.var(f"y{i + 1}") - t * _prod((l for j, l in enumerate(ells) if j != i), big)
            for i in range(a.n)]
    return eliminate(IdealHandle(big, gens), ["_t"]).extend(T)


def rees_colon(a: Arrangement, i: int = 0) -> IdealHandle:
    """I_1 : l_i y_i."""
    I1 = symmetric_ideal(a)
    T = I1.ring
    return colon(I1, a.linear_forms(T)[i] * T.var(f"y{i + 1}"))


def saturation_order(a: Arrangement) -> tuple[list[int], list[int]]:
    """Greedy basis taken from the end; returns (permutation, non-basis indices).

    The permutation lists the forms with the non-basis ones first, so the
    last k are independent.
    """
    basis: list[int] = []
    for j in reversed(range(a.n)):
        if a.rank_of(basis + [j]) > len(basis):
            basis.append(j)
        if len(basis) == a.rank:
            break
    others = [j for j in range(a.n) if j not in basis]
    return others + sorted(basis), others


def rees_saturation(a: Arrangement) -> IdealHandle:
    """I_1 : (product of the forms outside an independent set of k forms)."""
    I1 = symmetric_ideal(a)
    _, others = saturation_order(a)
    if not others:
        return I1
    ells = a.linear_forms(I1.ring)
    return colon(I1, _prod((ells[j] for j in others), I1.ring))


def rees_deletion(a: Arrangement) -> IdealHandle:
    """Delete the first form repeatedly down to an independent set, then climb
    back with <l_1 y_1 - l_2 y_2, Rees(A')> : l_1^infinity."""
    T = t_ring(a.k, a.n)
    ells = a.linear_forms(T)

    def rec(idx: list[int]) -> IdealHandle:
        if a.rank_of(idx) == len(idx):
            return IdealHandle(T, _sym_gens(a, idx, T))
        first, second = idx[0], idx[1]
        inner = rec(idx[1:])
        rel = ells[first] * T.var(f"y{first + 1}") - ells[second] * T.var(f"y{second + 1}")
        return saturate(IdealHandle(T, [rel] + list(inner.minimal_generators())), ells[first])

    return rec(list(range(a.n)))


@lru_cache(maxsize=512)
def _rees_cached(a: Arrangement, method: str) -> IdealHandle:
    if method == "kernel":
        return _reduced(rees_kernel(a))
    if method == "colon":
        return _reduced(rees_colon(a))
    if method == "saturation":
        return _reduced(rees_saturation(a))
    if method == "deletion":
        return _reduced(rees_deletion(a))
    raise ValueError(f"unknown Rees method {method!r}")


def rees_ideal(a: Arrangement, method: str = "kernel") -> IdealHandle:
    """Defining ideal of the Rees algebra of <f_1..f_n> in T."""
    if method not in REES_METHODS:
        raise ValueError(f"unknown Rees method {method!r}; expected one of {', '.join(REES_METHODS)}")
    return _rees_cached(a, method)


def special_fiber_ideal(a: Arrangement) -> IdealHandle:
    """y-only part of the Rees ideal, as an ideal of S."""
    rees = rees_ideal(a, "kernel")
    fib = eliminate(rees, rees.ring.x_names)
    return IdealHandle(y_ring(a.n), [g.to_ring(y_ring(a.n)) for g in fib.generators])


def fiber_type_ideal(a: Arrangement) -> IdealHandle:
    """I_1 + (Orlik-Terao ideal) in T."""
    T = t_ring(a.k, a.n)
    return symmetric_ideal(a) + ot_ideal(a).extend(T)


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True)
class SyzygyMatrix:
    """n x (n-1) over R: column c has l_c in row c and -l_{c+1} in row c+1."""

    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0


def syzygy_matrix(a: Arrangement) -> SyzygyMatrix:
    R = x_ring(a.k)
    ells = a.linear_forms(R)
    n = a.n
    rows = [[R.zero() for _ in range(n - 1)] for _ in range(n)]
    for c in range(n - 1):
        rows[c][c] = ells[c]
        rows[c + 1][c] = -ells[c + 1]
    return SyzygyMatrix(tuple(tuple(r) for r in rows))


def minors_ideal_of_syzygy(a: Arrangement, p: int) -> IdealHandle:
    """I_p of the syzygy matrix, in R."""
    R = x_ring(a.k)
    phi = syzygy_matrix(a).entries
    n = a.n
    if not 1 <= p <= n - 1:
        raise ValueError(f"minor size must be between 1 and {n - 1}")
    gens = []
    seen = set()
    for rows in combinations(range(n), p):
        for cols in combinations(range(n - 1), p):
            sub = [[phi[r][c] for c in cols] for r in rows]
            d = poly_determinant(sub, R)
            if d:
                key = d.content_normalized()
                if key not in seen:
                    seen.add(key)
                    gens.append(d)
    return IdealHandle(R, gens)


@dataclass(frozen=True)
class JacobianDual:
    """k x (n-1) over S: entry (r, c) is the x_r-coefficient of l_c y_c - l_{c+1} y_{c+1}."""

    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0


def jacobian_dual(a: Arrangement) -> JacobianDual:
    S = y_ring(a.n)
    ys = S.gens()
    rows = []
    for r in range(a.k):
        rows.append(tuple(ys[c] * a.forms[c][r] - ys[c + 1] * a.forms[c + 1][r] for c in range(a.n - 1)))
    return JacobianDual(tuple(rows))


def jacobian_dual_minors(a: Arrangement) -> IdealHandle:
    """Ideal of maximal (k x k) minors of the Jacobian dual; zero if n-1 < k."""
    S = y_ring(a.n)
    B = jacobian_dual(a).entries
    gens = []
    for cols in combinations(range(a.n - 1), a.k):
        d = poly_determinant([[B[r][c] for c in cols] for r in range(a.k)], S)
        if d:
            gens.append(d)
    return IdealHandle(S, gens)


# ---------------------------------------------------------------- decompositions


def primary_component_ideals(a: Arrangement) -> list[tuple[tuple[int, ...], int, IdealHandle]]:
    """(rank-2 flat, Moebius value, I(Y)^mu) in R, where I(Y) is cut by two forms of Y."""
    R = x_ring(a.k)
    ells = a.linear_forms(R)
    out = []
    for F in intersection_lattice(a):
        if F.rank != 2:
            continue
        i, j = F.closure[0], F.closure[1]
        out.append((F.closure, F.mobius, IdealHandle(R, [ells[i], ells[j]]).power(F.mobius)))
    return out


def kplus1_components(a: Arrangement) -> list[tuple[str, IdealHandle]]:
    """Minimal primes of the symmetric algebra when n = k + 1.

    They are mT, the Rees ideal, and for every coloop j the prime generated
    by the forms of the rank k-1 flat spanned by the other forms together
    with y_j.
    """
    if a.n != a.k + 1:
        raise ValueError("needs n = k + 1")
    T = t_ring(a.k, a.n)
    comps = [("mT", IdealHandle(T, T.gens()[:a.k])), ("rees", rees_ideal(a, "kernel"))]
    ells = a.linear_forms(T)
    for j in range(a.n):
        if not is_coloop(a, j):
            continue
        rest = [i for i in range(a.n) if i != j]
        flat = closure(a, rest)
        basis: list[int] = []
        for i in flat:
            if a.rank_of(basis + [i]) > len(basis):
                basis.append(i)
        comps.append((f"coloop {j + 1}", IdealHandle(T, [ells[i] for i in basis] + [T.var(f"y{j + 1}")])))
    return comps


def kplus1_intersection(a: Arrangement) -> IdealHandle:
    return intersect_all([c for _, c in kplus1_components(a)])


# ---------------------------------------------------------------- stretched


def stretched_rees_kernel(b: StretchedArrangement) -> IdealHandle:
    """Eliminate t from <y_e - t * (product of all copies but e)>."""
    T = t_ring(b.k, b.m)
    big = PolyRing(("_t",) + T.names)
    R = x_ring(b.k)
    forms = [R.linear_form(f) for f in b.expanded_forms()]
    t = big.var("_t")
    gens = []
    for e in range(b.m):
        prod = _prod((f for j, f in enumerate(forms) if j != e), R)
        gens.append(big.var(f"y{e + 1}") - t * prod.to_ring(big))
    return _reduced(eliminate(IdealHandle(big, gens), ["_t"]).extend(T))


def stretched_rees_from_support(b: StretchedArrangement) -> IdealHandle:
    """<Rees ideal of the support with y_i -> y_{e_i}/tag_{e_i}, D_A>.

    e_i is the first copy of support form i and tag its factor in the
    factored products.
    """
    fac = stretched_products_factorization(b)
    T = t_ring(b.k, b.m)
    rep: dict[int, tuple[int, Fraction]] = {}
    for e, (i, tag, _) in enumerate(fac.entries):
        rep.setdefault(i, (e, tag))
    support_rees = rees_ideal(b.support, "kernel")
    images = {nm: T.var(nm) for nm in support_rees.ring.x_names}
    for i, (e, tag) in rep.items():
        images[f"y{i + 1}"] = T.var(f"y{e + 1}") * (1 / tag)
    gens = [g.substitute(images, T) for g in support_rees.generators]
    gens += [T.var(f"y{a_ + 1}") - T.var(f"y{b_ + 1}") * c for a_, b_, c in fac.relations]
    return IdealHandle(T, gens)
