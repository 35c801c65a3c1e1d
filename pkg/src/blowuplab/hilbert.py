"""Hilbert series of graded and bigraded quotients via monomial initial ideals."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import IdealHandle
from .poly import MonomialOrder, PolyRing


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _one_minus_s_power(d: int) -> list[int]:
    out = [1]
    for _ in range(d):
        out = _poly_mul(out, [1, -1])
    return out


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(s) / (1 - s)^denom_exponent with numerator(1) != 0.

    The zero module has the empty numerator and exponent 0.
    """

    numerator: tuple[int, ...]
    denom_exponent: int

    @classmethod
    def reduced(cls, numerator: Sequence[int], d: int) -> "HilbertSeries":
        num = list(_trim(numerator))
        if not num:
            return cls((), 0)
        while d > 0 and sum(num) == 0:
            # exact division by (1 - s): partial sums
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = list(_trim(q))
            d -= 1
        return cls(tuple(num), d)

    @property
    def krull_dim(self) -> int:
        return self.denom_exponent if self.numerator else -1

    @property
    def h_vector(self) -> tuple[int, ...]:
        return self.numerator

    @property
    def degree(self) -> int:
        """Degree of the numerator (the reduction number for a CM fiber)."""
        return len(self.numerator) - 1

    def coefficients(self, upto: int) -> list[int]:
        """Dimensions of the graded pieces in degrees 0..upto."""
        from math import comb

        out = []
        d = self.denom_exponent
        for t in range(upto + 1):
            total = 0
            for i, h in enumerate(self.numerator):
                if i > t:
                    break
                if d == 0:
                    total += h if i == t else 0
                else:
                    total += h * comb(t - i + d - 1, d - 1)
            out.append(total)
        return out

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator_exponent": self.denom_exponent}

    def __str__(self):
        if not self.numerator:
            return "0"
        terms = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        num = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            num += f" {sign} {body}"
        if self.denom_exponent == 0:
            return num
        den = "(1 - s)" if self.denom_exponent == 1 else f"(1 - s)^{self.denom_exponent}"
        if len(terms) > 1:
            num = f"({num})"
        return f"{num}/{den}"


def series_from_poincare(poincare: Sequence[int], k: int) -> HilbertSeries:
    """pi(s/(1-s)) for an integer polynomial pi of degree <= k, over (1-s)^k."""
    num = [0] * (k + 1)
    for r, w in enumerate(poincare):
        if not w:
            continue
        if r > k:
            raise ValueError("polynomial degree exceeds the denominator exponent")
        term = _poly_mul([0] * r + [1], _one_minus_s_power(k - r))
        for i, c in enumerate(term):
            num[i] += w * c
    return HilbertSeries.reduced(num, k)


# ---------------------------------------------------------------- monomial recursion

Mono = tuple[int, ...]


def _minimalize(gens: Iterable[Mono]) -> tuple[Mono, ...]:
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out: list[Mono] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _dict_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _deg(mono: Mono, weights: Sequence[tuple[int, ...]], width: int) -> tuple[int, ...]:
    d = [0] * width
    for e, w in zip(mono, weights):
        if e:
            for t in range(width):
                d[t] += e * w[t]
    return tuple(d)


def monomial_numerator(gens: Iterable[Mono], weights: Sequence[tuple[int, ...]]) -> dict:
    """K-polynomial numerator of S/I for a monomial ideal I.

    ``weights[v]`` is the multidegree of variable v; the result maps
    multidegrees to coefficients, so that the series is the numerator over
    prod_v (1 - z^weights[v]).
    """
    width = len(weights[0]) if weights else 1
    zero = (0,) * width
    memo: dict[tuple[Mono, ...], dict] = {}

    def rec(gs: tuple[Mono, ...]) -> dict:
        if gs in memo:
            return memo[gs]
        if not gs:
            res = {zero: 1}
        else:
            counts = [0] * len(gs[0])
            for g in gs:
                for v, e in enumerate(g):
                    if e:
                        counts[v] += 1
            best = max(range(len(counts)), key=lambda v: (counts[v], -v))
            if counts[best] <= 1:
                res = {zero: 1}
                for g in gs:
                    factor = {zero: 1}
                    d = _deg(g, weights, width)
                    factor[d] = factor.get(d, 0) - 1
                    res = _dict_mul(res, {kk: v for kk, v in factor.items() if v})
            else:
                e = min(g[best] for g in gs if g[best])
                p = tuple(e if v == best else 0 for v in range(len(counts)))
                plus = _minimalize([g for g in gs if g[best] < e] + [p])
                quot = _minimalize([tuple(max(0, x - e) if v == best else x for v, x in enumerate(g))
                                    for g in gs])
                res = dict(rec(plus))
                shift = _deg(p, weights, width)
                for kq, vq in rec(quot).items():
                    key = tuple(a + b for a, b in zip(kq, shift))
                    res[key] = res.get(key, 0) + vq
                res = {k: v for k, v in res.items() if v}
        memo[gs] = res
        return res

    return rec(_minimalize(gens))


def _leading_monomials(ideal: IdealHandle) -> list[Mono]:
    if ideal.is_zero():
        return []
    gb = ideal.groebner(MonomialOrder.degrevlex(ideal.ring.nvars))
    return gb.leading_exponents()


def hilbert_series(ideal: IdealHandle, variables: Sequence[str] | None = None) -> HilbertSeries:
    """Series of Q[variables]/I with every variable in degree 1.

    ``variables`` defaults to all variables of the ideal's ring; a proper
    subset requires the generators to live in that subring.
    """
    if variables is not None and tuple(variables) != ideal.ring.names:
        sub = PolyRing(tuple(variables))
        ideal = IdealHandle(sub, [g.to_ring(sub) for g in ideal.generators])
    ring = ideal.ring
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
    num = monomial_numerator(_leading_monomials(ideal), [(1,)] * ring.nvars)
    top = max((k[0] for k in num), default=0)
    coeffs = [0] * (top + 1)
    for (d,), c in num.items():
        coeffs[d] += c
    return HilbertSeries.reduced(coeffs, ring.nvars)


def krull_dim(ideal: IdealHandle, variables: Sequence[str] | None = None) -> int:
    return hilbert_series(ideal, variables).krull_dim


def codim(ideal: IdealHandle) -> int:
    return ideal.ring.nvars - krull_dim(ideal)


def h_vector(ideal: IdealHandle, variables: Sequence[str] | None = None) -> tuple[int, ...]:
    return hilbert_series(ideal, variables).h_vector


def reduction_number(fiber_ideal: IdealHandle) -> int:
    """Degree of the reduced numerator; equals r(I) when the fiber is Cohen-Macaulay."""
    hs = hilbert_series(fiber_ideal)
    if not hs.numerator:
        raise ValueError("unit ideal has no reduction number")
    return hs.degree


@dataclass(frozen=True)
class BigradedSeries:
    """numerator(u, v) / ((1 - u)^u_exponent (1 - v)^v_exponent)."""

    numerator: tuple[tuple[tuple[int, int], int], ...]  # sorted ((a, b), coeff)
    u_exponent: int
    v_exponent: int

    @classmethod
    def build(cls, numerator: dict, u_exp: int, v_exp: int) -> "BigradedSeries":
        return cls(tuple(sorted((k, v) for k, v in numerator.items() if v)), u_exp, v_exp)

    @classmethod
    def closed_form(cls, k: int, n: int, uv_power: int) -> "BigradedSeries":
        """(1 - uv)^uv_power / ((1-u)^k (1-v)^n)."""
        num = {(0, 0): 1}
        for _ in range(uv_power):
            num = _dict_mul(num, {(0, 0): 1, (1, 1): -1})
        return cls.build(num, k, n)

    def as_dict(self) -> dict:
        return dict(self.numerator)

    def cross_equal(self, other: "BigradedSeries") -> bool:
        """Equality of rational functions by cross-multiplying denominators."""
        def factor(a, b):
            out = {(0, 0): 1}
            for _ in range(a):
                out = _dict_mul(out, {(0, 0): 1, (1, 0): -1})
            for _ in range(b):
                out = _dict_mul(out, {(0, 0): 1, (0, 1): -1})
            return out
        left = _dict_mul(self.as_dict(), factor(other.u_exponent, other.v_exponent))
        right = _dict_mul(other.as_dict(), factor(self.u_exponent, self.v_exponent))
        return left == right

    def diagonal(self) -> HilbertSeries:
        """Set u = v = s."""
        top = max((a + b for (a, b), _ in self.numerator), default=0)
        coeffs = [0] * (top + 1)
        for (a, b), c in self.numerator:
            coeffs[a + b] += c
        return HilbertSeries.reduced(coeffs, self.u_exponent + self.v_exponent)

    def to_json(self) -> dict:
        rows = 1 + max((a for (a, _), _ in self.numerator), default=0)
        cols = 1 + max((b for (_, b), _ in self.numerator), default=0)
        mat = [[0] * cols for _ in range(rows)]
        for (a, b), c in self.numerator:
            mat[a][b] = c
        return {"numerator": mat, "u_exponent": self.u_exponent, "v_exponent": self.v_exponent}

    def __str__(self):
        num = ""
        for (a, b), c in self.numerator:
            mono = "*".join(x for x in (
                "" if a == 0 else ("u" if a == 1 else f"u^{a}"),
                "" if b == 0 else ("v" if b == 1 else f"v^{b}")) if x)
            body = mono if mono and abs(c) == 1 else (f"{abs(c)}*{mono}" if mono else str(abs(c)))
            if not num:
                num = ("-" if c < 0 else "") + body
            else:
                num += (" - " if c < 0 else " + ") + body
        num = num or "0"
        return f"({num})/((1 - u)^{self.u_exponent}*(1 - v)^{self.v_exponent})"


def bigraded_hilbert_series(ideal: IdealHandle) -> BigradedSeries:
    """Bigraded series of T/I, x-variables in degree (1,0) and y-variables in (0,1)."""
    ring = ideal.ring
    weights = ring.bigrading
    if any(w == (0, 0) for w in weights):
        raise ValueError("bigraded series needs every variable to be an x or a y variable")
    for g in ideal.generators:
        if not g.is_bihomogeneous():
            raise ValueError(f"generator {g} is not bihomogeneous")
    num = monomial_numerator(_leading_monomials(ideal), list(weights))
    return BigradedSeries.build(num, ring.k, ring.n)
