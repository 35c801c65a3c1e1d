"""Multivariate polynomials over Q in named variables x1..xk, y1..yn.

Every monomial order here is a matrix order: the sort key of an exponent
vector ``e`` is ``W @ e`` for an invertible integer matrix ``W``.  Keys are
therefore additive under multiplication, which the Groebner engine relies on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .exactnum import rational


class RingMismatch(ValueError):
    pass


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over Q on an ordered tuple of variable names.

    Names ``x<i>`` have bidegree (1, 0), names ``y<j>`` have (0, 1) and any
    other (auxiliary) name has (0, 0).
    """

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not _NAME.match(nm):
                raise ValueError(f"bad variable name {nm!r}")

    @classmethod
    def blowup(cls, k: int, n: int) -> "PolyRing":
        """T = Q[x1..xk, y1..yn]."""
        return cls(tuple(f"x{i}" for i in range(1, k + 1)) + tuple(f"y{j}" for j in range(1, n + 1)))

    @classmethod
    def of(cls, *names: str) -> "PolyRing":
        return cls(tuple(names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {nm: i for i, nm in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingMismatch(f"{name} is not a variable of {self}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    @cached_property
    def x_names(self) -> tuple[str, ...]:
        return tuple(nm for nm in self.names if _kind(nm) == "x")

    @cached_property
    def y_names(self) -> tuple[str, ...]:
        return tuple(nm for nm in self.names if _kind(nm) == "y")

    @property
    def k(self) -> int:
        return len(self.x_names)

    @property
    def n(self) -> int:
        return len(self.y_names)

    @cached_property
    def bigrading(self) -> tuple[tuple[int, int], ...]:
        return tuple({"x": (1, 0), "y": (0, 1)}.get(_kind(nm), (0, 0)) for nm in self.names)

    def extend(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(names))

    def drop(self, names: Iterable[str]) -> "PolyRing":
        gone = set(names)
        return PolyRing(tuple(nm for nm in self.names if nm not in gone))

    def subring(self, names: Iterable[str]) -> "PolyRing":
        keep = set(names)
        return PolyRing(tuple(nm for nm in self.names if nm in keep))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = rational(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(nm) for nm in self.names]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise RingMismatch("exponent vector has the wrong length")
        c = rational(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def linear_form(self, coeffs: Sequence, names: Sequence[str] | None = None) -> "Polynomial":
        """sum coeffs[i] * names[i]; names default to the x-variables."""
        names = self.x_names if names is None else names
        if len(coeffs) != len(names):
            raise RingMismatch("coefficient vector does not match variables")
        terms = {}
        for c, nm in zip(coeffs, names):
            c = rational(c)
            if c:
                e = [0] * self.nvars
                e[self.index(nm)] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def default_order(self) -> "MonomialOrder":
        return MonomialOrder.degrevlex(self.nvars)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __str__(self):
        return "Q[" + ",".join(self.names) + "]"


def _kind(name: str) -> str:
    if re.fullmatch(r"x\d+", name):
        return "x"
    if re.fullmatch(r"y\d+", name):
        return "y"
    return "aux"


# ---------------------------------------------------------------- orders

_BASE_KINDS = ("degrevlex", "deglex", "lex")


def _base_matrix(kind: str, n: int) -> tuple[tuple[int, ...], ...]:
    unit = lambda i, s=1: tuple(s if j == i else 0 for j in range(n))
    if kind == "lex":
        return tuple(unit(i) for i in range(n))
    ones = (tuple([1] * n),) if n else ()
    if kind == "deglex":
        return ones + tuple(unit(i) for i in range(n - 1))
    if kind == "degrevlex":
        return ones + tuple(unit(i, -1) for i in range(n - 1, 0, -1))
    raise ValueError(f"unknown order kind {kind!r}")


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``nvars`` variables (by position).

    kind is one of degrevlex, deglex, lex, block, permuted or weighted.  For
    ``block`` the variables in ``front`` are eliminated first (ordered by
    ``inner[0]``) and the rest are ordered by ``inner[1]``.  For ``permuted``
    position ``i`` of the base order ``inner[0]`` is played by variable
    ``perm[i]``.  A ``weighted`` order compares ``weights`` first and breaks
    ties with ``inner[0]``.
    """

    kind: str
    nvars: int
    front: tuple[int, ...] = ()
    perm: tuple[int, ...] = ()
    inner: tuple["MonomialOrder", ...] = ()
    weights: tuple[int, ...] = ()
    matrix: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", self._build_matrix())

    @classmethod
    def degrevlex(cls, n: int) -> "MonomialOrder":
        return cls("degrevlex", n)

    @classmethod
    def deglex(cls, n: int) -> "MonomialOrder":
        return cls("deglex", n)

    @classmethod
    def lex(cls, n: int) -> "MonomialOrder":
        return cls("lex", n)

    @classmethod
    def base(cls, kind: str, n: int) -> "MonomialOrder":
        if kind not in _BASE_KINDS:
            raise ValueError(f"unknown order kind {kind!r}")
        return cls(kind, n)

    @classmethod
    def block(cls, n: int, front: Iterable[int], front_kind: str = "degrevlex",
              back_kind: str = "degrevlex") -> "MonomialOrder":
        front = tuple(sorted(set(front)))
        if any(not 0 <= i < n for i in front):
            raise ValueError("front variable out of range")
        nb = n - len(front)
        return cls("block", n, front=front,
                   inner=(cls.base(front_kind, len(front)), cls.base(back_kind, nb)))

    @classmethod
    def permuted(cls, perm: Sequence[int], base_kind: str = "degrevlex") -> "MonomialOrder":
        perm = tuple(perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation")
        return cls("permuted", len(perm), perm=perm, inner=(cls.base(base_kind, len(perm)),))

    @classmethod
    def weighted(cls, weights: Sequence[int], tie_break: "MonomialOrder") -> "MonomialOrder":
        weights = tuple(int(w) for w in weights)
        if len(weights) != tie_break.nvars or any(w <= 0 for w in weights):
            raise ValueError("weights must be positive, one per variable")
        return cls("weighted", len(weights), weights=weights, inner=(tie_break,))

    def _build_matrix(self):
        n = self.nvars
        if self.kind in _BASE_KINDS:
            return _base_matrix(self.kind, n)
        if self.kind == "block":
            fr = self.front
            back = tuple(i for i in range(n) if i not in set(fr))
            rows = []
            for sub, idx in ((self.inner[0], fr), (self.inner[1], back)):
                for r in sub.matrix:
                    full = [0] * n
                    for j, w in zip(idx, r):
                        full[j] = w
                    rows.append(tuple(full))
            return tuple(rows)
        if self.kind == "permuted":
            rows = []
            for r in self.inner[0].matrix:
                full = [0] * n
                for i, w in enumerate(r):
                    full[self.perm[i]] = w
                rows.append(tuple(full))
            return tuple(rows)
        if self.kind == "weighted":
            return (self.weights,) + self.inner[0].matrix
        raise ValueError(f"unknown order kind {self.kind!r}")

    def key(self, exps: Sequence[int]) -> tuple[int, ...]:
        """Sort key: larger key means larger monomial."""
        return tuple(sum(w * e for w, e in zip(row, exps) if w) for row in self.matrix)

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def describe(self) -> str:
        if self.kind in _BASE_KINDS:
            return self.kind
        if self.kind == "block":
            return f"block({','.join(map(str, self.front))};{self.inner[0].describe()};{self.inner[1].describe()})"
        if self.kind == "weighted":
            return f"weight({','.join(map(str, self.weights))};{self.inner[0].describe()})"
        return f"perm({','.join(map(str, self.perm))};{self.inner[0].describe()})"


def parse_order(text: str, ring: PolyRing) -> MonomialOrder:
    """Parse ``degrevlex``, ``deglex``, ``lex`` or ``perm:<names or 1-based indices>[:base]``."""
    text = text.strip()
    if text in _BASE_KINDS:
        return MonomialOrder.base(text, ring.nvars)
    if text.startswith("perm:"):
        parts = text[5:].split(":")
        base = parts[1] if len(parts) > 1 else "degrevlex"
        items = [p.strip() for p in parts[0].split(",") if p.strip()]
        perm = []
        for it in items:
            perm.append(int(it) - 1 if it.isdigit() else ring.index(it))
        return MonomialOrder.permuted(perm, base)
    raise ValueError(f"unknown monomial order {text!r}")


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable polynomial: a ring plus a map exponent-tuple -> nonzero Fraction."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], Fraction]):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- basic access
    @property
    def terms_dict(self) -> Mapping[tuple[int, ...], Fraction]:
        return self._terms

    def terms(self, order: MonomialOrder | None = None) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms sorted strictly decreasing in ``order`` (ring default if omitted)."""
        order = order or self.ring.default_order()
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.default_order()
        return max(self._terms.items(), key=lambda t: order.key(t[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def variables(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(self.ring.names[i] for i, x in enumerate(e) if x)
        return used

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def bidegree(self) -> tuple[int, int] | None:
        """(x-degree, y-degree) if bihomogeneous, else None.  Zero gives None."""
        grading = self.ring.bigrading
        degs = {tuple(sum(g[a] * x for g, x in zip(grading, e)) for a in (0, 1)) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def is_bihomogeneous(self) -> bool:
        return self.bidegree() is not None

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        weights = weights or [1] * self.ring.nvars
        return len({sum(w * x for w, x in zip(weights, e)) for e in self._terms}) <= 1

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = rational(c)
        return Polynomial(self.ring, {e: c * v for e, v in self._terms.items()})

    def __truediv__(self, c):
        return self.scale(1 / rational(c))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        return self / self.leading_term(order)[1]

    def content_normalized(self) -> "Polynomial":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        from math import gcd, lcm
        den = lcm(*(c.denominator for c in self._terms.values()))
        ints = [int(c * den) for c in self._terms.values()]
        g = gcd(*ints)
        lead = self.leading_term()[1]
        s = Fraction(den, g) * (1 if lead > 0 else -1)
        return self.scale(s)

    # -- structure
    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-express in another ring, matching variables by name."""
        if ring == self.ring:
            return self
        pos = []
        for i, nm in enumerate(self.ring.names):
            pos.append(ring._index.get(nm))
        out = {}
        for e, c in self._terms.items():
            new = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = pos[i]
                    if j is None:
                        raise RingMismatch(f"{self.ring.names[i]} does not exist in {ring}")
                    new[j] = x
            out[tuple(new)] = c
        return Polynomial(ring, out)

    def substitute(self, images: Mapping[str, "Polynomial"], ring: PolyRing | None = None) -> "Polynomial":
        """Replace the named variables by polynomials; other variables are kept.

        All images must live in ``ring`` (defaults to the ring of the first image).
        """
        if ring is None:
            ring = next(iter(images.values())).ring if images else self.ring
        for nm, img in images.items():
            self.ring.index(nm)
            if img.ring != ring:
                raise RingMismatch(f"image of {nm} lives in {img.ring}, expected {ring}")
        slots = []
        for i, nm in enumerate(self.ring.names):
            if nm in images:
                slots.append(images[nm])
            else:
                slots.append(ring.var(nm))
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = slots[i] ** k
            return powers[key]

        acc = ring.zero()
        for e, c in self._terms.items():
            t = ring.const(c)
            for i, x in enumerate(e):
                if x:
                    t = t * power(i, x)
            acc = acc + t
        return acc

    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.ring, out)

    def divides_exactly(self, other: "Polynomial") -> "Polynomial | None":
        """Return q with other == q * self, or None if self does not divide other."""
        q, r = divmod_single(other, self)
        return q if r.is_zero() else None

    # -- display
    def to_str(self, order: MonomialOrder | None = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.terms(order)):
            mono = "*".join(
                nm if x == 1 else f"{nm}^{x}" for nm, x in zip(self.ring.names, e) if x
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if idx == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def divmod_single(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None):
    """Multivariate division of f by one polynomial g: f = q*g + r."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    order = order or f.ring.default_order()
    g_lead, g_lc = g.leading_term(order)
    q: dict = {}
    r: dict = {}
    p = dict(f.terms_dict)
    ring = f.ring
    while p:
        e, c = max(p.items(), key=lambda t: order.key(t[0]))
        if all(a >= b for a, b in zip(e, g_lead)):
            m = tuple(a - b for a, b in zip(e, g_lead))
            coef = c / g_lc
            q[m] = q.get(m, 0) + coef
            for ge, gc in g.terms_dict.items():
                t = tuple(a + b for a, b in zip(ge, m))
                v = p.get(t, 0) - coef * gc
                if v:
                    p[t] = v
                else:
                    p.pop(t, None)
        else:
            r[e] = c
            del p[e]
    return Polynomial(ring, q), Polynomial(ring, r)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def scale(p: Polynomial, c) -> Polynomial:
    return p.scale(c)


def substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute y_j <- images[j] for the y-variables of p's ring, in order.

    Any other variable of p must also exist in the ring of the images.
    """
    ys = p.ring.y_names
    if len(images) != len(ys):
        raise RingMismatch(f"need {len(ys)} images, got {len(images)}")
    return p.substitute(dict(zip(ys, images)), ring=images[0].ring if images else p.ring)


def product(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    acc = ring.one()
    for p in polys:
        acc = acc * p
    return acc


def bidegree(p: Polynomial) -> tuple[int, int] | None:
    return p.bidegree()


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|([*·])|([+-])|(\()|(\)))")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse sums of products of numbers, variables and powers.

    Accepts the canonical form written by :meth:`Polynomial.to_str`
    (``*`` or ``·`` as product sign), parentheses and whitespace.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        num, name, caret, times, sign, lp, rp = m.groups()
        if num:
            tokens.append(("num", num))
        elif name:
            tokens.append(("name", name))
        elif caret:
            tokens.append(("^", caret))
        elif times:
            tokens.append(("*", times))
        elif sign:
            tokens.append(("sign", sign))
        elif lp:
            tokens.append(("(", lp))
        elif rp:
            tokens.append((")", rp))
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        kind, val = peek()
        neg = False
        if kind == "sign":
            take()
            neg = val == "-"
        acc = term()
        if neg:
            acc = -acc
        while peek()[0] == "sign":
            _, s = take()
            t = term()
            acc = acc + t if s == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while True:
            kind = peek()[0]
            if kind == "*":
                take()
                acc = acc * factor()
            elif kind in ("num", "name", "("):
                acc = acc * factor()
            else:
                return acc

    def factor():
        kind, val = peek()
        if kind == "num":
            take()
            base = ring.const(Fraction(val))
        elif kind == "name":
            take()
            base = ring.var(val)
        elif kind == "(":
            take()
            base = expr()
            if peek()[0] != ")":
                raise ValueError("missing ')'")
            take()
        else:
            raise ValueError(f"unexpected token {val!r}")
        if peek()[0] == "^":
            take()
            k, v = take()
            if k != "num" or "/" in v:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(v)
        return base

    if not tokens:
        raise ValueError("empty polynomial")
    result = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input near token {tokens[i][1]!r}")
    return result
