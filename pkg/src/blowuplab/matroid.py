"""Central arrangements of linear forms and their matroid data."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactnum import QMatrix, determinant, inverse, kernel_basis, rank, rational
from .hilbert import HilbertSeries, series_from_poincare
from .poly import Polynomial, PolyRing


class ArrangementError(ValueError):
    """An arrangement violates one of its defining conditions."""


def x_ring(k: int) -> PolyRing:
    return PolyRing(tuple(f"x{i}" for i in range(1, k + 1)))


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction | None:
    """Return c with v = c*u, or None.  Both vectors nonzero."""
    p = next(i for i, x in enumerate(u) if x)
    if not v[p]:
        return None
    c = v[p] / u[p]
    return c if all(c * a == b for a, b in zip(u, v)) else None


@dataclass(frozen=True)
class Arrangement:
    """Linear forms l_1..l_n in k variables, stored as coefficient vectors.

    The constructor only rejects malformed data and zero forms.  Use
    :meth:`validate` (or :meth:`from_forms`) for the essential and simple
    conditions; deletions are allowed to violate them.
    """

    k: int
    forms: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        forms = tuple(tuple(rational(c) for c in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if self.k < 1:
            raise ArrangementError("k must be positive")
        for i, f in enumerate(forms):
            if len(f) != self.k:
                raise ArrangementError(f"form at index {i} has {len(f)} coefficients, expected {self.k}")
            if not any(f):
                raise ArrangementError(f"zero form at index {i}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(forms):
                raise ArrangementError("labels do not match forms")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_forms(cls, forms: Sequence[Sequence], k: int | None = None,
                   labels: Sequence[str] | None = None) -> "Arrangement":
        forms = [list(f) for f in forms]
        if k is None:
            if not forms:
                raise ArrangementError("cannot infer k from an empty arrangement")
            k = len(forms[0])
        a = cls(k, tuple(tuple(f) for f in forms), tuple(labels) if labels is not None else None)
        a.validate()
        return a

    @classmethod
    def boolean(cls, k: int) -> "Arrangement":
        return cls.from_forms([[1 if i == j else 0 for j in range(k)] for i in range(k)])

    def validate(self):
        if self.n < self.k:
            raise ArrangementError(f"need at least k={self.k} forms, got {self.n}")
        if self.rank != self.k:
            raise ArrangementError(f"arrangement is not essential: rank {self.rank} < k={self.k}")
        for i, j in combinations(range(self.n), 2):
            if proportional(self.forms[i], self.forms[j]) is not None:
                raise ArrangementError(
                    f"forms at index {i} and {j} are proportional; "
                    "use a stretched input (multiplicities and coefficients) instead")

    @property
    def n(self) -> int:
        return len(self.forms)

    @property
    def matrix(self) -> QMatrix:
        """k x n coefficient matrix (one column per form)."""
        return QMatrix.from_columns(self.forms, rows=self.k)

    @property
    def rank(self) -> int:
        return rank(self.matrix) if self.forms else 0

    def rank_of(self, subset: Sequence[int]) -> int:
        if not subset:
            return 0
        return rank(QMatrix.from_columns([self.forms[i] for i in subset], rows=self.k))

    def is_essential(self) -> bool:
        return self.rank == self.k

    def is_simple(self) -> bool:
        return all(proportional(self.forms[i], self.forms[j]) is None
                   for i, j in combinations(range(self.n), 2))

    def is_generic(self) -> bool:
        """Every k of the forms are linearly independent."""
        if self.n < self.k:
            return False
        cols = self.forms
        return all(determinant(QMatrix.from_columns([cols[i] for i in s], rows=self.k)) != 0
                   for s in combinations(range(self.n), self.k))

    def linear_forms(self, ring: PolyRing | None = None) -> list[Polynomial]:
        ring = ring or x_ring(self.k)
        names = [f"x{i}" for i in range(1, self.k + 1)]
        return [ring.linear_form(f, names) for f in self.forms]

    def subarrangement(self, indices: Sequence[int]) -> "Arrangement":
        labels = None if self.labels is None else tuple(self.labels[i] for i in indices)
        return Arrangement(self.k, tuple(self.forms[i] for i in indices), labels)

    def __str__(self):
        ring = x_ring(self.k)
        return "{" + ", ".join(str(f) for f in self.linear_forms(ring)) + "}"


@dataclass(frozen=True)
class StretchedArrangement:
    """A simple support arrangement whose form i is repeated m_i times.

    Copy j of form i is b[i][j] * l_i with b[i][0] = 1.  ``coordinates`` and
    ``sources`` are filled in by :func:`contraction`: the change of
    coordinates used and, per copy, the index of the original form.
    """

    support: Arrangement
    multiplicities: tuple[int, ...]
    coefficients: tuple[tuple[Fraction, ...], ...]
    coordinates: QMatrix | None = field(default=None, compare=False)
    sources: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        coeffs = tuple(tuple(rational(c) for c in row) for row in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if len(self.multiplicities) != self.support.n or len(coeffs) != self.support.n:
            raise ArrangementError("multiplicities and coefficients must match the support")
        for i, (m, row) in enumerate(zip(self.multiplicities, coeffs)):
            if m < 1 or len(row) != m:
                raise ArrangementError(f"form {i}: multiplicity {m} with {len(row)} coefficients")
            if row[0] != 1:
                raise ArrangementError(f"form {i}: first coefficient must be 1")
            if any(c == 0 for c in row):
                raise ArrangementError(f"form {i}: zero coefficient")

    @classmethod
    def trivial(cls, a: Arrangement) -> "StretchedArrangement":
        return cls(a, (1,) * a.n, tuple((Fraction(1),) for _ in range(a.n)))

    @classmethod
    def from_forms(cls, forms: Sequence[Sequence], k: int | None = None) -> "StretchedArrangement":
        """Group proportional forms; the first occurrence becomes the support form."""
        forms = [tuple(rational(c) for c in f) for f in forms]
        if k is None:
            k = len(forms[0])
        support: list[tuple[Fraction, ...]] = []
        coeffs: list[list[Fraction]] = []
        sources: list[list[int]] = []
        for idx, f in enumerate(forms):
            if not any(f):
                raise ArrangementError(f"zero form at index {idx}")
            for s, u in enumerate(support):
                c = proportional(u, f)
                if c is not None:
                    coeffs[s].append(c)
                    sources[s].append(idx)
                    break
            else:
                support.append(f)
                coeffs.append([Fraction(1)])
                sources.append([idx])
        sup = Arrangement(k, tuple(support))
        return cls(sup, tuple(len(c) for c in coeffs), tuple(tuple(c) for c in coeffs),
                   sources=tuple(tuple(s) for s in sources))

    @property
    def m(self) -> int:
        return sum(self.multiplicities)

    @property
    def k(self) -> int:
        return self.support.k

    def entries(self) -> list[tuple[int, int]]:
        """(support index, copy index) for each form, in order."""
        return [(i, j) for i, mi in enumerate(self.multiplicities) for j in range(mi)]

    def expanded_forms(self) -> list[tuple[Fraction, ...]]:
        return [tuple(self.coefficients[i][j] * c for c in self.support.forms[i])
                for i, j in self.entries()]

    def is_simple(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    def validate(self):
        if self.support.rank != self.k:
            raise ArrangementError("support is not essential")
        if not self.support.is_simple():
            raise ArrangementError("support is not simple")


@dataclass(frozen=True)
class Circuit:
    support: tuple[int, ...]
    coeffs: tuple[Fraction, ...]

    def __len__(self):
        return len(self.support)


@dataclass(frozen=True)
class Flat:
    closure: tuple[int, ...]
    rank: int
    mobius: int


def circuits(a: Arrangement) -> list[Circuit]:
    """Minimal dependent subsets with coefficients normalized to lead with 1."""
    found: list[Circuit] = []
    supports: list[frozenset] = []
    for size in range(2, a.rank + 2):
        for subset in combinations(range(a.n), size):
            s = frozenset(subset)
            if any(c <= s for c in supports):
                continue
            if a.rank_of(subset) == size - 1:
                sub = QMatrix.from_columns([a.forms[i] for i in subset], rows=a.k)
                (vec,) = kernel_basis(sub)
                found.append(Circuit(subset, vec))
                supports.append(s)
    found.sort(key=lambda c: c.support)
    return found


def irreducible_components(a: Arrangement) -> list[tuple[int, ...]]:
    """Connected components of the matroid: forms linked by a common circuit."""
    parent = list(range(a.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in circuits(a):
        r = find(c.support[0])
        for i in c.support[1:]:
            parent[find(i)] = r
    groups: dict[int, list[int]] = {}
    for i in range(a.n):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(g) for g in groups.values())


def is_coloop(a: Arrangement, i: int) -> bool:
    return a.rank_of([j for j in range(a.n) if j != i]) < a.rank


def deletion(a: Arrangement, i: int) -> tuple[Arrangement, bool]:
    """Remove form i; also report whether it was a coloop (rank drops)."""
    if not 0 <= i < a.n:
        raise IndexError(f"no form at index {i}")
    if a.n <= 1:
        raise ArrangementError("cannot delete below size 1")
    rest = [j for j in range(a.n) if j != i]
    return a.subarrangement(rest), is_coloop(a, i)


def contraction(a: Arrangement, i: int) -> StretchedArrangement:
    """Restrict the other forms to the hyperplane of form i.

    Coordinates are changed by the invertible matrix M whose rows are the unit
    vectors e_j (j != p) followed by l_i, where p is the first nonzero
    coordinate of l_i; in the new coordinates l_i is the last variable, which
    is then set to zero.  Proportional restrictions are merged.
    """
    if not 0 <= i < a.n:
        raise IndexError(f"no form at index {i}")
    li = a.forms[i]
    k = a.k
    if k < 2:
        raise ArrangementError("contraction needs k >= 2")
    p = next(j for j, c in enumerate(li) if c)
    rows = [[1 if c == j else 0 for c in range(k)] for j in range(k) if j != p] + [list(li)]
    M = QMatrix.from_rows(rows)
    Minv = inverse(M)
    restricted = []
    origin = []
    for j, f in enumerate(a.forms):
        if j == i:
            continue
        g = tuple(sum((f[r] * Minv[r, c] for r in range(k)), Fraction(0)) for c in range(k))[:-1]
        if not any(g):
            raise ArrangementError(f"form {j} restricts to zero on form {i}")
        restricted.append(g)
        origin.append(j)
    st = StretchedArrangement.from_forms(restricted, k - 1)
    sources = tuple(tuple(origin[t] for t in grp) for grp in st.sources)
    return StretchedArrangement(st.support, st.multiplicities, st.coefficients, coordinates=M, sources=sources)


def closure(a: Arrangement, subset: Sequence[int]) -> tuple[int, ...]:
    r = a.rank_of(list(subset))
    base = list(subset)
    return tuple(j for j in range(a.n) if j in subset or a.rank_of(base + [j]) == r)


def intersection_lattice(a: Arrangement) -> list[Flat]:
    """All flats with ranks and Moebius values, by rank then closure."""
    by_rank: list[set[tuple[int, ...]]] = [{()}]
    for r in range(a.rank):
        nxt = set()
        for F in by_rank[r]:
            for j in range(a.n):
                if j not in F:
                    nxt.add(closure(a, list(F) + [j]))
        by_rank.append(nxt)
    flats: list[tuple[tuple[int, ...], int]] = []
    for r, level in enumerate(by_rank):
        flats.extend((F, r) for F in sorted(level))
    mu: dict[tuple[int, ...], int] = {}
    out = []
    for F, r in flats:
        sF = set(F)
        m = 1 if not F else -sum(mu[G] for G, rg in flats if rg < r and set(G) <= sF)
        mu[F] = m
        out.append(Flat(F, r, m))
    return out


def poincare_polynomial(a: Arrangement) -> list[int]:
    """Coefficients (constant first) of sum_F mu(F) (-t)^rank(F)."""
    coeffs = [0] * (a.rank + 1)
    for F in intersection_lattice(a):
        coeffs[F.rank] += F.mobius * (-1) ** F.rank
    return coeffs


def ot_hilbert_prediction(a: Arrangement) -> HilbertSeries:
    """pi(A, s/(1-s)) as a reduced series over (1-s)^k."""
    return series_from_poincare(poincare_polynomial(a), a.k)


@dataclass(frozen=True)
class ProductFactorization:
    """(m-1)-fold products of a stretched arrangement as G times tagged entries.

    ``entries[e] = (support index, tag, polynomial)`` where the polynomial is
    tag * f_i, f_i the (n-1)-fold product of the support omitting form i.
    ``relations`` lists (a, b, c) meaning y_a - c*y_b, with 0-based entry
    indices.
    """

    G: Polynomial
    entries: tuple[tuple[int, Fraction, Polynomial], ...]
    relations: tuple[tuple[int, int, Fraction], ...]


def stretched_products_factorization(b: StretchedArrangement,
                                     ring: PolyRing | None = None) -> ProductFactorization:
    if b.m < 2:
        raise ArrangementError("need total multiplicity at least 2")
    ring = ring or x_ring(b.k)
    ells = b.support.linear_forms(ring)
    G = ring.one()
    for l, mi in zip(ells, b.multiplicities):
        G = G * l ** (mi - 1)
    total_b = Fraction(1)
    for row in b.coefficients:
        for c in row:
            total_b *= c
    f = []
    for i in range(b.support.n):
        prod = ring.one()
        for j, l in enumerate(ells):
            if j != i:
                prod = prod * l
        f.append(prod)
    entries = []
    relations = []
    pos = 0
    for i, mi in enumerate(b.multiplicities):
        first = pos
        for j in range(mi):
            tag = total_b / b.coefficients[i][j]
            entries.append((i, tag, f[i] * tag))
            if j:
                relations.append((first, pos, b.coefficients[i][j]))
            pos += 1
    return ProductFactorization(G, tuple(entries), tuple(relations))
