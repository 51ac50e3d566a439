"""
The D^k_n arrangements {z_i = xi^r z_j} in C^n, xi a primitive 2k-th root of unity.

A hyperplane (i, j, r) with i < j means z_i = xi^r z_j; its normal is e_i - xi^r e_j.
Residues are taken in 0..2k-1 (the range 1..2k names the same set).  Ranks are exact,
computed over Q(xi) with ``cyclotomic``.  The lattice code is plain closure-by-rank,
meant for n <= 6.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclotomic import CycloField, CycloNumber

MAX_LATTICE_N = 6
MAX_FLATS = 200_000


class ArrangementError(ValueError):
    pass


class LatticeSizeError(ArrangementError):
    """The exhaustive lattice would be too large."""


@dataclass(frozen=True, order=True)
class Hyperplane:
    i: int
    j: int
    r: int

    def check(self, n: int, k: int) -> None:
        if not (1 <= self.i < self.j <= n) or not (0 <= self.r < 2 * k):
            raise ArrangementError(f"invalid hyperplane {self} for n={n}, k={k}")

    def __str__(self):
        if self.r == 0:
            return f"z{self.i}=z{self.j}"
        return f"z{self.i}=xi^{self.r} z{self.j}"

    def to_json(self) -> list[int]:
        return [self.i, self.j, self.r]


def hyperplane(a: int, b: int, r: int, k: int) -> Hyperplane:
    """z_a = xi^r z_b with a != b in either order, normalised to i < j."""
    if a == b:
        raise ArrangementError("a hyperplane needs two distinct coordinates")
    if a < b:
        return Hyperplane(a, b, r % (2 * k))
    return Hyperplane(b, a, (-r) % (2 * k))


def build_dnk(n: int, k: int) -> list[Hyperplane]:
    if n < 2 or k < 1:
        raise ArrangementError("need n >= 2 and k >= 1")
    return [Hyperplane(i, j, r) for i in range(1, n + 1) for j in range(i + 1, n + 1)
            for r in range(2 * k)]


def braid_arrangement(n: int) -> list[Hyperplane]:
    """z_i = z_j only; the control case."""
    if n < 2:
        raise ArrangementError("need n >= 2")
    return [Hyperplane(i, j, 0) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


# ---------------------------------------------------------------------------
# exact linear algebra

def normal(h: Hyperplane, n: int, F: CycloField) -> list[CycloNumber]:
    v = [F.zero()] * n
    v[h.i - 1] = F.one()
    v[h.j - 1] = -F.xi_power(h.r)
    return v


class Span:
    """Row echelon basis of a subspace of Q(xi)^n, pivots normalised to 1."""

    def __init__(self, n: int, F: CycloField):
        self.n, self.F = n, F
        self.rows: list[tuple[int, list[CycloNumber]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[CycloNumber]) -> list[CycloNumber]:
        v = list(v)
        for p, row in self.rows:
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence[CycloNumber]) -> bool:
        """Add v; True iff it was independent."""
        v = self.reduce(v)
        for p, c in enumerate(v):
            if c:
                inv = c.inverse()
                row = [a * inv for a in v]
                self.rows.append((p, row))
                return True
        return False

    def contains(self, v: Sequence[CycloNumber]) -> bool:
        return not any(self.reduce(v))

    def copy(self) -> "Span":
        s = Span(self.n, self.F)
        s.rows = list(self.rows)
        return s


def rank(hs: Iterable[Hyperplane], n: int, k: int) -> int:
    F = CycloField(2 * k)
    s = Span(n, F)
    for h in hs:
        h.check(n, k)
        s.add(normal(h, n, F))
        if s.rank == n:
            break
    return s.rank


# ---------------------------------------------------------------------------
# intersection lattice

@dataclass(frozen=True)
class Flat:
    hyperplanes: frozenset
    rank: int

    def __le__(self, other: "Flat") -> bool:
        # reverse inclusion of intersections = inclusion of hyperplane sets
        return self.hyperplanes <= other.hyperplanes

    def to_json(self) -> dict:
        return {"rank": self.rank, "hyperplanes": [h.to_json() for h in sorted(self.hyperplanes)]}


@dataclass
class Lattice:
    """Flats sorted by rank.  Joins use precomputed up-sets: the join of x and y is the
    lowest-ranked flat above both, which is unique in a lattice."""
    arrangement: tuple[Hyperplane, ...]
    n: int
    k: int
    flats: list[Flat]
    _by_set: dict = field(default_factory=dict, repr=False)
    _index: dict = field(default_factory=dict, repr=False)
    _up: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.flats = sorted(self.flats, key=lambda f: (f.rank, sorted(f.hyperplanes)))
        self._by_set = {f.hyperplanes: f for f in self.flats}
        self._index = {f.hyperplanes: i for i, f in enumerate(self.flats)}
        bit = {h: 1 << i for i, h in enumerate(self.arrangement)}
        masks = [sum(bit[h] for h in f.hyperplanes) for f in self.flats]
        self._up = []
        for m in masks:
            up = 0
            for i, m2 in enumerate(masks):
                if m & m2 == m:
                    up |= 1 << i
            self._up.append(up)

    def by_rank(self, r: int) -> list[Flat]:
        return [f for f in self.flats if f.rank == r]

    @property
    def top_rank(self) -> int:
        return self.flats[-1].rank

    def bottom(self) -> Flat:
        return self._by_set[frozenset()]

    def closure(self, hs: Iterable[Hyperplane]) -> Flat:
        hs = frozenset(hs)
        if hs in self._by_set:
            return self._by_set[hs]
        F = CycloField(2 * self.k)
        s = Span(self.n, F)
        for h in sorted(hs):
            s.add(normal(h, self.n, F))
        closed = frozenset(h for h in self.arrangement if s.contains(normal(h, self.n, F)))
        if closed not in self._by_set:
            raise ArrangementError("closure is not a flat of this lattice (rank truncated?)")
        return self._by_set[closed]

    def join(self, x: Flat, y: Flat) -> Flat:
        common = self._up[self._index[x.hyperplanes]] & self._up[self._index[y.hyperplanes]]
        if not common:
            raise ArrangementError("no common upper bound (rank truncated?)")
        return self.flats[(common & -common).bit_length() - 1]

    def meet(self, x: Flat, y: Flat) -> Flat:
        # intersections of closed sets are closed
        return self._by_set[x.hyperplanes & y.hyperplanes]

    def is_modular(self, x: Flat) -> bool:
        for y in self.flats:
            if x.rank + y.rank != self.join(x, y).rank + self.meet(x, y).rank:
                return False
        return True


def intersection_lattice(A: Sequence[Hyperplane], n: int, k: int, max_rank: int | None = None) -> Lattice:
    """All flats (closed hyperplane subsets) up to ``max_rank``, built rank by rank."""
    if n > MAX_LATTICE_N:
        raise LatticeSizeError(f"exhaustive lattice only for n <= {MAX_LATTICE_N}")
    A = tuple(sorted(set(A)))
    for h in A:
        h.check(n, k)
    F = CycloField(2 * k)
    normals = {h: normal(h, n, F) for h in A}
    top = n if max_rank is None else min(max_rank, n)
    bottom = Flat(frozenset(), 0)
    flats = [bottom]
    level = {frozenset(): Span(n, F)}
    for r in range(1, top + 1):
        nxt: dict[frozenset, Span] = {}
        for hs, span in level.items():
            done: set = set()
            for h in A:
                if h in hs or h in done:
                    continue
                s = span.copy()
                s.add(normals[h])
                closed = frozenset(g for g in A if g in hs or s.contains(normals[g]))
                done |= closed
                if closed not in nxt:
                    nxt[closed] = s
        if not nxt:
            break
        flats.extend(Flat(hs, r) for hs in sorted(nxt, key=lambda c: sorted(c)))
        if len(flats) > MAX_FLATS:
            raise LatticeSizeError(f"more than {MAX_FLATS} flats")
        level = nxt
    return Lattice(A, n, k, flats)


def count_by_rank(L: Lattice) -> list[int]:
    return [len(L.by_rank(r)) for r in range(L.top_rank + 1)]


# ---------------------------------------------------------------------------
# Falk's five hyperplanes and supersolvability

@dataclass(frozen=True)
class FalkWitness:
    a: int
    b: int
    c: int
    d: int
    r: tuple[int, int]
    s: tuple[int, int]
    t: int
    hyperplanes: tuple[Hyperplane, ...]

    def to_json(self) -> dict:
        return {"indices": [self.a, self.b, self.c, self.d], "r": list(self.r), "s": list(self.s),
                "t": self.t, "hyperplanes": [h.to_json() for h in self.hyperplanes],
                "text": [str(h) for h in self.hyperplanes]}


def falk_pattern(A: Iterable[Hyperplane], n: int, k: int) -> FalkWitness | None:
    """First (a<b, c<d distinct; r1<r2; s1<s2; t) in lexicographic order with
    z_a=xi^r1 z_b, z_a=xi^r2 z_b, z_c=xi^s1 z_d, z_c=xi^s2 z_d, z_a=xi^t z_d all in A."""
    A = set(A)
    for h in A:
        h.check(n, k)
    residues = range(2 * k)
    res_of: dict[tuple[int, int], list[int]] = {}
    for h in A:
        res_of.setdefault((h.i, h.j), []).append(h.r)
    pairs = sorted(p for p, rs in res_of.items() if len(rs) >= 2)
    for a, b in pairs:
        for c, d in pairs:
            if len({a, b, c, d}) < 4:
                continue
            for t in residues:
                last = hyperplane(a, d, t, k)
                if last not in A:
                    continue
                r = tuple(sorted(res_of[a, b])[:2])
                s = tuple(sorted(res_of[c, d])[:2])
                hs = (Hyperplane(a, b, r[0]), Hyperplane(a, b, r[1]),
                      Hyperplane(c, d, s[0]), Hyperplane(c, d, s[1]), last)
                return FalkWitness(a, b, c, d, r, s, t, hs)
    return None


def supersolvable(A: Sequence[Hyperplane], n: int, k: int,
                  lattice: Lattice | None = None) -> tuple[bool, list[Flat] | None]:
    """True plus a maximal chain of modular flats (bottom to top), or (False, None)."""
    L = intersection_lattice(A, n, k) if lattice is None else lattice
    top_rank = L.top_rank
    memo: dict[frozenset, bool] = {}

    def modular(x: Flat) -> bool:
        if x.hyperplanes not in memo:
            memo[x.hyperplanes] = L.is_modular(x)
        return memo[x.hyperplanes]

    levels = [L.by_rank(r) for r in range(top_rank + 1)]
    dead: set = set()

    def extend(chain: list[Flat]) -> list[Flat] | None:
        x = chain[-1]
        if x.rank == top_rank:
            return chain
        for y in levels[x.rank + 1]:
            if y.hyperplanes in dead or not (x <= y) or not modular(y):
                continue
            found = extend(chain + [y])
            if found:
                return found
            dead.add(y.hyperplanes)
        return None

    chain = extend([L.bottom()])
    return (True, chain) if chain else (False, None)


def analyse(n: int, k: int, with_lattice: bool = True) -> dict:
    """Everything the command line reports for D^k_n."""
    A = build_dnk(n, k)
    w = falk_pattern(A, n, k)
    out: dict = {"n": n, "k": k, "hyperplane_count": len(A),
                 "falk_witness": w.to_json() if w else None}
    if with_lattice:
        ok, chain = supersolvable(A, n, k)
        out["supersolvable"] = ok
        out["chain"] = [f.to_json() for f in chain] if chain else None
    else:
        out["supersolvable"] = None
        out["chain"] = None
    return out
