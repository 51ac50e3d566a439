"""
Seeded property suites shared by the command line and the acceptance tests.

Each suite returns a SuiteResult: per property the number of cases checked, the number
of failures and the first counterexample.  Everything is driven by random.Random(seed),
so a (suite, config, seed) triple always produces the same result.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import arrangements as arr
from . import braids, freeprod, groupoids as gk
from .orbifold import (
    B, P, X, OrbGenerator, OrbWord, Surface, comb, conjugation_table, delta, equal, expand,
    generators, is_identity, kernel_basis, lift, polyvf_series, random_word, section, word,
)


@dataclass
class PropertyStats:
    cases: int = 0
    failures: int = 0
    example: str | None = None

    def record(self, ok: bool, example: Callable[[], str] | None = None):
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.example is None and example is not None:
                self.example = example()


@dataclass
class SuiteResult:
    name: str
    config: dict
    properties: dict[str, PropertyStats] = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def prop(self, name: str) -> PropertyStats:
        return self.properties.setdefault(name, PropertyStats())

    @property
    def ok(self) -> bool:
        return all(p.failures == 0 for p in self.properties.values())

    def merge(self, other: "SuiteResult"):
        for k, p in other.properties.items():
            mine = self.prop(k)
            mine.cases += p.cases
            mine.failures += p.failures
            if mine.example is None and p.example is not None:
                mine.example = f"{other.config}: {p.example}"
        self.seconds += other.seconds

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "config": self.config,
            "ok": self.ok,
            "properties": {k: {"cases": p.cases, "failures": p.failures, "example": p.example}
                           for k, p in sorted(self.properties.items())},
            "details": self.details,
        }

    def summary(self) -> str:
        lines = [f"{self.name} {self.config}: {'PASS' if self.ok else 'FAIL'}"]
        for k, p in sorted(self.properties.items()):
            line = f"  {k}: {p.cases - p.failures}/{p.cases}"
            if p.example:
                line += f"  e.g. {p.example}"
            lines.append(line)
        return "\n".join(lines)


def _timed(fn):
    def run(*args, **kw):
        t = time.perf_counter()
        res = fn(*args, **kw)
        res.seconds = time.perf_counter() - t
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def surface_grid(max_k: int = 2, max_m: int = 2, orders: Iterable[int] = (2, 3, 4)) -> list[Surface]:
    """All surfaces with k <= max_k, m <= max_m and cone orders drawn (as ordered tuples) from orders."""
    orders = tuple(orders)
    out = []
    for k in range(max_k + 1):
        for m in range(max_m + 1):
            for q in itertools.product(orders, repeat=m):
                out.append(Surface(k, q))
    return out


def _split(w: OrbWord, p: int) -> tuple[OrbWord, OrbWord]:
    return OrbWord(w.surface, w.strands, w.letters[:p]), OrbWord(w.surface, w.strands, w.letters[p:])


def _lifted_generator(a: int, b: int, surface: Surface, n: int) -> OrbGenerator:
    """Orbifold generator lifting to the classical A_ab (a <= n < ... ordering of strands)."""
    if b <= n:
        return B(a, b)
    if b <= n + surface.k:
        return P(a, b - n)
    return X(a, b - n - surface.k)


def classical_relators(surface: Surface, n: int) -> list[OrbWord]:
    """Pure braid relators among generators with first index a strand: commutators of
    disjoint or nested pairs, and A_ij A_ik A_jk = A_ik A_jk A_ij = A_jk A_ij A_ik."""
    N = n + surface.k + surface.m
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, N + 1)]
    g = {p: _lifted_generator(*p, surface, n) for p in pairs}
    rels = []
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if b < c or d < a or (a < c and d < b) or (c < a and b < d):
            x, y = g[a, b], g[c, d]
            rels.append(word(surface, n, x, y, (x, -1), (y, -1)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, N + 1):
                x, y, z = g[i, j], g[i, k], g[j, k]
                rels.append(word(surface, n, x, y, z, (x, -1), (z, -1), (y, -1)))
                rels.append(word(surface, n, x, y, z, (y, -1), (x, -1), (z, -1)))
    return rels


def torsion_relator(surface: Surface, n: int, i: int, r: int, sign: int) -> OrbWord:
    return word(surface, n, (X(i, r), sign * surface.cone_orders[r - 1]))


# ---------------------------------------------------------------------------
# orbifold braid suites

@_timed
def esg_suite(surface: Surface, n: int, cases: int = 1000, seed: int = 0, max_len: int = 4,
              max_conj: int = 2, torsion_strands: str = "top", classical: bool = True) -> SuiteResult:
    """Split exact sequence and well-definedness of comb.

    Properties: delta(section(v)) == v; comb(section(v)) has an empty top coordinate;
    inserting u X(i,r)^(+-q_r) u^-1 into w leaves comb(w) unchanged (i = n only with
    torsion_strands="top", any strand with "all"); with ``classical`` also inserting
    conjugated classical pure braid relators.
    """
    rng = random.Random(seed)
    res = SuiteResult("esg", {"k": surface.k, "q": list(surface.cone_orders), "n": n,
                              "cases": cases, "seed": seed, "torsion_strands": torsion_strands})
    rels = classical_relators(surface, n) if classical else []
    for _ in range(cases):
        if n >= 2:
            v = random_word(surface, n - 1, rng.randint(0, max_len), rng)
            res.prop("delta_section").record(delta(section(v)) == v, lambda: str(v))
            res.prop("section_top_empty").record(
                freeprod.is_identity(comb(section(v)).coordinates[0]), lambda: str(v))
        w = random_word(surface, n, rng.randint(0, max_len), rng)
        base = None
        if surface.m:
            u = random_word(surface, n, rng.randint(0, max_conj), rng)
            i = n if torsion_strands == "top" else rng.randint(1, n)
            rel = u * torsion_relator(surface, n, i, rng.randint(1, surface.m), rng.choice((1, -1))) * u.inverse()
            w1, w2 = _split(w, rng.randint(0, len(w)))
            perturbed = w1 * rel * w2
            base = comb(w)
            res.prop(f"torsion_invariance_{torsion_strands}").record(
                comb(perturbed) == base, lambda: f"{w} vs {perturbed}")
        if rels:
            u = random_word(surface, n, rng.randint(0, max_conj), rng)
            rho = rels[rng.randrange(len(rels))]
            w1, w2 = _split(w, rng.randint(0, len(w)))
            perturbed = w1 * u * rho * u.inverse() * w2
            base = comb(w) if base is None else base
            res.prop("classical_invariance").record(comb(perturbed) == base,
                                                    lambda: f"{w} vs {perturbed}")
    return res


@_timed
def torsion_order_suite(max_q: int = 6, max_d: int = 12, n: int = 1, k: int = 0) -> SuiteResult:
    """is_identity(X(i,r)^d) iff q_r | d, exhaustively over q_r <= max_q, |d| <= max_d.

    Each order is tested alone and next to a second cone of order 2, which must not
    interfere."""
    res = SuiteResult("torsion-orders", {"max_q": max_q, "max_d": max_d, "n": n, "k": k})
    surfaces = [Surface(k, (q,)) for q in range(2, max_q + 1)]
    surfaces += [Surface(k, (q, 2)) for q in range(2, max_q + 1)]
    for S in surfaces:
        for i in range(1, n + 1):
            for r in range(1, S.m + 1):
                q = S.cone_orders[r - 1]
                for d in range(-max_d, max_d + 1):
                    w = word(S, n, (X(i, r), d))
                    res.prop("torsion_order").record(is_identity(w) == (d % q == 0),
                                                     lambda: f"{S} X[{i},{r}]^{d}")
    return res


@_timed
def fnf_suite(max_n: int = 6, cases: int = 1000, seed: int = 0, max_len: int = 8) -> SuiteResult:
    """Traces of B_iN (i < N) form a free basis of the strand-N kernel, for N <= max_n."""
    rng = random.Random(seed)
    res = SuiteResult("fnf", {"max_n": max_n, "cases": cases, "seed": seed})
    for N in range(2, max_n + 1):
        gens = {i: braids.pure_generator(i, N, N) for i in range(1, N)}
        traces = {i: braids.strand_trace(g, N) for i, g in gens.items()}
        for i, t in traces.items():
            res.prop("generator_trace").record(t == (i,), lambda: f"B_{i}{N} -> {t}")
        for _ in range(cases):
            letters = [rng.choice((1, -1)) * rng.randint(1, N - 1) for _ in range(rng.randint(0, max_len))]
            w = BraidWordBuilder(N)
            for x in letters:
                w.add(gens[abs(x)], x > 0)
            tr = braids.strand_trace(w.build(), N)
            expected = braids.free_multiply(*[traces[abs(x)] if x > 0 else braids.free_inverse(traces[abs(x)])
                                              for x in letters])
            res.prop("trace_is_free_product").record(tr == expected, lambda: f"N={N} {letters}")
            reduced = braids.free_reduce(letters)
            if reduced:
                res.prop("no_nontrivial_relation").record(tr != (), lambda: f"N={N} {letters}")
    return res


class BraidWordBuilder:
    def __init__(self, strands: int):
        self.strands = strands
        self.letters: list[int] = []

    def add(self, w: braids.BraidWord, positive: bool = True):
        self.letters.extend(w.letters if positive else braids.free_inverse(w.letters))

    def build(self) -> braids.BraidWord:
        return braids.BraidWord(self.strands, tuple(self.letters))


@_timed
def normality_suite(surface: Surface, n: int) -> SuiteResult:
    """Every conjugate g y g^-1 of a kernel basis element is a kernel element and expands
    back to itself; entries with kernel errors are counted as failures."""
    res = SuiteResult("normality", {"k": surface.k, "q": list(surface.cone_orders), "n": n})
    table = conjugation_table(surface, n, verify=True)
    st = res.prop("conjugation_in_kernel")
    st.cases = len(generators(surface, n)) * len(kernel_basis(surface, n))
    st.failures = len(table.violations)
    if table.violations:
        st.example = str(table.violations[0])
    res.details["entries"] = len(table.entries)
    return res


@_timed
def classical_suite(k: int, n: int, cases: int = 1000, seed: int = 0, max_len: int = 5) -> SuiteResult:
    """m = 0: equal(w1, w2) agrees with is_trivial(lift(w1 w2^-1)).

    Half of the pairs are made equal on purpose by inserting conjugated classical
    relators and cancelling pairs, so both answers get exercised."""
    S = Surface(k, ())
    rng = random.Random(seed)
    res = SuiteResult("classical", {"k": k, "n": n, "cases": cases, "seed": seed})
    rels = classical_relators(S, n)
    agree = res.prop("equal_matches_artin")
    for c in range(cases):
        w1 = random_word(S, n, rng.randint(0, max_len), rng)
        if c % 2 and (rels or n == 1):
            w2 = w1
            for _ in range(rng.randint(1, 2)):
                u = random_word(S, n, rng.randint(0, 2), rng)
                ins = u * u.inverse() if not rels else u * rels[rng.randrange(len(rels))] * u.inverse()
                a, b = _split(w2, rng.randint(0, len(w2)))
                w2 = a * ins * b
        else:
            w2 = random_word(S, n, rng.randint(0, max_len), rng)
        mine = equal(w1, w2)
        oracle = braids.is_trivial(lift(w1 * w2.inverse()))
        agree.record(mine == oracle, lambda: f"{w1} ? {w2}: comb={mine} artin={oracle}")
        if oracle:
            res.prop("equal_pairs_seen").record(True)
    return res


@_timed
def polyvf_suite(surface: Surface, n: int, cases: int = 200, seed: int = 0, max_len: int = 5) -> SuiteResult:
    """Coordinate signatures produced by comb match polyvf_series level by level."""
    rng = random.Random(seed)
    res = SuiteResult("polyvf", {"k": surface.k, "q": list(surface.cone_orders), "n": n,
                                 "cases": cases, "seed": seed})
    series = polyvf_series(surface, n)
    for _ in range(cases):
        w = random_word(surface, n, rng.randint(0, max_len), rng)
        cf = comb(w)
        ok = len(cf.coordinates) == len(series)
        for (level, u), sig in zip(cf.levels(), series):
            basis = set(kernel_basis(surface, level))
            used = {g for g, _ in expand(u, surface, level).letters}
            ok &= (u.signature == sig or not u.syllables) and used <= basis
            ok &= sig.cone_orders == surface.cone_orders and sig.free_rank == surface.k + level - 1
        res.prop("series_matches_comb").record(ok, lambda: str(w))
    return res


@_timed
def freeprod_suite(cases: int = 10_000, seed: int = 0, max_len: int = 8) -> SuiteResult:
    """Group axioms and normal-form uniqueness under random relator insertion."""
    rng = random.Random(seed)
    res = SuiteResult("freeprod", {"cases": cases, "seed": seed})
    for _ in range(cases):
        m = rng.randint(0, 3)
        sig = freeprod.ProductSignature(tuple(rng.randint(2, 5) for _ in range(m)), rng.randint(0 if m else 1, 3))
        a, b, c = (freeprod.reduce(freeprod.random_letters(sig, rng.randint(0, max_len), rng), sig)
                   for _ in range(3))
        e = freeprod.identity(sig)
        res.prop("associative").record((a * b) * c == a * (b * c), lambda: f"{a} | {b} | {c}")
        res.prop("identity").record(a * e == a and e * a == a, lambda: str(a))
        inv = freeprod.invert(a)
        res.prop("inverse").record(freeprod.is_identity(a * inv) and freeprod.is_identity(inv * a),
                                   lambda: str(a))
        raw = freeprod.random_letters(sig, rng.randint(0, max_len), rng)
        noisy = list(raw)
        for _ in range(rng.randint(1, 3)):
            pos = rng.randint(0, len(noisy))
            gens = sig.generators()
            kind, idx = gens[rng.randrange(len(gens))]
            q = sig.order(kind, idx)
            ins = [(kind, idx, 1)] * q if q else [(kind, idx, 1), (kind, idx, -1)]
            noisy[pos:pos] = ins
        res.prop("normal_form_unique").record(freeprod.reduce(raw, sig) == freeprod.reduce(noisy, sig),
                                              lambda: f"{raw} vs {noisy}")
    return res


# ---------------------------------------------------------------------------
# groupoids and arrangements

@_timed
def groupoid_suite(instances: int = 50, max_points: int = 8, max_order: int = 4, max_n: int = 3,
                   seed: int = 0) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("groupoid-axioms", {"instances": instances, "max_points": max_points,
                                          "max_order": max_order, "max_n": max_n, "seed": seed})
    free_seen = 0
    for _ in range(instances):
        act = gk.random_action(rng, max_points, max_order)
        G = gk.translation_groupoid(act)
        desc = f"|M|={len(act.points)} |H|={len(act.group)}"
        free = gk.is_free_action(act)
        free_seen += free
        for n in range(1, max_n + 1):
            tag = f"{desc} n={n}"
            for label, rep in (("pb_a_axioms", gk.check_axioms(gk.pb_a(G, n))),
                               ("pb_b_axioms", gk.check_axioms(gk.pb_b(G, n))),
                               ("a_to_b_hom", gk.check_hom(gk.a_to_b(G, n))),
                               ("pb_b_translation_iso", gk.pb_b_translation_isomorphism(act, n, G=G))):
                res.prop(label).record(rep.ok, lambda: f"{tag} {rep.violations[:1]}")
            if n >= 2:
                for label, h in (("forget_a_hom", gk.forget_hom_a(G, n)), ("forget_b_hom", gk.forget_hom_b(G, n))):
                    rep = gk.check_hom(h)
                    res.prop(label).record(rep.ok, lambda: f"{tag} {rep.violations[:1]}")
                if free:
                    ok, missing = gk.is_b_fibration_discrete(gk.forget_hom_b(G, n))
                    res.prop("free_b_fibration").record(ok, lambda: f"{tag} missing {missing}")
    res.details["free_instances"] = free_seen
    return res


@_timed
def falk_suite(max_n: int = 6, max_k: int = 3) -> SuiteResult:
    """falk_pattern(D^k_n) finds a witness exactly when n >= 4."""
    res = SuiteResult("falk", {"max_n": max_n, "max_k": max_k})
    found = {}
    for n in range(2, max_n + 1):
        for k in range(1, max_k + 1):
            w = arr.falk_pattern(arr.build_dnk(n, k), n, k)
            found[f"{n},{k}"] = w.to_json()["text"] if w else None
            res.prop("witness_iff_n_ge_4").record((w is not None) == (n >= 4), lambda: f"n={n} k={k}")
            if w is not None:
                A = set(arr.build_dnk(n, k))
                res.prop("witness_in_arrangement").record(set(w.hyperplanes) <= A, lambda: f"n={n} k={k}")
    w4 = arr.falk_pattern(arr.build_dnk(4, 1), 4, 1)
    res.prop("d14_witness_exact").record(
        w4 is not None and [str(h) for h in w4.hyperplanes]
        == ["z1=z2", "z1=xi^1 z2", "z3=z4", "z3=xi^1 z4", "z1=z4"], lambda: str(w4))
    res.details["witnesses"] = found
    return res


@_timed
def supersolvable_suite(max_braid_n: int = 5, dn: Iterable[int] = (4,)) -> SuiteResult:
    res = SuiteResult("supersolvable", {"max_braid_n": max_braid_n, "dn": list(dn)})
    for n in range(2, max_braid_n + 1):
        ok, chain = arr.supersolvable(arr.braid_arrangement(n), n, 1)
        res.prop("braid_supersolvable").record(ok, lambda: f"braid n={n}")
    for n in dn:
        ok, _ = arr.supersolvable(arr.build_dnk(n, 1), n, 1)
        res.prop("dn_not_supersolvable").record(not ok, lambda: f"D^1_{n}")
    return res


SUITES = ("esg-splitting", "esg-torsion", "torsion-orders", "fnf", "normality", "classical",
          "polyvf", "freeprod", "groupoid-axioms", "falk", "supersolvable")
