import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from orbibraid.arrangements import (
    ArrangementError, Hyperplane, LatticeSizeError, analyse, braid_arrangement, build_dnk,
    count_by_rank, falk_pattern, hyperplane, intersection_lattice, rank, supersolvable,
)
from orbibraid.cyclotomic import CycloField, cyclotomic_poly
from orbibraid.suites import falk_suite


# ---------------------------------------------------------------------------
# oracles

def gain_rank(hs, n, k):
    """Rank of {e_i - xi^r e_j} as a gain graph over Z/2k: n minus the number of balanced
    components (a component is balanced when the residues admit consistent potentials)."""
    adj = {v: [] for v in range(1, n + 1)}
    for h in hs:
        adj[h.i].append((h.j, h.r))
        adj[h.j].append((h.i, -h.r))
    pot: dict = {}
    balanced = 0
    for start in range(1, n + 1):
        if start in pot:
            continue
        pot[start] = 0
        stack, ok = [start], True
        while stack:
            v = stack.pop()
            for w, r in adj[v]:
                # z_v = xi^r z_w  =>  pot[w] = pot[v] - r
                want = (pot[v] - r) % (2 * k)
                if w not in pot:
                    pot[w] = want
                    stack.append(w)
                elif pot[w] != want:
                    ok = False
        balanced += ok
    return n - balanced


def numeric_rank(hs, n, k):
    xi = cmath.exp(1j * math.pi / k)
    rows = []
    for h in hs:
        v = np.zeros(n, dtype=complex)
        v[h.i - 1] = 1
        v[h.j - 1] = -xi ** h.r
        rows.append(v)
    return int(np.linalg.matrix_rank(np.array(rows), tol=1e-9)) if rows else 0


def closure_oracle(hs, A, n, k):
    r = gain_rank(hs, n, k)
    return frozenset(h for h in A if gain_rank(list(hs) + [h], n, k) == r)


def flats_oracle(A, n, k):
    out: dict[int, set] = {}
    for size in range(n + 1):
        for sub in itertools.combinations(A, size):
            if gain_rank(sub, n, k) == size:
                out.setdefault(size, set()).add(closure_oracle(sub, A, n, k))
    return out


def modular_oracle(x, flats, n, k):
    rx = gain_rank(x, n, k)
    return all(gain_rank(x | y, n, k) + gain_rank(x & y, n, k) == rx + gain_rank(y, n, k) for y in flats)


# ---------------------------------------------------------------------------

def test_build_counts():
    assert len(build_dnk(4, 1)) == 12
    assert len(build_dnk(2, 1)) == 2
    assert len(build_dnk(4, 2)) == 24
    for n in range(2, 6):
        for k in range(1, 4):
            A = build_dnk(n, k)
            assert len(A) == len(set(A)) == 2 * k * n * (n - 1) // 2
    with pytest.raises(ArrangementError):
        build_dnk(1, 1)


def test_hyperplane_normalisation():
    assert hyperplane(2, 1, 1, 2) == Hyperplane(1, 2, 3)
    assert hyperplane(1, 2, -1, 1) == Hyperplane(1, 2, 1)
    assert str(Hyperplane(1, 2, 0)) == "z1=z2" and str(Hyperplane(3, 4, 1)) == "z3=xi^1 z4"
    with pytest.raises(ArrangementError):
        rank([Hyperplane(1, 2, 2)], 2, 1)


def test_rank_examples():
    assert rank([], 3, 1) == 0
    assert rank([Hyperplane(1, 2, 0)], 2, 1) == 1
    assert rank([Hyperplane(1, 2, 0), Hyperplane(1, 2, 1)], 2, 1) == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 5), st.integers(1, 4), st.data())
def test_rank_matches_gain_graph_and_numeric_oracles(n, k, data):
    A = build_dnk(n, k)
    hs = data.draw(st.lists(st.sampled_from(A), max_size=6, unique=True))
    r = rank(hs, n, k)
    assert r == gain_rank(hs, n, k)
    assert r == numeric_rank(hs, n, k)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_rank_is_submodular(n, k, data):
    A = build_dnk(n, k)
    X = set(data.draw(st.lists(st.sampled_from(A), max_size=5, unique=True)))
    Y = set(data.draw(st.lists(st.sampled_from(A), max_size=5, unique=True)))
    assert rank(X | Y, n, k) + rank(X & Y, n, k) <= rank(X, n, k) + rank(Y, n, k)
    assert rank(X, n, k) <= min(len(X), n)


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_poly_matches_sympy(m):
    x = sympy.Symbol("x")
    expected = [Fraction(int(c)) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())]
    assert list(cyclotomic_poly(m)) == expected
    assert len(cyclotomic_poly(m)) - 1 == sympy.totient(m)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_xi_is_primitive_root(k):
    F = CycloField(2 * k)
    xi = F.xi_power(1)
    assert xi ** (2 * k) == F.one()
    assert xi ** k == -F.one()
    for r in range(1, 2 * k):
        assert xi ** r != F.one()
    # Phi(xi) = 0 in the field
    phi = F.zero()
    for e, c in enumerate(cyclotomic_poly(2 * k)):
        phi = phi + F.rational(c) * xi ** e
    assert phi.is_zero()


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.data())
def test_field_axioms(k, data):
    F = CycloField(2 * k)
    coeffs = st.lists(st.fractions(max_denominator=5).filter(lambda f: abs(f) <= 5), min_size=F.degree, max_size=F.degree)
    a, b, c = (F.element(data.draw(coeffs)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == F.zero()
    if not a.is_zero():
        assert a * a.inverse() == F.one()
        assert (b / a) * a == b


def test_lattice_d12():
    L = intersection_lattice(build_dnk(2, 1), 2, 1)
    assert count_by_rank(L) == [1, 2, 1]
    assert L.bottom().hyperplanes == frozenset()
    assert {f.hyperplanes for f in L.by_rank(1)} == {frozenset({h}) for h in build_dnk(2, 1)}
    assert L.by_rank(2)[0].hyperplanes == frozenset(build_dnk(2, 1))


@pytest.mark.parametrize("n,k", [(3, 1), (4, 1), (3, 2), (3, 3), (4, 2)])
def test_lattice_matches_closure_oracle(n, k):
    A = build_dnk(n, k)
    L = intersection_lattice(A, n, k)
    want = flats_oracle(A, n, k)
    for r in range(n + 1):
        assert {f.hyperplanes for f in L.by_rank(r)} == want.get(r, set())


def test_d14_counts():
    L = intersection_lattice(build_dnk(4, 1), 4, 1)
    assert count_by_rank(L) == [1, 12, 34, 24, 1]
    assert len(L.by_rank(2)) == 34


def test_lattice_size_guard():
    with pytest.raises(LatticeSizeError):
        intersection_lattice(build_dnk(7, 1), 7, 1)


def test_falk_examples():
    w = falk_pattern(build_dnk(4, 1), 4, 1)
    assert (w.a, w.b, w.c, w.d) == (1, 2, 3, 4)
    assert [str(h) for h in w.hyperplanes] == ["z1=z2", "z1=xi^1 z2", "z3=z4", "z3=xi^1 z4", "z1=z4"]
    assert falk_pattern(build_dnk(3, 2), 3, 2) is None
    assert falk_pattern(build_dnk(3, 1), 3, 1) is None
    assert falk_pattern(braid_arrangement(5), 5, 1) is None
    for n in (4, 5, 6):
        for k in (1, 2, 3):
            w = falk_pattern(build_dnk(n, k), n, k)
            assert w is not None and set(w.hyperplanes) <= set(build_dnk(n, k))


def test_falk_suite():
    res = falk_suite(max_n=6, max_k=3)
    assert res.ok, res.summary()


def _check_chain(chain, A, n, k):
    flats = [f.hyperplanes for f in intersection_lattice(A, n, k).flats]
    assert [f.rank for f in chain] == list(range(n + 1)) or chain[-1].rank == gain_rank(A, n, k)
    for x, y in zip(chain, chain[1:]):
        assert x.hyperplanes < y.hyperplanes
    for x in chain:
        assert modular_oracle(x.hyperplanes, flats, n, k)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_braid_arrangement_supersolvable(n):
    A = braid_arrangement(n)
    ok, chain = supersolvable(A, n, 1)
    assert ok
    _check_chain(chain, A, n, 1)


def test_dn_supersolvable_small_and_not_for_four():
    for n in (2, 3):
        ok, chain = supersolvable(build_dnk(n, 1), n, 1)
        assert ok
        _check_chain(chain, build_dnk(n, 1), n, 1)
    assert supersolvable(build_dnk(4, 1), 4, 1) == (False, None)


def test_d14_has_no_modular_chain_by_oracle():
    n, k = 4, 1
    A = build_dnk(n, k)
    flats = flats_oracle(A, n, k)
    everything = [f for r in flats for f in flats[r]]
    modular = {r: [f for f in flats[r] if modular_oracle(f, everything, n, k)] for r in flats}
    chains = [[frozenset()]]
    for r in range(1, n + 1):
        chains = [c + [y] for c in chains for y in modular[r] if c[-1] < y]
    assert chains == []


def test_analyse_shape():
    out = analyse(4, 1)
    assert out["hyperplane_count"] == 12
    assert out["supersolvable"] is False
    assert out["falk_witness"]["indices"] == [1, 2, 3, 4]
    out = analyse(3, 1)
    assert out["supersolvable"] is True and len(out["chain"]) == 4
    assert analyse(4, 2, with_lattice=False)["supersolvable"] is None
