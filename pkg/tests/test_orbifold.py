import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from orbibraid import braids, freeprod
from orbibraid.braids import NotInKernelError
from orbibraid.freeprod import FREE, TORSION, WordParseError
from orbibraid.orbifold import (
    B, P, X, OrbWord, OrbWordError, Surface, comb, conjugation_table, delta, equal, expand,
    generators, is_identity, kernel_basis, level_signature, lift, parse_orbword, parse_surface,
    polyvf_series, random_word, recombine, section, stretch, stretch_expansion, word,
)
from orbibraid.suites import classical_relators, esg_suite


S0 = Surface(0, ())
Q2 = Surface(0, (2,))


def test_generator_counts():
    assert set(generators(S0, 3)) == {B(1, 2), B(1, 3), B(2, 3)}
    assert len(generators(Surface(1, (3,)), 2)) == 5
    assert set(generators(Surface(2, (2, 3)), 1)) == {P(1, 1), P(1, 2), X(1, 1), X(1, 2)}
    for k in range(3):
        for m in range(3):
            for n in range(1, 5):
                gens = generators(Surface(k, (2,) * m), n)
                assert len(gens) == len(set(gens)) == n * (n - 1) // 2 + n * k + n * m


def test_lift_examples():
    assert lift(word(Q2, 1, X(1, 1))).letters == (1, 1)
    assert lift(word(S0, 2, B(1, 2))).letters == (1, 1)
    assert lift(word(Surface(1, ()), 2, P(2, 1))).letters == (2, 2)
    rng = random.Random(0)
    S = Surface(2, (3, 2))
    for _ in range(50):
        w = random_word(S, 3, rng.randint(0, 6), rng)
        assert braids.is_pure(lift(w))
        assert lift(w).strands == 3 + 2 + 2


def test_delta_and_section():
    n = 3
    S = Surface(1, (2,))
    assert delta(word(S, n, B(1, n), X(n, 1))).letters == ()
    v = delta(word(S, n, X(1, 1)))
    assert v == word(S, 2, X(1, 1))
    assert section(OrbWord(S, 2)) == OrbWord(S, 3)
    assert section(word(S, 2, B(1, 2))) == word(S, 3, B(1, 2))
    assert section(word(S, 2, X(1, 1), (P(1, 1), -1))).letters == word(S, 3, X(1, 1), (P(1, 1), -1)).letters
    with pytest.raises(OrbWordError):
        delta(word(S, 1, X(1, 1)))
    rng = random.Random(1)
    for _ in range(100):
        v = random_word(S, 2, rng.randint(0, 6), rng)
        assert delta(section(v)) == v
        a, b = random_word(S, 3, 3, rng), random_word(S, 3, 3, rng)
        assert delta(a * b) == delta(a) * delta(b)


def test_stretch_examples():
    S = Surface(1, (3,))
    n = 3
    for i in range(1, n):
        u = stretch(word(S, n, B(i, n)))
        assert u.syllables == (freeprod.Syllable(FREE, S.k + i, 1),)
    assert freeprod.is_identity(stretch(word(S, n, (X(n, 1), 3))))
    conj = word(S, n, B(1, 2), X(n, 1), (B(1, 2), -1))
    u = stretch(conj)
    assert len(u.syllables) >= 1
    assert is_identity(conj * expand(u, S, n).inverse())
    with pytest.raises(NotInKernelError):
        stretch(word(S, n, B(1, 2)))


def test_stretch_methods_agree():
    rng = random.Random(2)
    for S in (Surface(1, (2,)), Surface(0, (3, 2)), Surface(2, ()), Surface(1, (4,))):
        for n in (2, 3):
            for _ in range(60):
                w = random_word(S, n, rng.randint(0, 5), rng)
                top = w * section(delta(w)).inverse()
                assert stretch(top) == stretch(top, method="lift") == stretch(top, verify=True)


def test_stretch_expansion_is_equal_in_lifted_group():
    rng = random.Random(3)
    S = Surface(1, (2,))
    for _ in range(50):
        w = random_word(S, 3, rng.randint(0, 5), rng)
        top = w * section(delta(w)).inverse()
        assert braids.is_trivial(lift(top * stretch_expansion(top).inverse()))


def test_comb_examples():
    S = Surface(0, (2,))
    assert comb(OrbWord(S, 3)).is_identity()
    cf = comb(word(S, 2, B(1, 2)))
    assert str(cf) == "u2 = B[1,2]\nu1 = 1"
    cf = comb(word(S, 2, X(1, 1)))
    assert freeprod.is_identity(cf.coordinates[0])
    assert cf.coordinates[1].syllables == (freeprod.Syllable(TORSION, 1, 1),)


def test_identity_and_equal_examples():
    for q in (2, 3, 4):
        S = Surface(1, (q,))
        for n in (1, 2, 3):
            for i in range(1, n + 1):
                assert is_identity(word(S, n, (X(i, 1), q)))
                for d in range(1, q):
                    assert not is_identity(word(S, n, (X(i, 1), d)))
        assert equal(word(S, 2, X(1, 1)), word(S, 2, (X(1, 1), 1 + q)))
    S = Surface(0, (2,))
    b = word(S, 2, B(1, 2))
    assert is_identity(b * b * b.inverse() * b.inverse())
    assert equal(b, b)
    assert not equal(b, OrbWord(S, 2))
    with pytest.raises(OrbWordError):
        equal(b, word(S, 3, B(1, 2)))


def test_recombine_reproduces_word():
    rng = random.Random(4)
    for S in (Surface(1, (2,)), Surface(0, (3,)), Surface(2, ()), Surface(1, ())):
        for n in (1, 2, 3):
            for _ in range(40):
                w = random_word(S, n, rng.randint(0, 3), rng)
                cf = comb(w)
                back = recombine(cf)
                assert comb(back) == cf
                if not S.cone_orders or n == 1:
                    assert is_identity(w * back.inverse())


def test_recombine_with_cones_differs_by_lower_torsion():
    # X[1,1]^-1 and X[1,1]^2 agree (q = 3), but the quotient w back^-1 is a conjugate of the
    # lower-strand relator X[1,1]^3, which comb does not absorb.
    S = Surface(0, (3,))
    w = parse_orbword("X[2,1] X[1,1]^-1", S, 2)
    back = recombine(comb(w))
    assert comb(back) == comb(w)
    assert (w * back.inverse()).freely_reduced() == parse_orbword("X[2,1] X[1,1]^-3 X[2,1]^-1", S, 2)


def test_coordinates_live_in_level_signature():
    rng = random.Random(5)
    S = Surface(2, (2, 3))
    for _ in range(40):
        w = random_word(S, 3, rng.randint(0, 5), rng)
        for level, u in comb(w).levels():
            assert not u.syllables or u.signature == level_signature(S, level)
            assert {g for g, _ in expand(u, S, level).letters} <= set(kernel_basis(S, level))


def test_torsion_relator_on_top_strand_is_absorbed():
    rng = random.Random(6)
    S = Surface(1, (2, 3))
    n = 3
    for _ in range(100):
        w = random_word(S, n, rng.randint(0, 4), rng)
        u = random_word(S, n, rng.randint(0, 2), rng)
        r = rng.randint(1, 2)
        rel = u * word(S, n, (X(n, r), S.cone_orders[r - 1])) * u.inverse()
        p = rng.randint(0, len(w))
        w2 = OrbWord(S, n, w.letters[:p]) * rel * OrbWord(S, n, w.letters[p:])
        assert comb(w2) == comb(w)


def test_torsion_relator_below_top_strand_is_not_absorbed():
    # X[1,1]^2 is trivial at level 1 (q = 2) but its conjugation action on the level-2
    # kernel, read through the classical lift, is not; comb therefore separates the two.
    S = Surface(0, (2,))
    w = parse_orbword("X[1,1]^2 B[1,2]", S, 2)
    assert comb(w) != comb(parse_orbword("B[1,2]", S, 2))
    assert is_identity(parse_orbword("X[1,1]^2", S, 2))
    assert stretch(w * section(delta(w)).inverse()) == stretch(w * section(delta(w)).inverse(), method="lift")


def test_classical_relators_are_trivial_after_lift():
    for S, n in ((Surface(0, ()), 4), (Surface(1, (2,)), 3), (Surface(2, (3, 4)), 2)):
        rels = classical_relators(S, n)
        assert rels
        for r in rels:
            assert braids.is_trivial(lift(r))
            assert is_identity(r)


def test_esg_splitting_small():
    res = esg_suite(Surface(1, (2,)), 3, cases=100, seed=1, torsion_strands="top")
    assert res.ok, res.summary()


def test_conjugation_table_examples():
    t = conjugation_table(S0, 2)
    assert t.ok
    assert t.entries[(B(1, 2), B(1, 2))] == freeprod.reduce([(FREE, 1, 1)], level_signature(S0, 2))
    t = conjugation_table(Surface(0, (2,)), 2)
    assert t.ok
    assert len(t.entries) == len(generators(Surface(0, (2,)), 2)) * 2
    for (g, y), u in t.entries.items():
        assert {h for h, _ in expand(u, t.surface, 2).letters} <= {X(2, 1), B(1, 2)}
    S = Surface(1, (2,))
    t3 = conjugation_table(S, 3)
    assert t3.ok
    case7 = word(S, 3, B(1, 2), X(3, 1), (B(1, 2), -1))
    assert t3.entries[(B(1, 2), X(3, 1))] == stretch(case7)
    with pytest.raises(OrbWordError):
        conjugation_table(S, 1)
    assert json.loads(json.dumps(t3.to_json()))["n"] == 3


def test_polyvf_series_examples():
    assert [s.free_rank for s in polyvf_series(S0, 3)] == [2, 1, 0]
    (only,) = polyvf_series(Surface(1, ()), 1)
    assert only.free_rank == 1
    ser = polyvf_series(Surface(0, (2, 2)), 2)
    assert [s.cone_orders for s in ser] == [(2, 2), (2, 2)]
    assert [s.free_rank for s in ser] == [1, 0]


def test_parse_orbword_and_surface():
    S = parse_surface("(k=2, q=[2,3])")
    assert S == Surface(2, (2, 3))
    w = parse_orbword("B[1,3] P[3,2]^-1 X[2,1]^3", S, 3)
    assert len(w) == 5
    assert str(w) == "B[1,3] P[3,2]^-1 X[2,1]^3"
    assert parse_orbword(str(w), S, 3) == w
    assert parse_orbword("1", S, 3) == OrbWord(S, 3)
    with pytest.raises(WordParseError) as err:
        parse_orbword("B[1]", S, 2)
    assert err.value.offset == 0
    with pytest.raises(WordParseError) as err:
        parse_orbword("B[1,2]  X[1,3]", S, 2)
    assert err.value.offset == 8


def test_combed_json_shape():
    S = Surface(1, (2,))
    cf = comb(parse_orbword("B[1,2] P[2,1] X[1,1]", S, 2))
    data = cf.to_json()
    assert len(data) == 2
    assert all(isinstance(tag, str) and isinstance(e, int) for level in data for tag, e in level)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([Surface(0, (2,)), Surface(1, (3,)), Surface(1, ()), Surface(0, (2, 2))]),
       st.integers(2, 3))
def test_comb_is_invariant_under_free_cancellation(seed, S, n):
    rng = random.Random(seed)
    w = random_word(S, n, rng.randint(0, 5), rng)
    u = random_word(S, n, rng.randint(1, 3), rng)
    p = rng.randint(0, len(w))
    w2 = OrbWord(S, n, w.letters[:p]) * u * u.inverse() * OrbWord(S, n, w.letters[p:])
    assert comb(w2) == comb(w)
