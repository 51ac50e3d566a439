"""Exit criteria.  Each test prints exactly one PASS/FAIL line; run with ``pytest -m acceptance -s``
or read them from the verbose log."""

import time

import pytest

from orbibraid import suites
from orbibraid.suites import SuiteResult, surface_grid

pytestmark = pytest.mark.acceptance

GRID = surface_grid(max_k=2, max_m=2, orders=(2, 3, 4))


def report(capsys, number: int, title: str, res: SuiteResult, seconds: float, extra: str = "", ok=None):
    ok = res.ok if ok is None else ok
    props = ", ".join(f"{k} {p.cases - p.failures}/{p.cases}" for k, p in sorted(res.properties.items()))
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {props}; {seconds:.1f}s{extra}"
    with capsys.disabled():
        print("\n" + line)
    return ok


def test_criterion_1_kernel_structure(capsys):
    t = time.perf_counter()
    total = SuiteResult("esg", {"grid": len(GRID), "n": "1..4"})
    for S in GRID:
        for n in range(1, 5):
            total.merge(suites.esg_suite(S, n, cases=1000, seed=n, max_len=3, max_conj=1,
                                         torsion_strands="all", classical=False))
    seconds = time.perf_counter() - t
    first = next((p.example for p in total.properties.values() if p.example), None)
    ok = report(capsys, 1, "split sequence and torsion-relator invariance", total, seconds,
                f"; first counterexample: {first}" if first else "", ok=total.ok and seconds < 300)
    assert total.properties["torsion_invariance_all"].cases >= 1000
    assert ok, total.summary()


def test_criterion_2_torsion_orders(capsys):
    t = time.perf_counter()
    total = SuiteResult("torsion-orders", {})
    for n in (1, 2):
        for k in (0, 1):
            total.merge(suites.torsion_order_suite(max_q=6, max_d=12, n=n, k=k))
    ok = report(capsys, 2, "X(i,r)^d trivial iff q_r | d", total, time.perf_counter() - t)
    assert ok, total.summary()


def test_criterion_3_free_basis(capsys):
    t = time.perf_counter()
    res = suites.fnf_suite(max_n=6, cases=1000, seed=0)
    ok = report(capsys, 3, "strand traces of B_iN form a free basis (N <= 6)", res, time.perf_counter() - t)
    assert ok, res.summary()


def test_criterion_4_normality(capsys):
    t = time.perf_counter()
    total = SuiteResult("normality", {})
    for S in GRID:
        for n in range(2, 5):
            total.merge(suites.normality_suite(S, n))
    ok = report(capsys, 4, "conjugation tables have no kernel errors", total, time.perf_counter() - t)
    assert ok, total.summary()


def test_criterion_5_classical_consistency(capsys):
    t = time.perf_counter()
    total = SuiteResult("classical", {})
    for k in range(3):
        for n in range(1, 5):
            total.merge(suites.classical_suite(k, n, cases=1000, seed=10 * k + n))
    ok = report(capsys, 5, "equal agrees with the Artin action (m = 0)", total, time.perf_counter() - t)
    assert total.properties["equal_matches_artin"].cases == 12_000
    assert ok, total.summary()


def test_criterion_6_groupoids(capsys):
    t = time.perf_counter()
    res = suites.groupoid_suite(instances=50, max_points=8, max_order=4, max_n=3, seed=0)
    ok = report(capsys, 6, "configuration groupoids", res, time.perf_counter() - t,
                f"; free actions: {res.details['free_instances']}")
    assert res.details["free_instances"] > 0
    assert ok, res.summary()


def test_criterion_7_arrangements(capsys):
    t = time.perf_counter()
    res = suites.falk_suite(max_n=6, max_k=3)
    res.merge(suites.supersolvable_suite(max_braid_n=5, dn=(4,)))
    seconds = time.perf_counter() - t
    ok = report(capsys, 7, "Falk witness iff n >= 4, supersolvability", res, seconds, ok=res.ok and seconds < 600)
    assert ok, res.summary()


def test_criterion_8_polyvf(capsys):
    t = time.perf_counter()
    total = SuiteResult("polyvf", {})
    for S in GRID:
        for n in range(1, 5):
            total.merge(suites.polyvf_suite(S, n, cases=100, seed=n, max_len=3))
    ok = report(capsys, 8, "comb coordinates live in the poly-VF series", total, time.perf_counter() - t)
    assert ok, total.summary()
