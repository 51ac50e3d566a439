"""
Command line: ``orbibraid <command> ...``.

Exit codes: 0 everything checked passes, 1 a property failed (or a conjugation table
has kernel errors), 2 bad input.  ``--json`` output is versioned, key-sorted and free of
timings, so a fixed config and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import SCHEMA
from . import arrangements as arr
from . import groupoids as gk
from . import suites
from .freeprod import WordParseError
from .orbifold import (
    OrbWordError, Surface, comb, conjugation_table, parse_orbword, parse_surface,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.json:
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _surface(args) -> Surface:
    if getattr(args, "surface", None):
        try:
            return parse_surface(args.surface)
        except (ValueError, OrbWordError) as err:
            raise UsageError(str(err)) from None
    q: list[int] = []
    if args.q:
        try:
            q = [int(x) for x in args.q.replace(" ", "").split(",") if x]
        except ValueError:
            raise UsageError(f"--q expects a comma separated list of integers, got {args.q!r}") from None
    m = args.m
    if m is None:
        m = len(q)
    if m and len(q) == 1 and m > 1:
        q = q * m
    if len(q) != m:
        raise UsageError(f"--m {m} needs {m} cone orders, got --q {args.q!r}")
    if args.k < 0:
        raise UsageError("--k must be >= 0")
    try:
        return Surface(args.k, tuple(q))
    except OrbWordError as err:
        raise UsageError(str(err)) from None


def _surface_args(p: argparse.ArgumentParser, n_default: int | None = None):
    p.add_argument("--n", type=int, default=n_default, required=n_default is None, help="number of strands")
    p.add_argument("--k", type=int, default=0, help="punctures")
    p.add_argument("--m", type=int, default=None, help="cone points (default: length of --q)")
    p.add_argument("--q", default="", help="cone orders, e.g. 2,3")
    p.add_argument("--surface", default=None, help="alternative form: '(k=2, q=[2,3])'")


# ---------------------------------------------------------------------------
# commands

def cmd_normal_form(args) -> int:
    S = _surface(args)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.file:
        with open(args.file) as fh:
            texts = [line.strip() for line in fh if line.strip() and not line.lstrip().startswith("#")]
    elif args.word is not None:
        texts = [args.word]
    else:
        raise UsageError("give a word or --file")
    results, lines = [], []
    for text in texts:
        try:
            w = parse_orbword(text, S, args.n)
        except WordParseError as err:
            raise UsageError(f"parse error in {text!r}: {err}") from None
        cf = comb(w)
        verdict = "identity" if cf.is_identity() else "non-identity"
        results.append({"word": text, "levels": cf.to_json(), "verdict": verdict})
        lines.append(f"{text}\n{cf}\nverdict: {verdict}")
    payload = {"command": "normal-form", "surface": {"k": S.k, "q": list(S.cone_orders)}, "n": args.n,
               "results": results}
    _emit(args, payload, "\n\n".join(lines))
    return EXIT_OK


def _run_suite(args):
    name = args.suite
    seed = args.seed
    if name in ("esg-splitting", "esg-torsion", "normality", "polyvf"):
        S = _surface(args)
        if args.n is None:
            raise UsageError(f"{name} needs --n")
        if args.n < 1 or (name == "normality" and args.n < 2):
            raise UsageError("--n out of range")
        if name == "normality":
            return suites.normality_suite(S, args.n)
        if name == "polyvf":
            return suites.polyvf_suite(S, args.n, cases=args.cases or 200, seed=seed, max_len=args.max_len)
        top = name == "esg-splitting"
        return suites.esg_suite(S, args.n, cases=args.cases or 200, seed=seed, max_len=args.max_len,
                                max_conj=args.max_conj, torsion_strands="top" if top else "all",
                                classical=top)
    if name == "torsion-orders":
        return suites.torsion_order_suite(max_q=args.max_q, max_d=args.max_d, n=args.n or 1, k=args.k)
    if name == "fnf":
        return suites.fnf_suite(max_n=args.max_n or 6, cases=args.cases or 1000, seed=seed)
    if name == "classical":
        if args.n is None:
            raise UsageError("classical needs --n")
        return suites.classical_suite(args.k, args.n, cases=args.cases or 1000, seed=seed,
                                      max_len=args.max_len)
    if name == "freeprod":
        return suites.freeprod_suite(cases=args.cases or 10_000, seed=seed)
    if name == "groupoid-axioms":
        return suites.groupoid_suite(instances=args.cases or 50, max_points=args.max_m or 8,
                                     max_order=args.max_h, max_n=args.max_n or 3, seed=seed)
    if name == "falk":
        if args.n is not None:
            k = args.k or 1
            res = suites.SuiteResult("falk", {"n": args.n, "k": k})
            try:
                A = arr.build_dnk(args.n, k)
            except arr.ArrangementError as err:
                raise UsageError(str(err)) from None
            w = arr.falk_pattern(A, args.n, k)
            res.prop("witness_iff_n_ge_4").record((w is not None) == (args.n >= 4), lambda: "mismatch")
            res.details["witness"] = w.to_json() if w else None
            return res
        return suites.falk_suite(max_n=args.max_n or 6, max_k=args.max_k or 3)
    if name == "supersolvable":
        return suites.supersolvable_suite(max_braid_n=args.max_n or 5)
    raise UsageError(f"unknown suite {name!r}; known: {', '.join(suites.SUITES)}")


def cmd_verify(args) -> int:
    res = _run_suite(args)
    text = res.summary()
    w = res.details.get("witness")
    if w:
        text += "\n  witness: " + ", ".join(w["text"])
    _emit(args, {"command": "verify", **res.to_json()}, text)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_conj_table(args) -> int:
    S = _surface(args)
    try:
        table = conjugation_table(S, args.n)
    except OrbWordError as err:
        raise UsageError(str(err)) from None
    lines = [f"conjugation table for {S}, n={args.n}"]
    for e in table.to_json()["entries"]:
        val = " ".join(g if x == 1 else f"{g}^{x}" for g, x in e["value"]) or "1"
        lines.append(f"{e['g']} . {e['y']} . {e['g']}^-1 = {val}")
    for v in table.violations:
        lines.append(f"KERNEL ERROR {v}")
    _emit(args, {"command": "conj-table", **table.to_json()}, "\n".join(lines))
    return EXIT_OK if table.ok else EXIT_FAIL


def cmd_arrangement(args) -> int:
    try:
        if args.braid:
            A = arr.braid_arrangement(args.n)
            k = 1
        else:
            A = arr.build_dnk(args.n, args.k)
            k = args.k
        w = arr.falk_pattern(A, args.n, k)
        out = {"n": args.n, "k": k, "kind": "braid" if args.braid else "D",
               "hyperplane_count": len(A), "falk_witness": w.to_json() if w else None,
               "supersolvable": None, "chain": None}
        if not args.no_lattice:
            L = arr.intersection_lattice(A, args.n, k)
            ok, chain = arr.supersolvable(A, args.n, k, lattice=L)
            out["supersolvable"] = ok
            out["chain"] = [f.to_json() for f in chain] if chain else None
            out["flats_by_rank"] = arr.count_by_rank(L)
    except arr.ArrangementError as err:
        raise UsageError(str(err)) from None
    name = f"braid arrangement n={args.n}" if args.braid else f"D^{k}_{args.n}"
    lines = [f"{name}: {len(A)} hyperplanes"]
    lines.append("falk witness: " + (", ".join(w.to_json()["text"]) if w else "none"))
    if out["supersolvable"] is not None:
        lines.append(f"flats by rank: {out['flats_by_rank']}")
        lines.append(f"supersolvable: {out['supersolvable']}")
        if out["chain"]:
            lines.append("modular chain ranks: " + " < ".join(str(f["rank"]) for f in out["chain"]))
    _emit(args, {"command": "arrangement", **out}, "\n".join(lines))
    return EXIT_OK


def cmd_groupoid(args) -> int:
    try:
        with open(args.action) as fh:
            act = gk.action_from_json(fh.read())
    except (OSError, gk.GroupoidInputError, ValueError) as err:
        raise UsageError(str(err)) from None
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    G = gk.translation_groupoid(act)
    reports = {"pb_a_axioms": gk.check_axioms(gk.pb_a(G, args.n)),
               "pb_b_axioms": gk.check_axioms(gk.pb_b(G, args.n)),
               "a_to_b_hom": gk.check_hom(gk.a_to_b(G, args.n)),
               "pb_b_translation_iso": gk.pb_b_translation_isomorphism(act, args.n, G=G)}
    if args.n >= 2:
        reports["forget_a_hom"] = gk.check_hom(gk.forget_hom_a(G, args.n))
        reports["forget_b_hom"] = gk.check_hom(gk.forget_hom_b(G, args.n))
    free = gk.is_free_action(act)
    fib = None
    if args.n >= 2:
        ok, missing = gk.is_b_fibration_discrete(gk.forget_hom_b(G, args.n))
        fib = {"ok": ok, "missing": repr(missing) if missing else None}
    payload = {"command": "groupoid", "n": args.n, "points": len(act.points), "group_order": len(act.group),
               "free_action": free, "reports": {k: r.to_json() for k, r in reports.items()},
               "b_fibration": fib}
    lines = [f"|M|={len(act.points)} |H|={len(act.group)} n={args.n} free={free}"]
    lines += [f"  {k}: {'ok' if r.ok else 'FAIL ' + str(r.violations[:1])}" for k, r in reports.items()]
    if fib is not None:
        lines.append(f"  b-fibration (surjectivity): {fib['ok']}" + ("" if free else " (not asserted: action not free)"))
    _emit(args, payload, "\n".join(lines))
    failed = not all(r.ok for r in reports.values()) or (free and fib is not None and not fib["ok"])
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbibraid", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    nf = sub.add_parser("normal-form", help="combed normal form of a word")
    nf.add_argument("word", nargs="?", help="e.g. 'B[1,2] X[2,1]^-1'")
    nf.add_argument("--file", help="read words from a file, one per line")
    _surface_args(nf)
    nf.add_argument("--json", action="store_true")
    nf.set_defaults(func=cmd_normal_form)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("suite", help=", ".join(suites.SUITES))
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--k", type=int, default=0)
    v.add_argument("--m", type=int, default=None)
    v.add_argument("--q", default="")
    v.add_argument("--surface", default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=None, help="cases / instances (suite specific default)")
    v.add_argument("--max-len", type=int, default=3, help="random word length bound")
    v.add_argument("--max-conj", type=int, default=1, help="conjugator length bound")
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--max-k", type=int, default=None)
    v.add_argument("--max-m", type=int, default=None, help="groupoid suites: max |M|")
    v.add_argument("--max-h", type=int, default=4, help="groupoid suites: max |H|")
    v.add_argument("--max-q", type=int, default=6)
    v.add_argument("--max-d", type=int, default=12)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conj-table", help="stretch(g y g^-1) for all generators g and kernel basis y")
    _surface_args(c)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_conj_table)

    a = sub.add_parser("arrangement", help="D^k_n: Falk pattern and supersolvability")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--k", type=int, default=1)
    a.add_argument("--braid", action="store_true", help="use z_i = z_j only")
    a.add_argument("--no-lattice", action="store_true", help="skip the lattice and supersolvability")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_arrangement)

    g = sub.add_parser("groupoid", help="check the configuration groupoids of an action given as JSON")
    g.add_argument("action", help="JSON file: {points, group: {elements, table, identity} | {cyclic: q}, action}")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_groupoid)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
