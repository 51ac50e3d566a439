"""
Finite groupoids, translation groupoids and their configuration groupoids.

Everything here is finite and checked exhaustively.  The smooth notions used for Lie
groupoids have only discrete shadows at this scale: a b-fibration is tested for the
surjectivity of alpha -> (f1(alpha), s(alpha)) onto the fiber product, and the covering
hypothesis on the base groupoid is replaced by freeness of the group action.  These
are weakenings and are labelled as such in the function names.

Composition follows the usual convention ``compose(beta, alpha) = beta o alpha``, defined
when ``target(alpha) == source(beta)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

Obj = Hashable
Mor = Hashable


class GroupoidInputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# finite groups and actions

@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple
    table: dict  # (a, b) -> a*b, meaning "apply b, then a" for actions
    identity: Any

    def mul(self, a, b):
        return self.table[(a, b)]

    def inv(self, a):
        for b in self.elements:
            if self.table[(a, b)] == self.identity:
                return b
        raise GroupoidInputError(f"{a!r} has no inverse")

    def __len__(self):
        return len(self.elements)

    def check(self) -> list[str]:
        errs = []
        els = self.elements
        if self.identity not in els:
            errs.append("identity not an element")
        for a, b in itertools.product(els, els):
            if (a, b) not in self.table or self.table[(a, b)] not in els:
                errs.append(f"product {a!r}*{b!r} missing or outside the group")
        if errs:
            return errs
        for a in els:
            if self.mul(self.identity, a) != a or self.mul(a, self.identity) != a:
                errs.append(f"identity fails on {a!r}")
            if not any(self.mul(a, b) == self.identity for b in els):
                errs.append(f"{a!r} has no inverse")
        for a, b, c in itertools.product(els, els, els):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                errs.append(f"not associative at {a!r},{b!r},{c!r}")
                break
        return errs


def cyclic_group(q: int) -> FiniteGroup:
    els = tuple(range(q))
    return FiniteGroup(els, {(a, b): (a + b) % q for a in els for b in els}, 0)


def product_group(groups: Sequence[FiniteGroup]) -> FiniteGroup:
    els = tuple(itertools.product(*(g.elements for g in groups)))
    table = {(a, b): tuple(g.mul(x, y) for g, x, y in zip(groups, a, b)) for a in els for b in els}
    return FiniteGroup(els, table, tuple(g.identity for g in groups))


def klein_four() -> FiniteGroup:
    return product_group([cyclic_group(2), cyclic_group(2)])


@dataclass(frozen=True)
class Action:
    """Left action of a finite group on a finite set, as a table (h, x) -> h(x)."""
    group: FiniteGroup
    points: tuple
    table: dict

    def __call__(self, h, x):
        return self.table[(h, x)]

    def check(self) -> list[str]:
        errs = self.group.check()
        G, pts = self.group, self.points
        for h, x in itertools.product(G.elements, pts):
            if (h, x) not in self.table or self.table[(h, x)] not in pts:
                errs.append(f"action of {h!r} on {x!r} missing or outside the set")
        if errs:
            return errs
        for x in pts:
            if self(G.identity, x) != x:
                errs.append(f"identity moves {x!r}")
        for a, b, x in itertools.product(G.elements, G.elements, pts):
            if self(G.mul(a, b), x) != self(a, self(b, x)):
                errs.append(f"(ab)x != a(bx) for a={a!r}, b={b!r}, x={x!r}")
                break
        return errs


def action_from_permutations(group: FiniteGroup, points: Sequence, perm_of: Callable) -> Action:
    """``perm_of(h)`` returns a dict point -> image."""
    table = {(h, x): perm_of(h)[x] for h in group.elements for x in points}
    return Action(group, tuple(points), table)


def cyclic_action(points: Sequence, generator_perm: dict, q: int) -> Action:
    """Action of C_q in which 1 acts by ``generator_perm``."""
    G = cyclic_group(q)
    powers = [{x: x for x in points}]
    for _ in range(1, q):
        powers.append({x: generator_perm[powers[-1][x]] for x in points})
    act = action_from_permutations(G, points, lambda h: powers[h])
    errs = act.check()
    if errs:
        raise GroupoidInputError("; ".join(errs[:3]))
    return act


def product_action(actions: Sequence[Action], points: Sequence[tuple]) -> Action:
    """Coordinatewise action of the product group on a set of tuples."""
    G = product_group([a.group for a in actions])
    table = {(h, x): tuple(a(hi, xi) for a, hi, xi in zip(actions, h, x)) for h in G.elements for x in points}
    return Action(G, tuple(points), table)


def is_free_action(action: Action) -> bool:
    G = action.group
    return all(action(h, x) != x for h in G.elements if h != G.identity for x in action.points)


# ---------------------------------------------------------------------------
# groupoids

@dataclass
class FiniteGroupoid:
    objects: tuple
    morphisms: tuple
    source: dict
    target: dict
    unit: dict
    inverse: dict
    compose: Callable[[Mor, Mor], Mor]  # compose(beta, alpha) = beta o alpha
    name: str = ""

    def __post_init__(self):
        self._out: dict = {}
        self._indexed = None
        self._derived: dict = {}  # memoised pb_a / pb_b
        for a in self.morphisms:
            self._out.setdefault(self.source[a], []).append(a)

    def indexed(self) -> "Indexed":
        if self._indexed is None:
            self._indexed = _indexed_composition(self)
        return self._indexed

    def out_of(self, x) -> list:
        return self._out.get(x, [])

    def hom(self, x, y) -> list:
        return [a for a in self.out_of(x) if self.target[a] == y]

    def composable_pairs(self) -> Iterable[tuple[Mor, Mor]]:
        """Pairs (alpha, beta) with t(alpha) = s(beta)."""
        for a in self.morphisms:
            for b in self.out_of(self.target[a]):
                yield a, b


@dataclass
class Report:
    ok: bool
    violations: list[dict] = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations, "checked": self.checked}


def _violation(axiom: str, **where) -> dict:
    return {"axiom": axiom, **{k: repr(v) for k, v in where.items()}}


@dataclass
class Indexed:
    """Dense integer tables for vectorised checks.

    out[o, j] is the j-th morphism leaving object o (-1 pads), pos[a] the slot of a in its
    source's row, tgt[a] the target object id (-1 if not an object) and
    comp[a, j] = out[t(a), j] o a as a morphism id (-2 when the composite is not a morphism).
    """
    ids: dict
    obj_ids: dict
    out: np.ndarray
    pos: np.ndarray
    tgt: np.ndarray
    comp: np.ndarray


def _indexed_composition(G: FiniteGroupoid) -> Indexed:
    ids = {a: i for i, a in enumerate(G.morphisms)}
    obj_ids = {x: i for i, x in enumerate(G.objects)}
    width = max((len(G.out_of(x)) for x in G.objects), default=0)
    out = -np.ones((len(G.objects), max(width, 1)), dtype=np.int64)
    pos = np.zeros(len(G.morphisms), dtype=np.int64)
    for x in G.objects:
        for j, a in enumerate(G.out_of(x)):
            out[obj_ids[x], j] = ids[a]
            pos[ids[a]] = j
    tgt = np.array([obj_ids.get(G.target[a], -1) for a in G.morphisms], dtype=np.int64)
    comp = -np.ones((len(G.morphisms), max(width, 1)), dtype=np.int64)
    for a in G.morphisms:
        ia = ids[a]
        for j, b in enumerate(G.out_of(G.target[a])):
            c = G.compose(b, a)
            comp[ia, j] = ids.get(c, -2)
    return Indexed(ids, obj_ids, out, pos, tgt, comp)


def check_axioms(G: FiniteGroupoid, limit: int = 20) -> Report:
    """Exhaustive check of the structure-map and groupoid axioms.

    (ST) source/target land in the objects; (U) units are loops with the unit law;
    (I) inverses reverse arrows and are two-sided; (M) composites exist, lie in the
    morphism set and have the right source/target; (C) associativity on every
    composable triple.
    """
    v: list[dict] = []
    objs = set(G.objects)
    mors = set(G.morphisms)
    for a in G.morphisms:
        if G.source.get(a) not in objs or G.target.get(a) not in objs:
            v.append(_violation("ST", morphism=a))
    for x in G.objects:
        u = G.unit.get(x)
        if u not in mors or G.source[u] != x or G.target[u] != x:
            v.append(_violation("U", object=x))
    if v:
        return Report(False, v[:limit])
    for a in G.morphisms:
        x, y = G.source[a], G.target[a]
        ai = G.inverse.get(a)
        if ai not in mors or G.source[ai] != y or G.target[ai] != x:
            v.append(_violation("I", morphism=a, detail="inverse missing or misdirected"))
            continue
        if G.compose(ai, a) != G.unit[x] or G.compose(a, ai) != G.unit[y]:
            v.append(_violation("I", morphism=a, detail="inverse is not two-sided"))
        if G.compose(a, G.unit[x]) != a or G.compose(G.unit[y], a) != a:
            v.append(_violation("U", morphism=a, detail="unit law fails"))
        if len(v) >= limit:
            return Report(False, v)
    ix = G.indexed()
    out, pos, tgt, comp = ix.out, ix.pos, ix.tgt, ix.comp
    mor_list = G.morphisms
    src = {a: G.source[a] for a in mor_list}
    bad = np.argwhere(comp == -2)
    for ia, j in bad[:limit]:
        v.append(_violation("M", first=mor_list[ia], second=mor_list[out[tgt[ia], j]],
                            detail="composite not a morphism"))
    if len(bad):
        return Report(False, v[:limit])
    # composite endpoints
    for ia, a in enumerate(mor_list):
        for j in range(out.shape[1]):
            c = comp[ia, j]
            if c < 0:
                continue
            b = mor_list[out[tgt[ia], j]]
            cm = mor_list[c]
            if src[cm] != src[a] or G.target[cm] != G.target[b]:
                v.append(_violation("M", first=a, second=b, detail="composite has wrong endpoints"))
    if v:
        return Report(False, v[:limit])
    # (C): (c o b) o a == c o (b o a) for all a, b = out[t(a), j], c = out[t(b), l]
    n = len(mor_list)
    triples = 0
    chunk = max(1, 2_000_000 // max(1, out.shape[1] ** 2))
    for start in range(0, n, chunk):
        a = np.arange(start, min(n, start + chunk))
        b = out[tgt[a]]  # (A, W)
        valid_b = b >= 0
        bb = np.where(valid_b, b, 0)
        c = out[tgt[bb]]  # (A, W, W)
        valid = valid_b[:, :, None] & (c >= 0)
        cb = comp[bb[:, :, None], np.arange(out.shape[1])[None, None, :]]  # c o b
        lhs = comp[a[:, None, None], pos[np.where(valid, cb, 0)]]
        ba = comp[a[:, None], np.arange(out.shape[1])[None, :]]  # b o a
        rhs = comp[np.where(valid_b, ba, 0)[:, :, None], np.arange(out.shape[1])[None, None, :]]
        mismatch = valid & (lhs != rhs)
        triples += int(valid.sum())
        for ia, j, l in np.argwhere(mismatch)[:limit]:
            A = mor_list[a[ia]]
            Bm = mor_list[b[ia, j]]
            Cm = mor_list[c[ia, j, l]]
            v.append(_violation("C", a=A, b=Bm, c=Cm))
        if len(v) >= limit:
            break
    return Report(not v, v[:limit], {"objects": len(G.objects), "morphisms": n, "triples": triples})


def translation_groupoid(action: Action, name: str = "", validate: bool = True) -> FiniteGroupoid:
    """G(M, H): morphisms (h, x) : x -> h(x), (h', h(x)) o (h, x) = (h'h, x)."""
    errs = action.check() if validate else []
    if errs:
        raise GroupoidInputError("not a group action: " + "; ".join(errs[:3]))
    H = action.group
    mors = tuple((h, x) for x in action.points for h in H.elements)
    src = {(h, x): x for h, x in mors}
    tgt = {(h, x): action(h, x) for h, x in mors}
    unit = {x: (H.identity, x) for x in action.points}
    inv = {(h, x): (H.inv(h), action(h, x)) for h, x in mors}

    def compose(beta, alpha):
        return (H.mul(beta[0], alpha[0]), alpha[1])

    return FiniteGroupoid(tuple(action.points), mors, src, tgt, unit, inv, compose, name or "translation")


def unit_groupoid(points: Sequence) -> FiniteGroupoid:
    return translation_groupoid(cyclic_action(points, {x: x for x in points}, 1), "unit")


def orbit(G: FiniteGroupoid, x) -> frozenset:
    """t(s^-1(x))."""
    return frozenset(G.target[a] for a in G.out_of(x))


def orbit_partition(G: FiniteGroupoid) -> list[frozenset]:
    seen: set = set()
    parts = []
    for x in G.objects:
        if x not in seen:
            o = orbit(G, x)
            parts.append(o)
            seen |= o
    return parts


def pb_objects(G: FiniteGroupoid, n: int) -> tuple:
    """n-tuples of objects with pairwise distinct orbits."""
    if n < 1:
        raise GroupoidInputError("n must be >= 1")
    orb = {x: orbit(G, x) for x in G.objects}
    out = []
    for tup in itertools.product(G.objects, repeat=n):
        orbits = [orb[x] for x in tup]
        if len(set(orbits)) == n:
            out.append(tup)
    return tuple(out)


def pb_a(G: FiniteGroupoid, n: int) -> FiniteGroupoid:
    """a-configuration groupoid.

    For n >= 2 a morphism is the flattened nested tuple (alpha_1, x^(2), ..., x^(n)) with
    x^(l) in PB_l(G)_0 and s(alpha_1) = x^(2)_1, consecutive x^(l) prefix-compatible.
    s = x^(n), t = (t(alpha_1), x^(n)_2, ..., x^(n)_n), and composition acts on alpha_1.
    """
    if n < 1:
        raise GroupoidInputError("n must be >= 1")
    if n == 1:
        return G
    if ("a", n) in G._derived:
        return G._derived["a", n]
    objs = pb_objects(G, n)
    lower = pb_a(G, n - 1)
    by_source: dict = {}
    for a in lower.morphisms:
        by_source.setdefault(lower.source[a], []).append(a)
    mors = []
    for x in objs:
        for a in by_source.get(_prefix(x, n), []):
            mors.append(_extend(a, x, n))
    src = {m: m[-1] for m in mors}
    tgt = {m: (G.target[m[0]],) + m[-1][1:] for m in mors}
    unit = {x: _extend(lower.unit[_prefix(x, n)], x, n) for x in objs}
    # alpha_n^-1 must start at t_n(alpha_n), so it is (alpha_{n-1}^-1, t_n(alpha_n))
    inv = {m: _extend(lower.inverse[_shrink(m, n)], tgt[m], n) for m in mors}

    def compose(beta, alpha):
        return _extend(lower.compose(_shrink(beta, n), _shrink(alpha, n)), alpha[-1], n)

    G._derived["a", n] = FiniteGroupoid(objs, tuple(mors), src, tgt, unit, inv, compose, f"PB^a_{n}")
    return G._derived["a", n]


def _prefix(x, n):
    # PB_1(G)_0 is G_0 itself, not 1-tuples
    return x[0] if n == 2 else x[:-1]


def _extend(lower_mor, x, n):
    return (lower_mor, x) if n == 2 else lower_mor + (x,)


def _shrink(m, n):
    return m[0] if n == 2 else m[:-1]


def pb_b(G: FiniteGroupoid, n: int) -> FiniteGroupoid:
    """b-configuration groupoid: coordinatewise tuples with both endpoint tuples in PB_n(G)_0."""
    if n < 1:
        raise GroupoidInputError("n must be >= 1")
    if n == 1:
        return G
    if ("b", n) in G._derived:
        return G._derived["b", n]
    objs = pb_objects(G, n)
    obj_set = set(objs)
    mors = []
    for x in objs:
        for tup in itertools.product(*(G.out_of(xi) for xi in x)):
            if tuple(G.target[a] for a in tup) in obj_set:
                mors.append(tup)
    src = {m: tuple(G.source[a] for a in m) for m in mors}
    tgt = {m: tuple(G.target[a] for a in m) for m in mors}
    unit = {x: tuple(G.unit[xi] for xi in x) for x in objs}
    inv = {m: tuple(G.inverse[a] for a in m) for m in mors}

    def compose(beta, alpha):
        return tuple(G.compose(b, a) for b, a in zip(beta, alpha))

    G._derived["b", n] = FiniteGroupoid(objs, tuple(mors), src, tgt, unit, inv, compose, f"PB^b_{n}")
    return G._derived["b", n]


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass
class GroupoidHom:
    domain: FiniteGroupoid
    codomain: FiniteGroupoid
    f0: Callable
    f1: Callable
    name: str = ""


def check_hom(h: GroupoidHom, limit: int = 20) -> Report:
    """Exhaustive check of (a) s f1 = f0 s, (b) t f1 = f0 t, (c) f1 u = u f0,
    (d) f1 i = i f1, (e) f1(beta o alpha) = f1(beta) o f1(alpha)."""
    K, L = h.domain, h.codomain
    v: list[dict] = []
    lmors = set(L.morphisms)
    lobjs = set(L.objects)
    for x in K.objects:
        if h.f0(x) not in lobjs:
            v.append(_violation("f0", object=x, detail="image is not an object"))
        elif h.f1(K.unit[x]) != L.unit[h.f0(x)]:
            v.append(_violation("c", object=x))
    for a in K.morphisms:
        fa = h.f1(a)
        if fa not in lmors:
            v.append(_violation("f1", morphism=a, detail="image is not a morphism"))
            continue
        if L.source[fa] != h.f0(K.source[a]):
            v.append(_violation("a", morphism=a))
        if L.target[fa] != h.f0(K.target[a]):
            v.append(_violation("b", morphism=a))
        if h.f1(K.inverse[a]) != L.inverse[fa]:
            v.append(_violation("d", morphism=a))
        if len(v) >= limit:
            return Report(False, v)
    pairs = 0
    if not v:
        kx, lx = K.indexed(), L.indexed()
        if (kx.comp == -2).any() or (lx.comp == -2).any():
            v.append(_violation("e", detail="composition of domain or codomain leaves its morphism set"))
            return Report(False, v)
        f1 = np.array([lx.ids[h.f1(a)] for a in K.morphisms], dtype=np.int64)
        b = kx.out[kx.tgt]  # (M, W)
        valid = b >= 0
        bb = np.where(valid, b, 0)
        lhs = f1[np.where(valid, kx.comp, 0)]
        rhs = lx.comp[f1[:, None], lx.pos[f1[bb]]]
        bad = valid & (lhs != rhs)
        pairs = int(valid.sum())
        for ia, j in np.argwhere(bad)[:limit]:
            v.append(_violation("e", first=K.morphisms[ia], second=K.morphisms[bb[ia, j]]))
    return Report(not v, v, {"objects": len(K.objects), "morphisms": len(K.morphisms), "pairs": pairs})


def identity_hom(G: FiniteGroupoid) -> GroupoidHom:
    return GroupoidHom(G, G, lambda x: x, lambda a: a, "id")


def forget_hom_a(G: FiniteGroupoid, n: int) -> GroupoidHom:
    """PB^a_n -> PB^a_{n-1}: drop the last object coordinate / the last nesting level."""
    if n < 2:
        raise GroupoidInputError("forgetful map needs n >= 2")
    return GroupoidHom(pb_a(G, n), pb_a(G, n - 1), lambda x: _prefix(x, n), lambda m: _shrink(m, n),
                       f"F^a_{n}")


def forget_hom_b(G: FiniteGroupoid, n: int) -> GroupoidHom:
    """PB^b_n -> PB^b_{n-1}: first n - 1 coordinates."""
    if n < 2:
        raise GroupoidInputError("forgetful map needs n >= 2")
    if n == 2:
        return GroupoidHom(pb_b(G, 2), G, lambda x: x[0], lambda m: m[0], "F^b_2")
    return GroupoidHom(pb_b(G, n), pb_b(G, n - 1), lambda x: x[:-1], lambda m: m[:-1], f"F^b_{n}")


def a_to_b(G: FiniteGroupoid, n: int) -> GroupoidHom:
    """Identity on objects, (alpha, x^(2), ..., x^(n)) -> (alpha, id_{x_2}, ..., id_{x_n})."""
    if n < 1:
        raise GroupoidInputError("n must be >= 1")
    if n == 1:
        return identity_hom(G)

    def f1(m):
        x = m[-1]
        first = m[0]
        return (first,) + tuple(G.unit[xi] for xi in x[1:])

    return GroupoidHom(pb_a(G, n), pb_b(G, n), lambda x: x, f1, f"a->b_{n}")


def is_b_fibration_discrete(h: GroupoidHom) -> tuple[bool, tuple | None]:
    """Surjectivity of alpha -> (f1(alpha), s(alpha)) onto L_1 x_{L_0} K_0.

    Returns (True, None) or (False, first missing pair)."""
    K, L = h.domain, h.codomain
    hit = {(h.f1(a), K.source[a]) for a in K.morphisms}
    for x in K.objects:
        for b in L.out_of(h.f0(x)):
            if (b, x) not in hit:
                return False, (b, x)
    return True, None


# ---------------------------------------------------------------------------
# the b-configuration groupoid of a translation groupoid is again a translation groupoid

def pb_b_translation_isomorphism(action: Action, n: int, limit: int = 20,
                                 G: FiniteGroupoid | None = None) -> Report:
    """Compare PB^b_n(G(M, H)) with G(PB_n(M), H^n) under ((h_i, x_i))_i <-> ((h_i)_i, (x_i)_i).

    Pass ``G`` to reuse an already built translation groupoid of ``action``."""
    G = translation_groupoid(action) if G is None else G
    left = pb_b(G, n)
    if n == 1:
        right = G
        phi = lambda m: m  # noqa: E731
    else:
        right = translation_groupoid(product_action([action] * n, pb_objects(G, n)), validate=False)
        phi = lambda m: (tuple(a[0] for a in m), tuple(a[1] for a in m))  # noqa: E731
    v: list[dict] = []
    if set(left.objects) != set(right.objects):
        v.append(_violation("objects", detail="object sets differ"))
    image = [phi(m) for m in left.morphisms]
    if len(set(image)) != len(image) or set(image) != set(right.morphisms):
        v.append(_violation("morphisms", detail="not a bijection onto G(PB_n(M), H^n)_1"))
    if v:
        return Report(False, v)
    hom = GroupoidHom(left, right, lambda x: x, phi, "iso")
    rep = check_hom(hom, limit)
    return Report(rep.ok, rep.violations, {"morphisms": len(left.morphisms), **rep.checked})


# ---------------------------------------------------------------------------
# JSON ingestion

def _key(v):
    return tuple(_key(x) for x in v) if isinstance(v, list) else v


def action_from_json(data: dict | str) -> Action:
    """Read ``{"points": [...], "group": {...}, "action": {...}}``.

    ``group`` is ``{"cyclic": q}``, ``{"klein": true}`` or
    ``{"elements": [...], "identity": e, "table": [[...], ...]}`` (row a, column b holds a*b).
    ``action`` maps each group element (as a string key) to a list of images of ``points``;
    for a cyclic group ``{"generator": [...]}`` gives the images under 1 only.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        points = tuple(_key(p) for p in data["points"])
        g = data["group"]
        act = data["action"]
    except (KeyError, TypeError) as err:
        raise GroupoidInputError(f"missing field {err}") from None
    if "cyclic" in g:
        q = int(g["cyclic"])
        if "generator" in act:
            images = [_key(p) for p in act["generator"]]
            return cyclic_action(points, dict(zip(points, images)), q)
        group = cyclic_group(q)
    elif g.get("klein"):
        group = klein_four()
    else:
        els = tuple(_key(e) for e in g["elements"])
        table = {(a, b): _key(g["table"][i][j]) for i, a in enumerate(els) for j, b in enumerate(els)}
        group = FiniteGroup(els, table, _key(g["identity"]))
    lookup = {str(e): e for e in group.elements}
    table = {}
    for key, images in act.items():
        if key not in lookup:
            raise GroupoidInputError(f"unknown group element {key!r} in action table")
        if len(images) != len(points):
            raise GroupoidInputError(f"action of {key} lists {len(images)} images for {len(points)} points")
        for x, y in zip(points, images):
            table[(lookup[key], x)] = _key(y)
    action = Action(group, points, table)
    errs = action.check()
    if errs:
        raise GroupoidInputError("not a group action: " + "; ".join(errs[:3]))
    return action


def random_action(rng, max_points: int = 8, max_order: int = 4) -> Action:
    """Random action of C_1..C_{max_order} or the Klein group on up to ``max_points`` points."""
    npts = rng.randint(1, max_points)
    points = tuple(range(1, npts + 1))
    choices = list(range(1, max_order + 1)) + (["klein"] if max_order >= 4 else [])
    kind = rng.choice(choices)
    if kind == "klein":
        return _random_klein_action(points, rng)
    q = kind
    # a permutation whose cycle lengths divide q
    divisors = [d for d in range(1, q + 1) if q % d == 0]
    remaining = list(points)
    rng.shuffle(remaining)
    perm = {}
    while remaining:
        d = rng.choice([d for d in divisors if d <= len(remaining)])
        cyc, remaining = remaining[:d], remaining[d:]
        for i, x in enumerate(cyc):
            perm[x] = cyc[(i + 1) % d]
    return cyclic_action(points, perm, q)


def _random_klein_action(points, rng) -> Action:
    # orbits are cosets of subgroups; pick for each block a subgroup index 1, 2 or 4
    G = klein_four()
    a, b = (1, 0), (0, 1)
    remaining = list(points)
    rng.shuffle(remaining)
    perms = {e: {} for e in G.elements}
    while remaining:
        size = rng.choice([s for s in (1, 2, 4) if s <= len(remaining)])
        block, remaining = remaining[:size], remaining[size:]
        if size == 1:
            for e in G.elements:
                perms[e][block[0]] = block[0]
        elif size == 2:
            kernel = rng.choice([a, b, (1, 1)])
            for e in G.elements:
                moves = e != G.identity and e != kernel
                perms[e][block[0]] = block[1] if moves else block[0]
                perms[e][block[1]] = block[0] if moves else block[1]
        else:
            for e in G.elements:
                for i, x in enumerate(block):
                    # regular action: identify block with G
                    g = G.elements[i]
                    perms[e][x] = block[G.elements.index(G.mul(e, g))]
    act = action_from_permutations(G, points, lambda h: perms[h])
    errs = act.check()
    if errs:
        raise GroupoidInputError("; ".join(errs[:3]))
    return act
