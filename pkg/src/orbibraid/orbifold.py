"""
Pure orbifold braid groups of the plane with k punctures and m cone points.

Words are written in the generators

* ``B[i,j]`` (1 <= i < j <= n)  strand j loops around strand i,
* ``P[i,s]`` (1 <= s <= k)      strand i loops around puncture s,
* ``X[i,r]`` (1 <= r <= m)      strand i loops around cone point r, of order q_r.

A word lifts letterwise to a classical pure braid on N = n + k + m strands: strands
1..n, then the punctures at n+1..n+k, then the cone points at n+k+1..N.  Forgetting the
last strand (``delta``) and re-adding it (``section``) are letter operations.  Kernel
elements of ``delta`` are rewritten in the basis {X[n,r], P[n,s], B[i,n]} by tracing
strand n (``stretch``), and iterating down the tower gives the combed normal form.

Coordinates at level l are free-product words over ProductSignature(q, k + l - 1): torsion
generator x_r is X[l,r], free generator p_s is P[l,s] for s <= k and p_{k+i} is B[i,l].
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import braids
from .braids import BraidWord, NotInKernelError
from .freeprod import (
    FREE,
    TORSION,
    FreeProductWord,
    ProductSignature,
    WordParseError,
)
from . import freeprod


class OrbWordError(ValueError):
    pass


@dataclass(frozen=True)
class Surface:
    punctures: int = 0
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(int(q) for q in self.cone_orders))
        if self.punctures < 0:
            raise OrbWordError("number of punctures must be >= 0")
        if any(q < 2 for q in self.cone_orders):
            raise OrbWordError(f"cone orders must be >= 2, got {self.cone_orders}")

    @property
    def k(self) -> int:
        return self.punctures

    @property
    def m(self) -> int:
        return len(self.cone_orders)

    def __str__(self):
        return f"(k={self.k}, q=[{', '.join(map(str, self.cone_orders))}])"


_SURFACE = re.compile(r"\(\s*k\s*=\s*(\d+)\s*,\s*q\s*=\s*\[([\d,\s]*)\]\s*\)")


def parse_surface(text: str) -> Surface:
    m = _SURFACE.fullmatch(text.strip())
    if not m:
        raise WordParseError(f"cannot read surface {text!r}", 0)
    qs = [int(x) for x in m.group(2).replace(",", " ").split()]
    return Surface(int(m.group(1)), tuple(qs))


@dataclass(frozen=True, order=True)
class OrbGenerator:
    kind: str  # "B", "P" or "X"
    a: int
    b: int

    def check(self, surface: Surface, n: int) -> None:
        ok = {
            "B": 1 <= self.a < self.b <= n,
            "P": 1 <= self.a <= n and 1 <= self.b <= surface.k,
            "X": 1 <= self.a <= n and 1 <= self.b <= surface.m,
        }.get(self.kind, False)
        if not ok:
            raise OrbWordError(f"{self} is not a generator for n={n} over {surface}")

    def involves(self, strand: int) -> bool:
        return self.a == strand or (self.kind == "B" and self.b == strand)

    def lift_pair(self, surface: Surface, n: int) -> tuple[int, int]:
        if self.kind == "B":
            return self.a, self.b
        if self.kind == "P":
            return self.a, n + self.b
        return self.a, n + surface.k + self.b

    def __str__(self):
        return f"{self.kind}[{self.a},{self.b}]"


def B(i: int, j: int) -> OrbGenerator:
    return OrbGenerator("B", i, j)


def P(i: int, s: int) -> OrbGenerator:
    return OrbGenerator("P", i, s)


def X(i: int, r: int) -> OrbGenerator:
    return OrbGenerator("X", i, r)


Letter = tuple[OrbGenerator, int]


@dataclass(frozen=True)
class OrbWord:
    surface: Surface
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise OrbWordError("need at least one strand")
        object.__setattr__(self, "letters", tuple((g, int(s)) for g, s in self.letters))
        for g, s in self.letters:
            g.check(self.surface, self.strands)
            if s not in (1, -1):
                raise OrbWordError(f"letter signs are +-1, got {s}")

    def _compatible(self, other: OrbWord):
        if (self.surface, self.strands) != (other.surface, other.strands):
            raise OrbWordError(
                f"words over {self.surface}/n={self.strands} and {other.surface}/n={other.strands}")

    def __mul__(self, other: OrbWord) -> OrbWord:
        self._compatible(other)
        return OrbWord(self.surface, self.strands, self.letters + other.letters)

    def inverse(self) -> OrbWord:
        return OrbWord(self.surface, self.strands, tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, d: int) -> OrbWord:
        base = self if d >= 0 else self.inverse()
        return OrbWord(self.surface, self.strands, base.letters * abs(d))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_orbword(self)

    def freely_reduced(self) -> OrbWord:
        out: list[Letter] = []
        for g, s in self.letters:
            if out and out[-1] == (g, -s):
                out.pop()
            else:
                out.append((g, s))
        return OrbWord(self.surface, self.strands, tuple(out))


def word(surface: Surface, n: int, *items) -> OrbWord:
    """Build a word from generators, ``(generator, exponent)`` pairs or OrbWords."""
    letters: list[Letter] = []
    for it in items:
        if isinstance(it, OrbGenerator):
            letters.append((it, 1))
        elif isinstance(it, OrbWord):
            letters.extend(it.letters)
        else:
            g, e = it
            letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return OrbWord(surface, n, tuple(letters))


def generators(surface: Surface, n: int) -> list[OrbGenerator]:
    if n < 1:
        raise OrbWordError("need at least one strand")
    gens = [B(i, j) for j in range(2, n + 1) for i in range(1, j)]
    gens += [P(i, s) for i in range(1, n + 1) for s in range(1, surface.k + 1)]
    gens += [X(i, r) for i in range(1, n + 1) for r in range(1, surface.m + 1)]
    return gens


def kernel_basis(surface: Surface, level: int) -> list[OrbGenerator]:
    """Free-product basis of the kernel at ``level``, in coordinate order x_1.., p_1.."""
    return ([X(level, r) for r in range(1, surface.m + 1)]
            + [P(level, s) for s in range(1, surface.k + 1)]
            + [B(i, level) for i in range(1, level)])


def level_signature(surface: Surface, level: int) -> ProductSignature:
    return ProductSignature(surface.cone_orders, surface.k + level - 1)


def coordinate_generator(surface: Surface, level: int, kind: str, index: int) -> OrbGenerator:
    if kind == TORSION:
        return X(level, index)
    if index <= surface.k:
        return P(level, index)
    return B(index - surface.k, level)


def _coordinate_of(surface: Surface, level: int, g: OrbGenerator) -> tuple[str, int]:
    if g.kind == "X":
        return TORSION, g.b
    if g.kind == "P":
        return FREE, g.b
    return FREE, surface.k + g.a


# ---------------------------------------------------------------------------
# lift, delta, section

def lift(w: OrbWord) -> BraidWord:
    """Letterwise lift to the classical pure braid group on n + k + m strands."""
    N = w.strands + w.surface.k + w.surface.m
    out: list[int] = []
    cache: dict[OrbGenerator, tuple[int, ...]] = {}
    for g, s in w.letters:
        lw = cache.get(g)
        if lw is None:
            lw = cache[g] = braids.pure_generator(*g.lift_pair(w.surface, w.strands), N).letters
        out.extend(lw if s > 0 else braids.free_inverse(lw))
    return BraidWord(N, tuple(out))


def delta(w: OrbWord) -> OrbWord:
    """Forget strand n: drop every letter that mentions it."""
    n = w.strands
    if n < 2:
        raise OrbWordError("cannot forget the only strand")
    return OrbWord(w.surface, n - 1, tuple((g, s) for g, s in w.letters if not g.involves(n)))


def section(v: OrbWord) -> OrbWord:
    """Add a new last strand running straight and over everything else."""
    return OrbWord(v.surface, v.strands + 1, v.letters)


def _freely_trivial(letters: Sequence[Letter]) -> bool:
    stack: list[Letter] = []
    for g, s in letters:
        if stack and stack[-1] == (g, -s):
            stack.pop()
        else:
            stack.append((g, s))
    return not stack


# ---------------------------------------------------------------------------
# stretching and combing

def _trace_to_coordinate(trace: Sequence[int], surface: Surface, n: int) -> FreeProductWord:
    sig = level_signature(surface, n)
    raw = []
    for t in trace:
        a, e = abs(t), (1 if t > 0 else -1)
        if a < n:
            raw.append((FREE, surface.k + a, e))
        elif a <= n + surface.k:
            raw.append((FREE, a - n, e))
        else:
            raw.append((TORSION, a - n - surface.k, e))
    return freeprod.reduce(raw, sig)


def _reindex_down(x: int, n: int) -> int:
    """F_N letter (x != +-n) to the free group on N - 1 letters with t_n removed."""
    return x if abs(x) < n else (x - 1 if x > 0 else x + 1)


def _reindex_up(x: int, n: int) -> int:
    return x if abs(x) < n else (x + 1 if x > 0 else x - 1)


_LOWERED: dict[tuple, tuple[tuple, tuple[int, ...]]] = {}


def _lowered(g: OrbGenerator, s: int, surface: Surface, n: int):
    """For a letter g^s not touching strand n: (images of the Artin action of the lowered
    g^-s on N - 1 strands, trace of t_n's conjugator under lift(g^s) with t_n deleted)."""
    key = (g, s, surface, n)
    hit = _LOWERED.get(key)
    if hit is not None:
        return hit
    N = n + surface.k + surface.m
    i, j = g.lift_pair(surface, n)
    low = braids.pure_generator(i, j if j < n else j - 1, N - 1)
    endo = braids.artin_action(low.inverse() if s > 0 else low)
    up = braids.pure_generator(i, j, N)
    img = braids.image(up if s > 0 else up.inverse(), (n,))
    u = braids._conjugator(img, n)
    pushed = braids.free_reduce(_reindex_down(x, n) for x in u if abs(x) != n)
    _LOWERED[key] = hit = (endo.images, pushed)
    return hit


def _apply(images: Sequence[tuple[int, ...]], inverses: Sequence[tuple[int, ...]],
           w: Sequence[int]) -> list[int]:
    out: list[int] = []
    push, pop = out.append, out.pop
    for t in w:
        for y in (images[t - 1] if t > 0 else inverses[-t - 1]):
            if out and out[-1] == -y:
                pop()
            else:
                push(y)
    return out


def _schreier_trace(w: OrbWord) -> tuple[int, ...]:
    """Strand-n trace of a kernel word without building the lifted braid.

    Writing w = g_1 ... g_L and p_j for the prefix of letters not touching strand n,
    w equals the product of p_{j-1} y_j p_{j-1}^-1 over the letters y_j that do touch
    it.  Each such conjugate traces to a * E(t_y) * a^-1 where E is the Artin action
    of p^-1 with strand n forgotten and a collects the drift of t_n's conjugator; both
    are updated letter by letter inside the free group with t_n already deleted.
    """
    surface, n = w.surface, w.strands
    M = n + surface.k + surface.m - 1
    images: list[tuple[int, ...]] = [(t,) for t in range(1, M + 1)]
    inverses: list[tuple[int, ...]] = [(-t,) for t in range(1, M + 1)]
    drift: list[int] = []
    out: list[int] = []
    for g, s in w.letters:
        if g.involves(n):
            i, j = g.lift_pair(surface, n)
            ty = i if j == n else j - 1
            out.extend(drift)
            out.extend(images[ty - 1] if s > 0 else inverses[ty - 1])
            out.extend(-x for x in reversed(drift))
            continue
        low_images, pushed = _lowered(g, s, surface, n)
        new, new_inv = list(images), list(inverses)
        for t in range(M):
            if low_images[t] != (t + 1,):
                new[t] = tuple(_apply(images, inverses, low_images[t]))
                new_inv[t] = braids.free_inverse(new[t])
        images, inverses = new, new_inv
        if pushed:
            drift = list(braids.free_reduce(drift + _apply(images, inverses, pushed)))
    return tuple(_reindex_up(x, n) for x in braids.free_reduce(out))


def stretch(w: OrbWord, method: str = "schreier", verify: bool = False) -> FreeProductWord:
    """Rewrite a kernel element of ``delta`` in the basis {X[n,r], P[n,s], B[i,n]}.

    The input must satisfy: ``delta(w)`` cancels to the empty word by free reduction.

    ``method="lift"`` follows the definition literally: lift to N strands, take the
    strand-n trace of the Artin action, rename t_i as basis generators and reduce with
    the torsion orders.  ``method="schreier"`` (default) computes the same trace inside
    the quotient free group and avoids the blow-up of t_n letters on long words.
    ``verify`` re-checks the classical kernel condition on the lifted braid.
    """
    n = w.strands
    if n >= 2 and not _freely_trivial(delta(w).letters):
        raise NotInKernelError("not a delta-kernel element: delta(w) is not freely trivial")
    if n == 1:
        return _base_coordinate(w)
    if method == "lift" or verify:
        trace = braids.strand_trace(lift(w), n, verify=verify)
    elif method == "schreier":
        trace = _schreier_trace(w)
    else:
        raise ValueError(f"unknown stretch method {method!r}")
    return _trace_to_coordinate(trace, w.surface, n)


def expand(u: FreeProductWord, surface: Surface, level: int, strands: int | None = None) -> OrbWord:
    """Write a level coordinate back as a word in the orbifold generators."""
    strands = level if strands is None else strands
    letters = [(coordinate_generator(surface, level, kind, idx), e)
               for kind, idx, e in freeprod.letters(u)]
    return OrbWord(surface, strands, tuple(letters))


@dataclass(frozen=True)
class CombedForm:
    surface: Surface
    strands: int
    coordinates: tuple[FreeProductWord, ...]  # (u_n, u_{n-1}, ..., u_1)

    def levels(self) -> list[tuple[int, FreeProductWord]]:
        return [(self.strands - i, u) for i, u in enumerate(self.coordinates)]

    def is_identity(self) -> bool:
        return all(freeprod.is_identity(u) for u in self.coordinates)

    def to_json(self) -> list:
        out = []
        for level, u in self.levels():
            out.append([[str(coordinate_generator(self.surface, level, s.kind, s.index)), s.exponent]
                        for s in u.syllables])
        return out

    def __str__(self):
        lines = []
        for level, u in self.levels():
            terms = [f"{coordinate_generator(self.surface, level, s.kind, s.index)}"
                     + ("" if s.exponent == 1 else f"^{s.exponent}") for s in u.syllables]
            lines.append(f"u{level} = {' '.join(terms) if terms else '1'}")
        return "\n".join(lines)


def _base_coordinate(w: OrbWord) -> FreeProductWord:
    sig = level_signature(w.surface, 1)
    return freeprod.reduce(((*_coordinate_of(w.surface, 1, g), s) for g, s in w.letters), sig)


def comb(w: OrbWord) -> CombedForm:
    coords: list[FreeProductWord] = []
    cur = w
    while cur.strands > 1:
        lower = delta(cur)
        # free cancellation is valid in the group and shortens the trace computation
        top = (cur * section(lower).inverse()).freely_reduced()
        coords.append(stretch(top) if top.letters else freeprod.identity(level_signature(w.surface, cur.strands)))
        cur = lower
    coords.append(_base_coordinate(cur))
    return CombedForm(w.surface, w.strands, tuple(coords))


def recombine(cf: CombedForm) -> OrbWord:
    """Product expand(u_n) expand(u_{n-1}) ... expand(u_1), all read on n strands."""
    letters: list[Letter] = []
    for level, u in cf.levels():
        letters.extend(expand(u, cf.surface, level, cf.strands).letters)
    return OrbWord(cf.surface, cf.strands, tuple(letters))


def is_identity(w: OrbWord) -> bool:
    return comb(w).is_identity()


def equal(w1: OrbWord, w2: OrbWord) -> bool:
    w1._compatible(w2)
    return is_identity(w1 * w2.inverse())


def polyvf_series(surface: Surface, n: int) -> list[ProductSignature]:
    """Kernel signatures of the combing tower, top level n first."""
    if n < 1:
        raise OrbWordError("need at least one strand")
    return [level_signature(surface, level) for level in range(n, 0, -1)]


# ---------------------------------------------------------------------------
# conjugation table

@dataclass
class ConjugationTable:
    surface: Surface
    strands: int
    entries: dict[tuple[OrbGenerator, OrbGenerator], FreeProductWord] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        n = self.strands
        return {
            "surface": {"k": self.surface.k, "q": list(self.surface.cone_orders)},
            "n": n,
            "entries": [
                {"g": str(g), "y": str(y),
                 "value": [[str(coordinate_generator(self.surface, n, s.kind, s.index)), s.exponent]
                           for s in u.syllables]}
                for (g, y), u in self.entries.items()
            ],
            "violations": self.violations,
        }


def conjugation_table(surface: Surface, n: int, verify: bool = True) -> ConjugationTable:
    """stretch(g y g^-1) for every generator g and kernel basis element y at level n.

    Each entry is computed on the lifted braid with the full classical kernel check,
    and with ``verify`` its expansion is compared against the conjugate through the
    Artin action before torsion is applied.  Failures are collected, not raised.
    """
    if n < 2:
        raise OrbWordError("conjugation table needs n >= 2")
    table = ConjugationTable(surface, n)
    for g in generators(surface, n):
        for y in kernel_basis(surface, n):
            conj = word(surface, n, g, y, (g, -1))
            try:
                trace = braids.strand_trace(lift(conj), n, verify=True)
            except NotInKernelError as err:
                table.violations.append({"g": str(g), "y": str(y), "error": str(err)})
                continue
            if verify:
                # torsion-free expansion in the lifted group must reproduce the conjugate
                untwisted = _untorsioned_expansion(trace, surface, n)
                check = lift(conj * untwisted.inverse())
                if not braids.is_trivial(check):
                    table.violations.append({"g": str(g), "y": str(y),
                                             "error": "expansion does not match conjugate"})
                    continue
            table.entries[(g, y)] = _trace_to_coordinate(trace, surface, n)
    return table


def _untorsioned_expansion(trace: Sequence[int], surface: Surface, n: int) -> OrbWord:
    letters: list[Letter] = []
    for t in trace:
        a, e = abs(t), (1 if t > 0 else -1)
        if a < n:
            g = B(a, n)
        elif a <= n + surface.k:
            g = P(n, a - n)
        else:
            g = X(n, a - n - surface.k)
        letters.append((g, e))
    return OrbWord(surface, n, tuple(letters))


def stretch_expansion(w: OrbWord) -> OrbWord:
    """Basis word for a kernel element before torsion reduction (equal to w in the lifted group)."""
    if w.strands >= 2 and not _freely_trivial(delta(w).letters):
        raise NotInKernelError("not a delta-kernel element: delta(w) is not freely trivial")
    return _untorsioned_expansion(braids.strand_trace(lift(w), w.strands, verify=False),
                                  w.surface, w.strands)


# ---------------------------------------------------------------------------
# text form

_ORB = re.compile(r"\s*([BPX])\[\s*(\d+)\s*,\s*(\d+)\s*\](?:\^(-?\d+))?")


def parse_orbword(text: str, surface: Surface, n: int) -> OrbWord:
    """Parse ``B[1,3] P[3,2]^-1 X[2,1]^3``; ``1`` or an empty string is the identity."""
    if text.strip() in ("", "1"):
        return OrbWord(surface, n)
    letters: list[Letter] = []
    pos = 0
    while pos < len(text) and text[pos:].strip():
        m = _ORB.match(text, pos)
        if not m:
            raise WordParseError(f"expected a generator like B[i,j], got {text[pos:pos + 8].strip()!r}",
                                 pos + len(text[pos:]) - len(text[pos:].lstrip()))
        g = OrbGenerator(m.group(1), int(m.group(2)), int(m.group(3)))
        try:
            g.check(surface, n)
        except OrbWordError as err:
            raise WordParseError(str(err), m.start(1)) from None
        e = int(m.group(4)) if m.group(4) is not None else 1
        letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
        pos = m.end()
    return OrbWord(surface, n, tuple(letters))


def format_orbword(w: OrbWord) -> str:
    if not w.letters:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(w.letters):
        g, s = w.letters[i]
        j = i
        while j < len(w.letters) and w.letters[j] == (g, s):
            j += 1
        e = s * (j - i)
        parts.append(str(g) if e == 1 else f"{g}^{e}")
        i = j
    return " ".join(parts)


def combed_json(cf: CombedForm) -> str:
    return json.dumps(cf.to_json())


def random_word(surface: Surface, n: int, length: int, rng) -> OrbWord:
    gens = generators(surface, n)
    if not gens:
        return OrbWord(surface, n)
    return OrbWord(surface, n, tuple((gens[rng.randrange(len(gens))], rng.choice((1, -1)))
                                     for _ in range(length)))


def letters_of(items: Iterable[Letter], surface: Surface, n: int) -> OrbWord:
    return OrbWord(surface, n, tuple(items))
