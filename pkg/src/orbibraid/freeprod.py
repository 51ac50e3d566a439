"""
Free products C_{q_1} * ... * C_{q_m} * F_rho of finite cyclic groups and a free group.

Elements are kept in alternating syllable normal form: a tuple of (generator, exponent)
pairs where no two neighbours share a generator, torsion exponents live in [1, q_r - 1]
and free exponents are arbitrary nonzero integers.  Two words are equal in the group
iff their normal forms are equal as tuples.

Text form: ``x1^2 p3^-1 x2`` where ``x<r>`` is the r-th torsion generator and ``p<s>``
the s-th free generator (both 1-based).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

TORSION = "x"
FREE = "p"


class SignatureError(ValueError):
    """Generator out of range for a signature, or two signatures that do not match."""


class WordParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class ProductSignature:
    cone_orders: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(int(q) for q in self.cone_orders))
        if any(q < 2 for q in self.cone_orders):
            raise SignatureError(f"cone orders must be >= 2, got {self.cone_orders}")
        if self.free_rank < 0:
            raise SignatureError(f"free rank must be >= 0, got {self.free_rank}")

    @property
    def torsion_rank(self) -> int:
        return len(self.cone_orders)

    def generators(self) -> list[tuple[str, int]]:
        gens = [(TORSION, r) for r in range(1, self.torsion_rank + 1)]
        gens += [(FREE, s) for s in range(1, self.free_rank + 1)]
        return gens

    def check(self, kind: str, index: int) -> None:
        if kind == TORSION:
            if not 1 <= index <= self.torsion_rank:
                raise SignatureError(f"no torsion generator x{index} in {self}")
        elif kind == FREE:
            if not 1 <= index <= self.free_rank:
                raise SignatureError(f"no free generator p{index} in {self}")
        else:
            raise SignatureError(f"unknown generator kind {kind!r}")

    def order(self, kind: str, index: int) -> int | None:
        """Order of a generator, None for infinite order."""
        return self.cone_orders[index - 1] if kind == TORSION else None


@dataclass(frozen=True, order=True)
class Syllable:
    kind: str
    index: int
    exponent: int

    @property
    def generator(self) -> tuple[str, int]:
        return (self.kind, self.index)

    def __str__(self) -> str:
        base = f"{self.kind}{self.index}"
        return base if self.exponent == 1 else f"{base}^{self.exponent}"


@dataclass(frozen=True)
class FreeProductWord:
    syllables: tuple[Syllable, ...] = ()
    signature: ProductSignature = field(default_factory=ProductSignature, compare=False)

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __str__(self) -> str:
        return format_word(self)

    def __mul__(self, other: FreeProductWord) -> FreeProductWord:
        return multiply(self, other, self.signature)

    def letter_length(self) -> int:
        """Length counted in generator letters, using the shortest residue for torsion."""
        total = 0
        for syl in self.syllables:
            q = self.signature.order(syl.kind, syl.index)
            e = abs(syl.exponent) if q is None else min(syl.exponent, q - syl.exponent)
            total += e
        return total


def _normalise(sig: ProductSignature, kind: str, index: int, exponent: int) -> int:
    q = sig.order(kind, index)
    return exponent if q is None else exponent % q


def _push(stack: list[Syllable], sig: ProductSignature, kind: str, index: int, exponent: int):
    if stack and stack[-1].kind == kind and stack[-1].index == index:
        exponent += stack.pop().exponent
    exponent = _normalise(sig, kind, index, exponent)
    if exponent:
        stack.append(Syllable(kind, index, exponent))


def reduce(raw: Iterable, sig: ProductSignature) -> FreeProductWord:
    """Normal form of a sequence of letters.

    Each item is either a ``Syllable`` or a ``(kind, index, exponent)`` triple; a letter
    with exponent +-1 is simply a syllable of exponent +-1.
    """
    stack: list[Syllable] = []
    for item in raw:
        if isinstance(item, Syllable):
            kind, index, exponent = item.kind, item.index, item.exponent
        else:
            kind, index, exponent = item
        sig.check(kind, index)
        if exponent:
            _push(stack, sig, kind, index, int(exponent))
    return FreeProductWord(tuple(stack), sig)


def identity(sig: ProductSignature) -> FreeProductWord:
    return FreeProductWord((), sig)


def _same_signature(a: FreeProductWord, b: FreeProductWord, sig: ProductSignature | None):
    if sig is None:
        sig = a.signature
    for w in (a, b):
        if w.syllables and w.signature != sig:
            raise SignatureError(f"word over {w.signature} used with {sig}")
    return sig


def multiply(a: FreeProductWord, b: FreeProductWord, sig: ProductSignature | None = None) -> FreeProductWord:
    sig = _same_signature(a, b, sig)
    stack = list(a.syllables)
    for i, syl in enumerate(b.syllables):
        if stack and stack[-1].generator == syl.generator:
            _push(stack, sig, syl.kind, syl.index, syl.exponent)
            continue
        # nothing further can cancel once the junction is alternating
        stack.extend(b.syllables[i:])
        break
    return FreeProductWord(tuple(stack), sig)


def invert(a: FreeProductWord, sig: ProductSignature | None = None) -> FreeProductWord:
    sig = a.signature if sig is None else sig
    out = []
    for syl in reversed(a.syllables):
        out.append(Syllable(syl.kind, syl.index, _normalise(sig, syl.kind, syl.index, -syl.exponent)))
    return FreeProductWord(tuple(out), sig)


def power(a: FreeProductWord, d: int, sig: ProductSignature | None = None) -> FreeProductWord:
    sig = a.signature if sig is None else sig
    base = a if d >= 0 else invert(a, sig)
    out = identity(sig)
    for _ in range(abs(d)):
        out = multiply(out, base, sig)
    return out


def is_identity(a: FreeProductWord) -> bool:
    return not a.syllables


def letters(a: FreeProductWord) -> list[tuple[str, int, int]]:
    """Expand into +-1 letters; torsion syllables expand with their stored positive exponent."""
    out = []
    for syl in a.syllables:
        step = 1 if syl.exponent > 0 else -1
        out.extend([(syl.kind, syl.index, step)] * abs(syl.exponent))
    return out


def format_word(a: FreeProductWord) -> str:
    return " ".join(str(s) for s in a.syllables) if a.syllables else "1"


_TOKEN = re.compile(r"\s*(?:([xp])(\d+)(?:\^(-?\d+))?)")


def parse_word(text: str, sig: ProductSignature) -> FreeProductWord:
    """Parse ``x1^2 p3^-1 x2`` (``1`` or empty string for the identity)."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return identity(sig)
    raw = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise WordParseError(f"unexpected input {text[start:start + 8]!r}", start)
        kind, idx, exp = m.group(1), int(m.group(2)), m.group(3)
        try:
            sig.check(kind, idx)
        except SignatureError as err:
            raise WordParseError(str(err), m.start(1)) from None
        raw.append((kind, idx, int(exp) if exp is not None else 1))
        pos = m.end()
    return reduce(raw, sig)


def random_letters(sig: ProductSignature, length: int, rng) -> list[tuple[str, int, int]]:
    gens = sig.generators()
    if not gens:
        return []
    return [(*gens[rng.randrange(len(gens))], rng.choice((1, -1))) for _ in range(length)]


def to_pairs(a: FreeProductWord) -> list[list]:
    return [[f"{s.kind}{s.index}", s.exponent] for s in a.syllables]


def signature_of(orders: Sequence[int], free_rank: int) -> ProductSignature:
    return ProductSignature(tuple(orders), free_rank)
