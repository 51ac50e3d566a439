"""
Classical braid words, the Artin action on a free group, and strand traces.

Conventions (fixed once, used everywhere):

* A braid word is read left to right, which is the order the braids are stacked
  top to bottom.  Letters are signed integers, ``+i`` for sigma_i and ``-i`` for its
  inverse, 1 <= i < N.
* Free group words over t_1..t_N are tuples of signed integers as well.
* sigma_i acts by t_i -> t_i t_{i+1} t_i^-1, t_{i+1} -> t_i, fixing the others.  The
  action is a right action: the first letter of a braid word is applied first, so
  ``artin_action(w1 + w2) == artin_action(w2) o artin_action(w1)``.  With this choice the
  strand trace of every generator B_{ij} with i or j equal to the traced strand is a
  single free letter (see ``strand_trace``).

Mirroring sigma_i <-> sigma_i^-1 gives an isomorphic theory; only internal consistency
is observable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .freeprod import WordParseError

FreeWord = tuple[int, ...]


class BraidError(ValueError):
    pass


class NotInKernelError(ValueError):
    """The braid does not lie in the kernel of forgetting the traced strand."""


# ---------------------------------------------------------------------------
# free group words

def free_reduce(word: Iterable[int]) -> FreeWord:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_inverse(word: Sequence[int]) -> FreeWord:
    return tuple(-x for x in reversed(word))


def free_multiply(*words: Sequence[int]) -> FreeWord:
    return free_reduce(x for w in words for x in w)


def kill_generator(word: Sequence[int], gen: int) -> FreeWord:
    """Image in the quotient free group obtained by setting t_gen = 1."""
    return free_reduce(x for x in word if abs(x) != gen)


def format_free(word: Sequence[int], symbol: str = "t") -> str:
    if not word:
        return "1"
    return " ".join(f"{symbol}{x}" if x > 0 else f"{symbol}{-x}^-1" for x in word)


# ---------------------------------------------------------------------------
# braid words

@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidError(f"sigma_{abs(x)} is not a generator on {self.strands} strands")

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise BraidError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, free_inverse(self.letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_braid(self)


def pure_generator(i: int, j: int, strands: int) -> BraidWord:
    """B_ij = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1."""
    if not (1 <= i < j <= strands):
        raise BraidError(f"pure generator B_{i},{j} needs 1 <= i < j <= {strands}")
    down = list(range(j - 1, i, -1))
    return BraidWord(strands, tuple(down) + (i, i) + tuple(-x for x in reversed(down)))


def permutation(w: BraidWord) -> tuple[int, ...]:
    """Induced permutation as a 1-based tuple: strand starting at position p ends at perm[p-1]."""
    pos = list(range(1, w.strands + 1))  # pos[s-1] = current position of strand s
    where = list(range(1, w.strands + 1))  # where[p-1] = strand at position p
    for x in w.letters:
        i = abs(x)
        a, b = where[i - 1], where[i]
        where[i - 1], where[i] = b, a
        pos[a - 1], pos[b - 1] = i + 1, i
    return tuple(pos)


def is_pure(w: BraidWord) -> bool:
    return permutation(w) == tuple(range(1, w.strands + 1))


_LETTER_IMAGES: dict[tuple[int, int], FreeWord] = {}


def _letter_image(x: int, t: int) -> FreeWord:
    """Image of the free letter t (signed) under the braid letter x (signed)."""
    key = (x, t)
    cached = _LETTER_IMAGES.get(key)
    if cached is not None:
        return cached
    i, a = abs(x), abs(t)
    if x > 0:
        img = (i, i + 1, -i) if a == i else (i,) if a == i + 1 else (a,)
    else:
        img = (i + 1,) if a == i else (-(i + 1), i, i + 1) if a == i + 1 else (a,)
    if t < 0:
        img = free_inverse(img)
    _LETTER_IMAGES[key] = img
    return img


def _apply_letter(x: int, word: Sequence[int]) -> FreeWord:
    i = abs(x)
    out: list[int] = []
    for t in word:
        img = (t,) if abs(t) not in (i, i + 1) else _letter_image(x, t)
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def image(w: BraidWord, word: Sequence[int]) -> FreeWord:
    """Image of a free word under the Artin action of w."""
    cur = free_reduce(word)
    for x in w.letters:
        cur = _apply_letter(x, cur)
    return cur


@dataclass(frozen=True)
class FreeGroupEndo:
    images: tuple[FreeWord, ...]

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, word: Sequence[int]) -> FreeWord:
        out: list[int] = []
        for t in word:
            img = self.images[abs(t) - 1]
            out.extend(img if t > 0 else free_inverse(img))
        return free_reduce(out)

    def then(self, other: FreeGroupEndo) -> FreeGroupEndo:
        """Right-action composition: apply self, then other."""
        return FreeGroupEndo(tuple(other(img) for img in self.images))

    def is_identity(self) -> bool:
        return all(img == (g,) for g, img in enumerate(self.images, start=1))

    @classmethod
    def identity(cls, rank: int) -> FreeGroupEndo:
        return cls(tuple((g,) for g in range(1, rank + 1)))


def artin_action(w: BraidWord) -> FreeGroupEndo:
    images = [(g,) for g in range(1, w.strands + 1)]
    for x in w.letters:
        i = abs(x)
        # only t_i, t_{i+1} occurrences change; rewrite every image
        images = [_apply_letter(x, img) if any(abs(t) in (i, i + 1) for t in img) else img
                  for img in images]
    return FreeGroupEndo(tuple(images))


def is_trivial(w: BraidWord) -> bool:
    """Word problem in B_N via faithfulness of the Artin action."""
    return artin_action(w).is_identity()


def _conjugator(img: FreeWord, tau: int) -> FreeWord:
    n = len(img)
    if n % 2 == 0 or img[n // 2] != tau:
        raise NotInKernelError(f"image of t{tau} is not a conjugate of t{tau}")
    u = img[: n // 2]
    if img[n // 2 + 1:] != free_inverse(u):
        raise NotInKernelError(f"image of t{tau} is not a conjugate of t{tau}")
    return u


def strand_trace(w: BraidWord, tau: int, verify: bool = True) -> FreeWord:
    """Loop traced by strand ``tau`` in the complement of the other strands.

    For w in the kernel of forgetting strand ``tau`` the Artin image of t_tau is
    u t_tau u^-1 with u freely reduced.  The trace is u pushed into the free group on
    {t_j : j != tau}, i.e. with every t_tau letter deleted; deletion both removes the
    right-hand t_tau^k ambiguity of u and makes the trace a homomorphism on the kernel.

    With ``verify`` the kernel condition is checked in full (every other t_j must map
    to itself modulo t_tau), otherwise only the conjugacy shape of the image is.
    """
    if not 1 <= tau <= w.strands:
        raise BraidError(f"strand {tau} out of range")
    if verify:
        endo = artin_action(w)
        for j, img in enumerate(endo.images, start=1):
            if j != tau and kill_generator(img, tau) != (j,):
                raise NotInKernelError(
                    f"braid does not become trivial after forgetting strand {tau} "
                    f"(t{j} -> {format_free(img)})")
        img = endo.images[tau - 1]
    else:
        img = image(w, (tau,))
    return kill_generator(_conjugator(img, tau), tau)


# ---------------------------------------------------------------------------
# text form

_SIGMA = re.compile(r"\s*s(\d+)(?:\^(-?\d+))?")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``s1 s2^-1 s1`` into a braid word on ``strands`` strands."""
    letters: list[int] = []
    pos = 0
    while pos < len(text) and text[pos:].strip():
        m = _SIGMA.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise WordParseError(f"unexpected input {text[start:start + 8]!r}", start)
        i = int(m.group(1))
        if not 1 <= i < strands:
            raise WordParseError(f"s{i} is not a generator on {strands} strands", m.start(1))
        e = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([i if e > 0 else -i] * abs(e))
        pos = m.end()
    return BraidWord(strands, tuple(letters))


def format_braid(w: BraidWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in w.letters)
