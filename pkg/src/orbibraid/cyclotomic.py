"""
Exact arithmetic in Q(xi), xi a primitive 2k-th root of unity.

Elements are rational coefficient vectors in the power basis 1, xi, ..., xi^(d-1),
d = phi(2k), reduced modulo the cyclotomic polynomial Phi_{2k}.  Everything is
Fraction based; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Poly = tuple[Fraction, ...]  # low degree first, no trailing zeros


def _trim(c: Sequence) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def _polydivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a = list(_trim(a))
    return _trim(q), _trim(a)


def _polymul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _polysub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = a + (Fraction(0),) * (n - len(a))
    b = b + (Fraction(0),) * (n - len(b))
    return _trim(x - y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    """Phi_n by dividing x^n - 1 by Phi_d for the proper divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    num = _trim([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            num, rem = _polydivmod(num, cyclotomic_poly(d))
            assert not rem
    return num


@dataclass(frozen=True)
class CycloField:
    """Q(xi) with xi of multiplicative order ``order`` (= 2k in the arrangement code)."""
    order: int

    @property
    def modulus(self) -> Poly:
        return cyclotomic_poly(self.order)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def element(self, coeffs: Sequence) -> "CycloNumber":
        _, r = _polydivmod(_trim(coeffs), self.modulus)
        return CycloNumber(self._pad(r), self)

    def _pad(self, p: Poly) -> Poly:
        return p + (Fraction(0),) * (self.degree - len(p))

    def zero(self) -> "CycloNumber":
        return CycloNumber(self._pad(()), self)

    def one(self) -> "CycloNumber":
        return self.element([1])

    def rational(self, x) -> "CycloNumber":
        return self.element([Fraction(x)])

    def xi_power(self, r: int) -> "CycloNumber":
        return _xi_power(self, r % self.order)


@lru_cache(maxsize=None)
def _xi_power(field: CycloField, r: int) -> "CycloNumber":
    return field.element([0] * r + [1])


@dataclass(frozen=True)
class CycloNumber:
    coeffs: Poly
    field: CycloField

    def _same(self, other):
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        if other.field != self.field:
            raise ValueError("elements of different cyclotomic fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        return CycloNumber(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(tuple(-a for a in self.coeffs), self.field)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        if self.is_zero() or other.is_zero():
            return self.field.zero()
        return self.field.element(_polymul(_trim(self.coeffs), _trim(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        out = self.field.one()
        for _ in range(abs(e)):
            out = out * base
        return out

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def inverse(self) -> "CycloNumber":
        """Extended Euclid against the (irreducible) modulus."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        r0, r1 = self.field.modulus, _trim(self.coeffs)
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        # r1 is a nonzero constant now
        c = r1[0]
        return self.field.element(tuple(x / c for x in s1))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*xi^{i}")
        return " + ".join(terms) if terms else "0"
