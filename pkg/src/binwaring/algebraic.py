"""Arithmetic in Q(tau) for one real algebraic number tau.

``tau`` is given by a squarefree integer polynomial and an isolating
interval. Elements are rational polynomials in ``tau`` reduced modulo the
defining polynomial. Zero tests split the defining polynomial with a gcd
(dynamic evaluation), so it never has to be irreducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import upoly

Elem = list  # ascending Fraction coefficients in tau


class RealAlgebraic:
    def __init__(self, phi: Sequence[int], lo: Fraction, hi: Fraction):
        self.phi = upoly.primitive(phi)
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.value: Optional[Fraction] = self.lo if self.lo == self.hi else None
        if self.value is None and upoly.sign_at(self.phi, self.lo) * upoly.sign_at(self.phi, self.hi) >= 0:
            raise ValueError("interval does not isolate a simple root")

    def __repr__(self) -> str:
        if self.value is not None:
            return f"RealAlgebraic({self.value})"
        return f"RealAlgebraic(phi={self.phi}, ({self.lo}, {self.hi}))"

    def reduce(self, a: Sequence) -> Elem:
        if self.value is not None:
            return upoly.trim([upoly.evaluate(a, self.value)])
        return upoly.divmod_q(a, self.phi)[1]

    def _bisect(self) -> None:
        mid = (self.lo + self.hi) / 2
        s = upoly.sign_at(self.phi, mid)
        if s == 0:
            self.value = mid
            self.lo = self.hi = mid
        elif s == upoly.sign_at(self.phi, self.lo):
            self.lo = mid
        else:
            self.hi = mid

    def sign(self, a: Sequence) -> int:
        if self.value is not None:
            return upoly.sign(upoly.evaluate(a, self.value))
        a = self.reduce(a)
        if not a:
            return 0
        g = upoly.gcd_poly(a, self.phi)
        if len(g) > 1:
            vanishes = upoly.sign_at(g, self.lo) != upoly.sign_at(g, self.hi)
            if vanishes:
                self.phi = g
                return 0
            self.phi = upoly.primitive(upoly.divmod_q(self.phi, g)[0])
            a = self.reduce(a)
        if len(a) == 1:
            return upoly.sign(a[0])
        sa = upoly.squarefree_part(a)
        seq = upoly.sturm_sequence(sa)
        while True:
            if self.value is not None:
                return upoly.sign(upoly.evaluate(a, self.value))
            if (upoly.sign_at(sa, self.lo) != 0
                    and upoly.count_real_roots(seq, self.lo, self.hi) == 0):
                return upoly.sign(upoly.evaluate(a, self.lo))
            self._bisect()

    def is_zero(self, a: Sequence) -> bool:
        return self.sign(a) == 0

    def mul(self, a: Sequence, b: Sequence) -> Elem:
        return self.reduce(upoly.multiply([Fraction(c) for c in a], [Fraction(c) for c in b]))

    def add(self, a: Sequence, b: Sequence) -> Elem:
        n = max(len(a), len(b))
        return upoly.trim([Fraction(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                           for i in range(n)])

    def neg(self, a: Sequence) -> Elem:
        return [-Fraction(c) for c in a]

    def inverse(self, a: Sequence) -> Elem:
        if self.sign(a) == 0:
            raise ZeroDivisionError("element vanishes at tau")
        a = self.reduce(a)
        if self.value is not None:
            return [1 / a[0]]
        # extended Euclid: find u with u*a = 1 mod phi (gcd is 1 after sign())
        r0, r1 = [Fraction(c) for c in self.phi], [Fraction(c) for c in a]
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = upoly.divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly.trim(self.add(s0, self.neg(upoly.multiply(q, s1))))
        if not r1:  # pragma: no cover - excluded by the gcd split in sign()
            raise ZeroDivisionError("element is a zero divisor")
        return self.reduce([c / r1[0] for c in s1])


def root_profile(field: RealAlgebraic, coeffs: Sequence[Sequence]) -> tuple[int, int]:
    """(distinct real roots, distinct complex roots) of sum coeffs[i](tau) u^i."""
    p = [field.reduce(c) for c in coeffs]
    p = _strip(field, p)
    n = len(p) - 1
    if n <= 0:
        return 0, 0
    dp = _strip(field, [field.mul(c, [Fraction(i)]) for i, c in enumerate(p)][1:])
    seq = [p, dp]
    while len(seq[-1]) > 1:
        r = _rem(field, seq[-2], seq[-1])
        if not r:
            break
        seq.append([field.neg(c) for c in r])
    lead = [field.sign(q[-1]) for q in seq]
    at_pos = lead
    at_neg = [s if (len(q) - 1) % 2 == 0 else -s for s, q in zip(lead, seq)]
    real = upoly.variations(at_neg) - upoly.variations(at_pos)
    complex_distinct = n - (len(seq[-1]) - 1)
    return real, complex_distinct


def _strip(field: RealAlgebraic, p: list) -> list:
    p = [field.reduce(c) for c in p]
    while p and field.is_zero(p[-1]):
        p.pop()
    return [field.reduce(c) for c in p]


def _rem(field: RealAlgebraic, a: list, b: list) -> list:
    r = list(a)
    inv_lb = field.inverse(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = field.mul(r[-1], inv_lb)
        for j, bj in enumerate(b):
            r[j + shift] = field.add(r[j + shift], field.neg(field.mul(c, bj)))
        r[-1] = []
        r = _strip(field, r)
    return r
