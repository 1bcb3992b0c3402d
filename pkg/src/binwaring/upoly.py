"""Dense univariate polynomials over the integers and rationals.

Polynomials are plain lists of coefficients in ascending order
(``p[i]`` multiplies ``t**i``); the zero polynomial is the empty list.
Everything that feeds a verdict works with ``int`` and ``Fraction`` only.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

Interval = tuple[Fraction, Fraction]


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def primitive(coeffs: Sequence) -> list[int]:
    """Scale by a positive rational to coprime integers (sign kept)."""
    coeffs = [Fraction(c) for c in trim(coeffs)]
    if not coeffs:
        return []
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def derivative(p: Sequence) -> list:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at(p: Sequence[int], x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, without fractions."""
    p = trim(p)
    if not p:
        return 0
    n, d = x.numerator, x.denominator
    k = len(p) - 1
    total = 0
    npow = 1
    # sum a_i n^i d^(k-i) is p(x) times the positive factor d^k
    for i, c in enumerate(p):
        if c:
            total += c * npow * d ** (k - i)
        npow *= n
    return sign(total)


def sign_at_infinity(p: Sequence, negative: bool = False) -> int:
    p = trim(p)
    if not p:
        return 0
    s = sign(p[-1])
    if negative and (len(p) - 1) % 2:
        s = -s
    return s


def pseudo_rem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """lc(b)**(deg a - deg b + 1) * a  mod  b, over the integers."""
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = len(b) - 1, b[-1]
    r = list(a)
    delta = len(a) - len(b) + 1
    if delta <= 0:
        return r
    for _ in range(delta):
        if len(r) - 1 < db:
            r = [c * lb for c in r]
            continue
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, c in enumerate(b):
            r[j + shift] -= lr * c
        r = trim(r)
    return r


def _primitive_int(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = gcd(g, c)
    return [c // g for c in p] if g > 1 else p


def divmod_q(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lb
        q[shift] = c
        for j, bj in enumerate(b):
            r[j + shift] -= c * bj
        r = trim(r)
    return trim(q), r


def gcd_poly(a: Sequence, b: Sequence) -> list[int]:
    """Primitive gcd with positive leading coefficient ([] only if both are zero)."""
    a, b = primitive(a), primitive(b)
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive(r)
    if not a:
        return []
    if a[-1] < 0:
        a = [-c for c in a]
    return a


def squarefree_part(p: Sequence) -> list[int]:
    p = primitive(p)
    if len(p) <= 2:
        return p
    g = gcd_poly(p, derivative(p))
    q, r = divmod_q(p, g)
    assert not r
    return primitive(q)


def multiply(a: Sequence, b: Sequence) -> list:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def sturm_sequence(p: Sequence) -> list[list[int]]:
    """Signed remainder sequence p, p', -rem, ... scaled by positive integers only."""
    p = primitive(p)
    if not p:
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p]
    dp = primitive(derivative(p))
    if not dp:
        return seq
    seq.append(dp)
    while True:
        a, b = seq[-2], seq[-1]
        r = pseudo_rem(a, b)
        if not r:
            break
        delta = len(a) - len(b) + 1
        # prem = lc(b)^delta * rem; we want a positive multiple of -rem
        if b[-1] < 0 and delta % 2:
            r = _primitive_int(r)
        else:
            r = _primitive_int([-c for c in r])
        seq.append(r)
        if len(r) == 1:
            break
    return seq


def variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for u, v in zip(nz, nz[1:]) if u != v)


def _v(seq: list[list[int]], x: Optional[Fraction], negative_inf: bool = False) -> int:
    if x is None:
        return variations([sign_at_infinity(q, negative_inf) for q in seq])
    return variations([sign_at(q, x) for q in seq])


def count_real_roots(seq: list[list[int]], lo: Optional[Fraction] = None,
                     hi: Optional[Fraction] = None) -> int:
    """Distinct real roots in (lo, hi]; ``None`` endpoints mean -inf / +inf."""
    return _v(seq, lo, negative_inf=True) - _v(seq, hi)


def cauchy_bound(p: Sequence[int]) -> Fraction:
    """A power of two strictly exceeding the modulus of every complex root."""
    p = trim(p)
    lead = abs(p[-1])
    m = max((Fraction(abs(c), lead) for c in p[:-1]), default=Fraction(0))
    bound = 1 + m
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


def isolate(p: Sequence) -> list[Interval]:
    """Isolating intervals for the real roots of a squarefree polynomial.

    Each interval is either a point ``(r, r)`` holding an exact rational root,
    or ``(lo, hi)`` with ``lo < hi``, neither endpoint a root, and exactly one
    root strictly inside. Intervals are disjoint and sorted.
    """
    p = primitive(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    if len(seq[-1]) > 1:
        raise ValueError("isolate requires a squarefree polynomial")
    b = cauchy_bound(p)
    out: list[Interval] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if sign_at(p, mid) != 0:
            stack.append((lo, mid))
            stack.append((mid, hi))
            continue
        out.append((mid, mid))
        delta = (hi - lo) / 4
        while (sign_at(p, mid - delta) == 0 or sign_at(p, mid + delta) == 0
               or count_real_roots(seq, mid - delta, mid + delta) != 1):
            delta /= 2
        stack.append((lo, mid - delta))
        stack.append((mid + delta, hi))
    out.sort()
    return out


def refine(p: Sequence, interval: Interval, width: Fraction) -> Interval:
    """Bisect an isolating interval of a squarefree ``p`` down to ``width``."""
    p = primitive(p)
    lo, hi = interval
    if lo == hi:
        return interval
    slo = sign_at(p, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return (mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def rational_root_in(p: Sequence, interval: Interval) -> Optional[Fraction]:
    """The root in an isolating interval if it is rational, else None."""
    p = primitive(p)
    lo, hi = interval
    if lo == hi:
        return lo
    lead = abs(p[-1])
    # two distinct rationals with denominators <= lead are >= 1/lead^2 apart
    lo, hi = refine(p, interval, Fraction(1, 4 * lead * lead))
    if lo == hi:
        return lo
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo < cand < hi and sign_at(p, cand) == 0:
        return cand
    return None


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Exact Newton interpolation; returns ascending coefficients."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly: list[Fraction] = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly
        for k, c in enumerate(poly):
            shifted[k] -= xs[i] * c
        shifted[0] += coef[i]
        poly = shifted
    return trim(poly)


def simplest_dyadic(lo: Optional[Fraction], hi: Optional[Fraction],
                    lo_open: bool = True, hi_open: bool = True) -> Fraction:
    """A dyadic rational of least denominator (then least modulus) in the gap."""

    def inside(x: Fraction) -> bool:
        if lo is not None and (x < lo or (lo_open and x == lo)):
            return False
        if hi is not None and (x > hi or (hi_open and x == hi)):
            return False
        return True

    den = 1
    while True:
        if lo is None and hi is None:
            return Fraction(0)
        if lo is None:
            cands = [min(Fraction(0), Fraction(int((hi * den) // 1), den))]
            cands += [c - Fraction(1, den) for c in cands]
        elif hi is None:
            cands = [max(Fraction(0), Fraction(-int((-lo * den) // 1), den))]
            cands += [c + Fraction(1, den) for c in cands]
        else:
            a = -int((-lo * den) // 1)  # ceil
            b = int((hi * den) // 1)  # floor
            if a > b:
                den *= 2
                continue
            if a <= 0 <= b:
                ks = [0, 1, -1]
            elif a > 0:
                ks = [a, a + 1]
            else:
                ks = [b, b - 1]
            cands = [Fraction(k, den) for k in ks if a <= k <= b]
        for c in sorted(cands, key=lambda z: (abs(z), z)):
            if inside(c):
                return c
        den *= 2
