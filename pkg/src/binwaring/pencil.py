"""Exact decisions on pencils of binary forms.

For a pencil ``s_t = A + t B`` (plus ``B`` at ``t = infinity``) the number of
distinct real projective roots is constant between consecutive real zeros of
the discriminant, so one rational sample per cell decides whether the pencil
meets the open set of hyperbolic forms. The weak variant also looks at the
finitely many members with a repeated root, which are the only places a
real-rooted member can hide when no cell is hyperbolic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg, upoly
from .algebraic import RealAlgebraic, root_profile
from .forms import BinaryForm
from .roots import gcd_forms, is_hyperbolic, is_real_rooted, resultant

Interval = tuple[Fraction, Fraction]


class DependentPencilError(ValueError):
    pass


@dataclass(frozen=True)
class PencilSample:
    t: Optional[Fraction]  # None is the member B at t = infinity
    distinct_real_roots: int
    hyperbolic: bool


@dataclass(frozen=True)
class PencilTrace:
    a: BinaryForm
    b: BinaryForm
    discriminant: tuple[Fraction, ...]
    leading: tuple[Fraction, ...]
    critical: tuple[int, ...]
    intervals: tuple[Interval, ...]
    samples: tuple[PencilSample, ...]
    degenerate: bool


@dataclass(frozen=True)
class PencilDecision:
    found: bool
    witness: Optional[BinaryForm]
    parameter: Optional[Fraction]
    at_infinity: bool
    trace: PencilTrace


def member(a: BinaryForm, b: BinaryForm, t: Optional[Fraction]) -> BinaryForm:
    return b if t is None else a + b.scale(t)


def _check_pencil(a: BinaryForm, b: BinaryForm) -> None:
    if a.degree != b.degree:
        raise ValueError("pencil members must have equal degree")
    if linalg.rank([a.coeffs, b.coeffs]) < 2:
        raise DependentPencilError("pencil basis is linearly dependent")


def _partials(s: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    n = s.degree
    dx = BinaryForm(tuple(i * s.coeffs[i] for i in range(1, n + 1)))
    dy = BinaryForm(tuple((n - i) * s.coeffs[i] for i in range(n)))
    return dx, dy


def form_discriminant(s: BinaryForm) -> Fraction:
    """Res(ds/dx, ds/dy): zero exactly when s has a repeated projective root."""
    dx, dy = _partials(s)
    if dx.is_zero() or dy.is_zero():
        return Fraction(0)
    return resultant(dx, dy)


def discriminant_in_parameter(a: BinaryForm, b: BinaryForm) -> list[Fraction]:
    """Ascending coefficients of t -> disc(A + t B), by exact interpolation."""
    n = a.degree
    npts = 2 * (n - 1) + 1
    ts = [Fraction(i) for i in range(npts)]
    return upoly.interpolate(ts, [form_discriminant(member(a, b, t)) for t in ts])


def _cell_samples(intervals: list[Interval]) -> list[Fraction]:
    if not intervals:
        return [Fraction(0)]
    out = [upoly.simplest_dyadic(None, intervals[0][0], hi_open=intervals[0][0] == intervals[0][1])]
    for (lo1, hi1), (lo2, hi2) in zip(intervals, intervals[1:]):
        out.append(upoly.simplest_dyadic(hi1, lo2, lo_open=lo1 == hi1, hi_open=lo2 == hi2))
    lo, hi = intervals[-1]
    out.append(upoly.simplest_dyadic(hi, None, lo_open=lo == hi))
    return out


def pencil_contains_hyperbolic(a: BinaryForm, b: BinaryForm) -> PencilDecision:
    """Decide whether some member of the pencil has deg-many distinct real roots."""
    _check_pencil(a, b)
    n = a.degree
    lead = tuple(upoly.trim([a.coeffs[n], b.coeffs[n]]))
    if n == 1:
        trace = PencilTrace(a, b, (Fraction(1),), lead, (), (), (PencilSample(Fraction(0), 1, True),), False)
        return PencilDecision(True, a, Fraction(0), False, trace)
    disc = tuple(discriminant_in_parameter(a, b))
    if not disc:
        trace = PencilTrace(a, b, disc, lead, (), (), (), True)
        return PencilDecision(False, None, None, False, trace)
    crit_poly = upoly.primitive(disc)
    if lead:
        crit_poly = upoly.multiply(crit_poly, upoly.primitive(lead))
    crit = upoly.squarefree_part(crit_poly)
    intervals = [upoly.refine(crit, iv, Fraction(1, 4)) for iv in upoly.isolate(crit)]
    ts = sorted(_cell_samples(intervals), key=lambda t: (t.denominator, abs(t), t < 0))
    samples = []
    found_t: Optional[Fraction] = None
    at_inf = False
    for t in ts + [None]:
        s = member(a, b, t)
        cert = is_hyperbolic(s)
        samples.append(PencilSample(t, cert.distinct_real_roots, cert.hyperbolic))
        if cert.hyperbolic:
            found_t, at_inf = t, t is None
            break
    trace = PencilTrace(a, b, disc, lead, tuple(crit), tuple(intervals), tuple(samples), False)
    if samples[-1].hyperbolic:
        return PencilDecision(True, member(a, b, found_t).primitive(), found_t, at_inf, trace)
    return PencilDecision(False, None, None, False, trace)


@dataclass(frozen=True)
class CriticalMember:
    """A member at a multiple real zero tau of the discriminant, tau in (lo, hi)."""

    lo: Fraction
    hi: Fraction
    distinct_real_roots: int
    distinct_roots: int

    @property
    def real_rooted(self) -> bool:
        return self.distinct_real_roots == self.distinct_roots


@dataclass(frozen=True)
class RealRootedPencilDecision:
    """Whether the pencil holds a form with only real roots (repeats allowed).

    ``common_factor`` is gcd(A, B); every member is that factor times a member
    of the reduced pencil ``(a, b)``.
    """

    found: bool
    common_factor: BinaryForm
    common_factor_real_rooted: bool
    a: BinaryForm
    b: BinaryForm
    hyperbolic: Optional[PencilDecision]
    infinity_real_rooted: Optional[bool]
    critical: tuple[CriticalMember, ...]


def pencil_contains_real_rooted(a: BinaryForm, b: BinaryForm) -> RealRootedPencilDecision:
    _check_pencil(a, b)
    g = gcd_forms(a, b)
    ra, rb = a.divide(g), b.divide(g)
    g_ok = is_real_rooted(g)
    if not g_ok:
        return RealRootedPencilDecision(False, g, False, ra, rb, None, None, ())
    dec = pencil_contains_hyperbolic(ra, rb)
    if dec.found:
        return RealRootedPencilDecision(True, g, True, ra, rb, dec, None, ())
    inf_ok = is_real_rooted(rb)
    if inf_ok:
        return RealRootedPencilDecision(True, g, True, ra, rb, dec, True, ())
    # At a simple zero tau of the discriminant, s_tau has one double root and the
    # sign change across tau turns that root from real into a complex pair, so
    # s_tau real-rooted would force a hyperbolic neighbouring cell. With none
    # found, only the multiple zeros of the discriminant remain to be checked.
    disc = dec.trace.discriminant
    multiple = upoly.gcd_poly(disc, upoly.derivative(disc))
    checked = []
    found = False
    if len(multiple) > 1:
        crit = upoly.squarefree_part(multiple)
        coeffs = [[ca, cb] for ca, cb in zip(ra.coeffs, rb.coeffs)]
        for lo, hi in upoly.isolate(crit):
            field = RealAlgebraic(crit, lo, hi)
            real, total = root_profile(field, coeffs)
            checked.append(CriticalMember(lo, hi, real, total))
            if real == total:
                found = True
                break
    return RealRootedPencilDecision(found, g, True, ra, rb, dec, False, tuple(checked))
