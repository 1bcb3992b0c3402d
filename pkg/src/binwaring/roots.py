"""Real roots of binary forms: resultants, Sturm counts, hyperbolicity.

Roots are projective points of the real line. A form's finite roots are
the roots of its dehomogenisation ``p(t, 1)`` (point ``[t:1]``); a power of
``y`` dividing the form contributes the root ``[1:0]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import upoly
from .forms import BinaryForm
from .linalg import determinant

Interval = tuple[Fraction, Fraction]


class ZeroFormError(ValueError):
    """Raised when an operation needs a nonzero form."""


def _nonzero(*forms: BinaryForm) -> None:
    for f in forms:
        if f.is_zero():
            raise ZeroFormError("operation is undefined for the zero form")


@dataclass(frozen=True)
class RootIsolation:
    """Isolating intervals for the finite real roots, plus the root at infinity.

    ``intervals`` follow :func:`upoly.isolate`: exact points ``(r, r)`` or open
    intervals with non-root endpoints and one root inside.
    """

    intervals: tuple[Interval, ...]
    infinity_multiplicity: int
    squarefree: bool

    @property
    def count(self) -> int:
        return len(self.intervals) + (1 if self.infinity_multiplicity else 0)


@dataclass(frozen=True)
class HyperbolicityCertificate:
    form: BinaryForm
    hyperbolic: bool
    reason: str  # "distinct_real" | "repeated_root" | "nonreal_roots"
    distinct_real_roots: int
    repeated_factor: tuple[int, ...]  # gcd(p, p') when a finite root repeats
    isolation: Optional[RootIsolation]


def resultant(p: BinaryForm, q: BinaryForm) -> Fraction:
    """Homogeneous resultant: determinant of the Sylvester matrix.

    Rows carry coefficients from the x^deg end down, so a common root at
    [1:0] (both top coefficients zero) gives a zero first column.
    """
    _nonzero(p, q)
    m, n = p.degree, q.degree
    size = m + n
    if size == 0:
        return Fraction(1)
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return determinant(rows)


def gcd_forms(p: BinaryForm, q: BinaryForm) -> BinaryForm:
    """Greatest common divisor as a primitive form (projective roots included)."""
    _nonzero(p, q)
    inf = min(p.infinity_multiplicity(), q.infinity_multiplicity())
    g = upoly.gcd_poly(p.dehomogenize(), q.dehomogenize())
    fin = BinaryForm(tuple(Fraction(c) for c in g))
    return (fin * BinaryForm.monomial(0, inf)).primitive()


def count_distinct_real_roots(p: BinaryForm) -> int:
    _nonzero(p)
    fin = p.dehomogenize()
    n = upoly.count_real_roots(upoly.sturm_sequence(fin)) if len(fin) > 1 else 0
    return n + (1 if p.infinity_multiplicity() else 0)


def count_distinct_roots(p: BinaryForm) -> int:
    """Distinct complex projective roots."""
    _nonzero(p)
    fin = upoly.primitive(p.dehomogenize())
    n = 0
    if len(fin) > 1:
        n = len(upoly.squarefree_part(fin)) - 1
    return n + (1 if p.infinity_multiplicity() else 0)


def is_real_rooted(p: BinaryForm) -> bool:
    """All roots real, multiplicities allowed."""
    return count_distinct_real_roots(p) == count_distinct_roots(p)


def is_hyperbolic(p: BinaryForm) -> HyperbolicityCertificate:
    """Decide whether ``p`` splits into ``deg p`` pairwise distinct real linear forms."""
    _nonzero(p)
    fin = upoly.primitive(p.dehomogenize())
    inf = p.infinity_multiplicity()
    if len(fin) > 1:
        g = upoly.gcd_poly(fin, upoly.derivative(fin))
    else:
        g = [1]
    if len(g) > 1 or inf > 1:
        return HyperbolicityCertificate(
            p, False, "repeated_root", count_distinct_real_roots(p),
            tuple(g) if len(g) > 1 else (), None)
    n_fin = upoly.count_real_roots(upoly.sturm_sequence(fin)) if len(fin) > 1 else 0
    real = n_fin + inf
    if n_fin < len(fin) - 1:
        return HyperbolicityCertificate(p, False, "nonreal_roots", real, (), None)
    iso = RootIsolation(tuple(upoly.isolate(fin)), inf, True)
    return HyperbolicityCertificate(p, True, "distinct_real", real, (), iso)


def isolate_real_roots(p: BinaryForm) -> RootIsolation:
    """Isolate the real projective roots of a squarefree form."""
    _nonzero(p)
    fin = upoly.primitive(p.dehomogenize())
    inf = p.infinity_multiplicity()
    if inf > 1 or (len(fin) > 1 and len(upoly.gcd_poly(fin, upoly.derivative(fin))) > 1):
        raise ValueError("isolate_real_roots needs a squarefree form")
    return RootIsolation(tuple(upoly.isolate(fin)), inf, True)


def refine_root(p: BinaryForm, interval: Interval, width: Fraction) -> Interval:
    return upoly.refine(p.dehomogenize(), interval, width)


def squarefree_form(p: BinaryForm) -> BinaryForm:
    """Product of the distinct linear factors of ``p`` (primitive)."""
    _nonzero(p)
    fin = upoly.squarefree_part(p.dehomogenize())
    out = BinaryForm(tuple(Fraction(c) for c in fin))
    if p.infinity_multiplicity():
        out = out * BinaryForm.monomial(0, 1)
    return out.primitive()


def real_projective_roots(p: BinaryForm) -> list[Optional[Fraction]]:
    """Exact rational real roots of a form (``None`` stands for [1:0]).

    Irrational real roots are skipped; see :func:`has_only_rational_roots`.
    """
    _nonzero(p)
    fin = upoly.squarefree_part(p.dehomogenize())
    out: list[Optional[Fraction]] = []
    for iv in upoly.isolate(fin):
        r = upoly.rational_root_in(fin, iv)
        if r is not None:
            out.append(r)
    if p.infinity_multiplicity():
        out.append(None)
    return out


def rational_roots(p: BinaryForm) -> tuple[list[tuple[int, int]], int]:
    """Rational projective roots as primitive integer points ``(a, b)``.

    Returns the points and the number of real roots that are irrational.
    """
    _nonzero(p)
    fin = upoly.squarefree_part(p.dehomogenize())
    pts: list[tuple[int, int]] = []
    irrational = 0
    for iv in upoly.isolate(fin):
        r = upoly.rational_root_in(fin, iv)
        if r is None:
            irrational += 1
        else:
            pts.append((r.numerator, r.denominator))
    if p.infinity_multiplicity():
        pts.append((1, 0))
    return pts, irrational
