"""Apolar ideals of binary forms and power-sum decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg, upoly
from .forms import (BinaryForm, apolar_matrix, apply_apolar, falling,
                    multiplication_matrix, multiples, power_of_linear)
from .roots import ZeroFormError, is_hyperbolic, rational_roots, resultant


class NotInIdealError(ValueError):
    """The form is not in the ideal at that degree."""


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class Catalecticant:
    form: BinaryForm
    degree: int  # source degree e
    matrix: tuple[tuple[Fraction, ...], ...]
    rank: int
    kernel: tuple[BinaryForm, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.form.degree - self.degree + 1, self.degree + 1)


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: tuple[BinaryForm, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, weights: Sequence) -> BinaryForm:
        out = BinaryForm.zero(self.degree)
        for w, b in zip(weights, self.basis):
            if w:
                out = out + b.scale(w)
        return out


@dataclass(frozen=True)
class ApolarPair:
    g1: BinaryForm
    g2: BinaryForm
    resultant: Fraction

    @property
    def degrees(self) -> tuple[int, int]:
        return (self.g1.degree, self.g2.degree)

    @property
    def generic_degrees(self) -> bool:
        d = self.g1.degree + self.g2.degree - 2
        return self.g1.degree == (d + 2) // 2


def _nonzero(f: BinaryForm) -> None:
    if f.is_zero():
        raise ZeroFormError("the zero form has no proper apolar ideal")


def annihilates(h: BinaryForm, f: BinaryForm) -> bool:
    """h in f-perp; every form of degree above deg f qualifies."""
    return h.degree > f.degree or apply_apolar(h, f).is_zero()


def catalecticant_matrix(f: BinaryForm, e: int) -> list[list[Fraction]]:
    """Matrix of h -> apply_apolar(h, f) for h of degree e, shape (d-e+1, e+1)."""
    d = f.degree
    if not 0 <= e <= d:
        raise ValueError(f"catalecticant degree {e} outside 0..{d}")
    a = f.coeffs
    return [[a[j + k] * falling(j + k, j) * falling(d - j - k, e - j) for j in range(e + 1)]
            for k in range(d - e + 1)]


def _basis_forms(vectors) -> tuple[BinaryForm, ...]:
    return tuple(BinaryForm(tuple(v)).primitive() for v in vectors)


def catalecticant(f: BinaryForm, e: int) -> Catalecticant:
    m = catalecticant_matrix(f, e)
    kern = linalg.nullspace(m, e + 1)
    return Catalecticant(f, e, tuple(tuple(r) for r in m), e + 1 - len(kern),
                         _basis_forms(kern))


def apolar_graded_piece(f: BinaryForm, e: int) -> GradedPiece:
    """Basis of (f-perp)_e; all of R_e once e exceeds deg f."""
    if e < 0:
        raise ValueError("negative degree")
    if e > f.degree:
        return GradedPiece(e, tuple(BinaryForm.monomial(i, e) for i in range(e + 1)))
    kern = linalg.nullspace(catalecticant_matrix(f, e), e + 1)
    return GradedPiece(e, _basis_forms(kern))


def _reduce(v: list[Fraction], red: list[list[Fraction]], pivots: list[int]) -> list[Fraction]:
    v = list(v)
    for row, pc in zip(red, pivots):
        if v[pc]:
            c = v[pc]
            v = [a - c * b for a, b in zip(v, row)]
    return v


def apolar_generators(f: BinaryForm) -> ApolarPair:
    """The two generators of f-perp, in canonical normal form.

    g1 spans the lowest nonzero graded piece; g2 is the first kernel vector in
    degree d + 2 - deg g1 not in g1 * R, reduced against the RREF of those
    multiples and made primitive.
    """
    _nonzero(f)
    d = f.degree
    d1 = next(e for e in range(1, d + 2) if apolar_graded_piece(f, e).dim)
    piece1 = apolar_graded_piece(f, d1)
    g1 = piece1.basis[0]
    d2 = d + 2 - d1
    mults = [list(m.coeffs) for m in multiples(g1, d2)]
    red, pivots = linalg.rref(mults, d2 + 1)
    g2 = None
    for b in apolar_graded_piece(f, d2).basis:
        r = _reduce(list(b.coeffs), red, pivots)
        if any(r):
            g2 = BinaryForm(tuple(r)).primitive()
            break
    if g2 is None:  # pragma: no cover - contradicts the complete-intersection structure
        raise RuntimeError("no second generator found")
    return ApolarPair(g1, g2, resultant(g1, g2))


def middle_catalecticant_rank(f: BinaryForm) -> tuple[int, int]:
    """(rank, number of columns) of the catalecticant in degree floor(d/2)."""
    e = f.degree // 2
    return linalg.rank(catalecticant_matrix(f, e), e + 1), e + 1


def is_generic_degrees(f: BinaryForm) -> bool:
    """True iff the middle catalecticant has full column rank."""
    _nonzero(f)
    r, cols = middle_catalecticant_rank(f)
    return r == cols


def generic_degree_pair(d: int) -> tuple[int, int]:
    return ((d + 2) // 2, (d + 3) // 2)


def form_from_apolar(g1: BinaryForm, g2: BinaryForm) -> BinaryForm:
    """The form (first nonzero coefficient 1) whose apolar ideal is <g1, g2>."""
    if g1.is_zero() or g2.is_zero():
        raise ZeroFormError("generators must be nonzero")
    dd = g1.degree + g2.degree - 2
    if dd < 0:
        raise ValueError("generator degrees must sum to at least 2")
    if resultant(g1, g2) == 0:
        raise ValueError("generators share a complex root; not a complete intersection")
    rows = apolar_matrix(g1, dd) + apolar_matrix(g2, dd)
    kern = linalg.nullspace(rows, dd + 1)
    if len(kern) != 1:
        raise RuntimeError(f"joint annihilator has dimension {len(kern)}, expected 1")
    return BinaryForm(tuple(kern[0])).monic()


def syzygy_representation(s: BinaryForm, p1: BinaryForm, p2: BinaryForm
                          ) -> tuple[BinaryForm, BinaryForm]:
    """Solve s = p1*q1 + p2*q2 exactly (unique while deg s < deg p1 + deg p2).

    A multiplier whose degree would be negative is returned as the zero form of
    degree 0 and does not take part in the system.
    """
    e = s.degree
    k1, k2 = e - p1.degree, e - p2.degree
    cols1 = multiplication_matrix(p1, k1) if k1 >= 0 else [[] for _ in range(e + 1)]
    cols2 = multiplication_matrix(p2, k2) if k2 >= 0 else [[] for _ in range(e + 1)]
    rows = [r1 + r2 for r1, r2 in zip(cols1, cols2)]
    n1 = k1 + 1 if k1 >= 0 else 0
    if not rows[0]:
        if s.is_zero():
            return BinaryForm.zero(0), BinaryForm.zero(0)
        raise NotInIdealError("no generator fits below this degree")
    try:
        x = linalg.solve(rows, list(s.coeffs))
    except linalg.InconsistentSystem as exc:
        raise NotInIdealError("form is not in the ideal at this degree") from exc
    q1 = BinaryForm(tuple(x[:n1])) if n1 else BinaryForm.zero(0)
    q2 = BinaryForm(tuple(x[n1:])) if k2 >= 0 else BinaryForm.zero(0)
    return q1, q2


def in_ideal(s: BinaryForm, p1: BinaryForm, p2: BinaryForm) -> bool:
    try:
        q1, q2 = syzygy_representation(s, p1, p2)
    except NotInIdealError:
        return False
    return _recombine(p1, q1, p2, q2, s.degree) == s


def _recombine(p1, q1, p2, q2, e) -> BinaryForm:
    out = BinaryForm.zero(e)
    if e - p1.degree >= 0 and q1.degree == e - p1.degree:
        out = out + p1 * q1
    if e - p2.degree >= 0 and q2.degree == e - p2.degree:
        out = out + p2 * q2
    return out


# -- decompositions ---------------------------------------------------------


@dataclass(frozen=True)
class PowerTerm:
    """c * (a x + b y)^d."""

    c: Fraction
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class Decomposition:
    apolar_form: BinaryForm
    degree: int
    mode: str  # "exact" | "numeric"
    terms: tuple[PowerTerm, ...]
    residual: Fraction
    precision: int


def resum(terms: Sequence[PowerTerm], d: int) -> BinaryForm:
    out = BinaryForm.zero(d)
    for t in terms:
        out = out + power_of_linear(t.a, t.b, d).scale(t.c)
    return out


def _check_apolar_witness(s: BinaryForm, f: BinaryForm) -> None:
    if s.degree > f.degree + 1:
        raise DecompositionError("apolar form of degree > d + 1 gives a singular system")
    if s.degree > f.degree:
        pass  # everything of degree d+1 annihilates f
    elif not apply_apolar(s, f).is_zero():
        raise DecompositionError("apolar form does not annihilate f")
    if not is_hyperbolic(s).hyperbolic:
        raise DecompositionError("apolar form is not hyperbolic with distinct roots")


def _solve_weights(points: Sequence[tuple[Fraction, Fraction]], f: BinaryForm) -> list[Fraction]:
    d = f.degree
    cols = [power_of_linear(a, b, d).coeffs for a, b in points]
    rows = [[col[i] for col in cols] for i in range(d + 1)]
    try:
        return linalg.solve(rows, list(f.coeffs))
    except linalg.InconsistentSystem as exc:
        raise DecompositionError("powers do not span f") from exc


def decompose_rational(s: BinaryForm, f: BinaryForm) -> Decomposition:
    """f = sum c_i (a_i x + b_i y)^d from a hyperbolic s in f-perp with rational roots.

    The root [a:b] of the factor (b x - a y) of s contributes (a x + b y)^d.
    """
    _nonzero(f)
    _check_apolar_witness(s, f)
    pts, irrational = rational_roots(s)
    if irrational:
        raise DecompositionError(f"{irrational} irrational roots; use decompose_numeric")
    points = [(Fraction(a), Fraction(b)) for a, b in pts]
    weights = _solve_weights(points, f)
    terms = tuple(PowerTerm(c, a, b) for c, (a, b) in zip(weights, points))
    res = (resum(terms, f.degree) - f).norm_inf()
    if res:
        raise DecompositionError("decomposition does not reproduce f")
    return Decomposition(s, f.degree, "exact", terms, res, 0)


def _least_squares(points, f: BinaryForm) -> list[Fraction]:
    d = f.degree
    cols = [power_of_linear(a, b, d).coeffs for a, b in points]
    ata = [[sum(u * v for u, v in zip(ci, cj)) for cj in cols] for ci in cols]
    atb = [sum(u * v for u, v in zip(ci, f.coeffs)) for ci in cols]
    return linalg.solve(ata, atb)


def _round_dyadic(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(round(x * scale), scale)


def decompose_numeric(s: BinaryForm, f: BinaryForm, precision: int = 128) -> Decomposition:
    """Approximate decomposition for irrational roots with an exact residual.

    Roots of s are bisected to dyadic points; weights solve the exact normal
    equations and are rounded to dyadics. The residual ||f - sum||_inf is then
    computed exactly, and refinement repeats until it is below 2**-precision.
    """
    _nonzero(f)
    _check_apolar_witness(s, f)
    fin = upoly.primitive(s.dehomogenize())
    intervals = upoly.isolate(fin)
    inf = s.infinity_multiplicity()
    target = Fraction(1, 1 << precision)
    bits = precision + 16
    for _ in range(12):
        width = Fraction(1, 1 << bits)
        points = []
        for iv in intervals:
            lo, hi = upoly.refine(fin, iv, width)
            t = lo if lo == hi else _round_dyadic((lo + hi) / 2, bits + 2)
            points.append((t, Fraction(1)))
        if inf:
            points.append((Fraction(1), Fraction(0)))
        weights = [_round_dyadic(c, bits + 8) for c in _least_squares(points, f)]
        terms = tuple(PowerTerm(c, a, b) for c, (a, b) in zip(weights, points))
        res = (resum(terms, f.degree) - f).norm_inf()
        if res < target:
            return Decomposition(s, f.degree, "numeric", terms, res, precision)
        bits += max(precision // 2, 32)
    raise DecompositionError("refinement did not reach the requested precision")


def decompose(s: BinaryForm, f: BinaryForm, precision: int = 128) -> Decomposition:
    """Exact decomposition when every root of s is rational, numeric otherwise."""
    pts, irrational = rational_roots(s)
    if not irrational:
        return decompose_rational(s, f)
    return decompose_numeric(s, f, precision)
