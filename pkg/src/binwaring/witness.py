"""Constructive witnesses of every typical real rank.

Starting from a base form of rank m, each step raises the degree by one
while keeping a hyperbolic s inside the new apolar ideal I, and I sits
inside the old one. So the rank stays m and the degree-(m-1) piece can only
shrink, which keeps it free of real-rooted forms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from . import linalg
from .apolarity import (annihilates, apolar_generators, apolar_graded_piece, form_from_apolar,
                        in_ideal, is_generic_degrees, syzygy_representation)
from .forms import BinaryForm, power_of_linear
from .rank import (RankCertificate, Rigor, SearchBudget, TypicalityCertificate, _probe,
                   real_rank_search, real_rooted_probe, strongest, typicality_certificate,
                   weakest)
from .roots import HyperbolicityCertificate, is_hyperbolic, rational_roots, resultant

EVEN_MINIMAL = "EVEN_MINIMAL"
EVEN_GENERAL = "EVEN_GENERAL"
ODD = "ODD"

POINT_BUDGET = 10_000
BASE_ATTEMPTS = 500

# cited fact behind max_rank_base for m >= 5
REAL_ROOTED_RANK_FACT = (
    "a binary form of degree d with d distinct real roots has real rank d, "
    "and such forms are an open set (Comon-Ottaviani)")


class WitnessError(RuntimeError):
    """A construction step failed where the theory says it cannot."""


def admissible(d: int, m: int) -> bool:
    return d >= 2 and (d + 2) // 2 <= m <= d


def admissible_pairs(d_max: int) -> list[tuple[int, int]]:
    return [(d, m) for d in range(2, d_max + 1) for m in range((d + 2) // 2, d + 1)]


def farey_points(limit: int = POINT_BUDGET) -> Iterator[tuple[int, int]]:
    """Primitive projective points (a, b) by height: (1,0), (0,1), (1,1), (1,-1), (2,1), ..."""
    out = [(1, 0), (0, 1)]
    h = 1
    n = 0
    while True:
        for p in out:
            if n >= limit:
                return
            n += 1
            yield p
        out = []
        for j in range(1, h + 1):
            if math.gcd(h, j) != 1:
                continue
            cand = [(h, j), (j, h), (h, -j), (j, -h)] if j != h else [(h, h), (h, -h)]
            out.extend(cand)
        h += 1


def affine_points(limit: int = POINT_BUDGET) -> Iterator[Fraction]:
    """0, 1, -1, 2, -2, ... then halves and so on: rationals by height."""
    for a, b in farey_points(limit + 1):
        if b > 0:
            yield Fraction(a, b)
        elif b < 0:
            yield Fraction(-a, -b)


def vanishing_linear(a, b) -> BinaryForm:
    """The canonical linear form b x - a y through the point (a, b)."""
    return BinaryForm.linear(b, -a).primitive()


# -- bases ---------------------------------------------------------------------


@dataclass(frozen=True)
class BaseRecord:
    kind: str  # "max_rank" | "minimal_rank" | "pencil" | "sum_of_powers"
    m: int
    degree: int
    seed: int
    attempt: int
    form: BinaryForm
    points: tuple[Fraction, ...]  # roots t_i, so factors (x - t_i y)
    weights: tuple[Fraction, ...]
    witness: BinaryForm
    witness_cert: HyperbolicityCertificate
    lower_dimension: int
    level: Rigor
    payload: object


def _max_rank_candidate(m: int, attempt: int) -> tuple[tuple[Fraction, ...], BinaryForm]:
    # a translation would not change anything, so the shift bends the roots
    pts = tuple(Fraction(i) + (Fraction(i * i, attempt + 9) if attempt else 0) for i in range(m))
    return pts, BinaryForm.from_roots([(t, 1) for t in pts])


def _sop_candidate(m: int, degree: int, seed: int, attempt: int):
    rng = random.Random(f"{seed}:base:{m}:{degree}:{attempt}")
    pts: list[Fraction] = []
    while len(pts) < m:
        t = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        if t not in pts:
            pts.append(t)
    weights = []
    while len(weights) < m:
        c = rng.randint(-5, 5)
        if c:
            weights.append(Fraction(c))
    f = BinaryForm.zero(degree)
    for c, t in zip(weights, pts):
        f = f + power_of_linear(t, 1, degree).scale(c)
    return tuple(pts), tuple(weights), f


def _witness_in(f: BinaryForm, m: int, hints=()) -> Optional[BinaryForm]:
    w, _, _, _ = _probe(apolar_graded_piece(f, m), SearchBudget(), hints)
    return None if w is None else w.primitive()


def _max_rank_attempt(m: int, seed: int, attempt: int) -> Optional[BaseRecord]:
    pts, f = _max_rank_candidate(m, attempt)
    if not is_generic_degrees(f):
        return None
    piece = apolar_graded_piece(f, m - 1)
    if piece.dim <= 2:
        found, level, payload = real_rooted_probe(piece)
        if found:
            return None
    else:
        level, payload = Rigor.THEOREM_BACKED, REAL_ROOTED_RANK_FACT
    s = _witness_in(f, m)
    if s is None:
        return None
    return BaseRecord("max_rank", m, m, seed, attempt, f, pts, (), s, is_hyperbolic(s),
                      piece.dim, level, payload)


def _sop_attempt(m: int, degree: int, seed: int, attempt: int,
                 kind: str) -> Optional[BaseRecord]:
    pts, weights, f = _sop_candidate(m, degree, seed, attempt)
    if f.is_zero() or not is_generic_degrees(f):
        return None
    piece = apolar_graded_piece(f, m - 1)
    found, level, payload = real_rooted_probe(piece)
    if found:
        return None
    s = _witness_in(f, m, hints=[BinaryForm.from_roots([(t, 1) for t in pts])])
    if s is None:  # pragma: no cover - the product of the points always works
        return None
    return BaseRecord(kind, m, degree, seed, attempt, f, pts, weights, s, is_hyperbolic(s),
                      piece.dim, level, payload)


def _ideal_candidate(m: int, seed: int, attempt: int):
    rng = random.Random(f"{seed}:ideal:{m}:{attempt}")
    pts: list[Fraction] = []
    while len(pts) < m:
        t = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if t not in pts:
            pts.append(t)
    s = BinaryForm.from_roots([(t, 1) for t in pts])
    g1 = BinaryForm.of([rng.randint(-9, 9) for _ in range(m)])
    p = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    l1 = BinaryForm.linear(rng.randint(-5, 5), rng.randint(-5, 5))
    if g1(p, 1) == 0:
        return tuple(pts), None, None
    # choose l1 so that s - g1 l1 vanishes at (p, 1), then divide out l2
    l1 = l1 + BinaryForm.linear(0, s(p, 1) / g1(p, 1) - l1(p, 1))
    g2 = (s - g1 * l1).divide(vanishing_linear(p, 1))
    return tuple(pts), g1, g2


def _pencil_attempt(m: int, seed: int, attempt: int) -> Optional[BaseRecord]:
    pts, g1, g2 = _ideal_candidate(m, seed, attempt)
    if g1 is None or resultant(g1, g2) == 0:
        return None
    f = form_from_apolar(g1, g2)
    piece = apolar_graded_piece(f, m - 1)
    found, level, payload = real_rooted_probe(piece)
    if found or not is_generic_degrees(f):
        return None
    s = _witness_in(f, m, hints=[BinaryForm.from_roots([(t, 1) for t in pts])])
    if s is None:  # pragma: no cover - s itself lies in the piece
        return None
    return BaseRecord("pencil", m, 2 * m - 4, seed, attempt, f, pts, (), s, is_hyperbolic(s),
                      piece.dim, level, payload)


def _check_base_args(kind: str, m: int, degree: int) -> None:
    if kind == "max_rank":
        if m < 2 or degree != m:
            raise ValueError("max_rank base needs m >= 2 and degree m")
    elif kind == "minimal_rank":
        if m < 2 or degree != 2 * m - 2:
            raise ValueError("minimal_rank base needs m >= 2 and degree 2m - 2")
    elif kind == "pencil":
        if m < 3 or degree != 2 * m - 4:
            raise ValueError("pencil base needs m >= 3 and degree 2m - 4")
    elif kind == "sum_of_powers":
        if m < 2 or degree < m or degree < 2 * m - 4:
            raise ValueError("need m >= 2 and max(m, 2m - 4) <= degree")
    else:
        raise ValueError(f"unknown base kind {kind!r}")


def base_attempt(kind: str, m: int, degree: int, seed: int, attempt: int) -> Optional[BaseRecord]:
    """The base produced by one numbered attempt, or None if it is rejected.

    Deterministic in its arguments, so a verifier can replay a recorded base.
    """
    _check_base_args(kind, m, degree)
    if kind == "max_rank":
        return _max_rank_attempt(m, seed, attempt)
    if kind == "pencil":
        return _pencil_attempt(m, seed, attempt)
    return _sop_attempt(m, degree, seed, attempt, kind)


def make_base(kind: str, m: int, degree: int, seed: int = 0,
              attempts: int = BASE_ATTEMPTS) -> BaseRecord:
    _check_base_args(kind, m, degree)
    for attempt in range(attempts):
        rec = base_attempt(kind, m, degree, seed, attempt)
        if rec is not None:
            return rec
    raise WitnessError(f"search budget exhausted for a {kind} base (m = {m}, degree {degree})")


def max_rank_base(m: int, seed: int = 0, attempts: int = BASE_ATTEMPTS) -> BaseRecord:
    """Product of m distinct real linear forms, of real rank m.

    The lower bound is decided exactly when the degree-(m-1) piece has
    dimension at most two (m <= 4) and is otherwise the cited fact. The
    candidates do not depend on the seed; it is only recorded.
    """
    return make_base("max_rank", m, m, seed, attempts)


def sum_of_powers_base(m: int, degree: int, seed: int = 0, attempts: int = BASE_ATTEMPTS,
                       kind: str = "sum_of_powers") -> BaseRecord:
    """Seeded search for an exactly certified typical form of rank m.

    Candidates are sums of m powers of linear forms, so a hyperbolic element
    of degree m is known in advance. Needs 2m - 4 <= degree so that the
    degree-(m-1) piece has dimension at most two.
    """
    return make_base(kind, m, degree, seed, attempts)


def pencil_base(m: int, seed: int = 0, attempts: int = BASE_ATTEMPTS) -> BaseRecord:
    """Exact base of degree 2m - 4 built from its apolar ideal.

    Picks a hyperbolic s with m rational roots and generators g1, g2 of degree
    m - 1 with s in <g1, g2>, and keeps them when the pencil <g1, g2> has no
    real-rooted member. Sums of m powers rarely work here: in this degree
    they usually have smaller rank.
    """
    return make_base("pencil", m, 2 * m - 4, seed, attempts)


def minimal_rank_base(m: int, seed: int = 0, attempts: int = BASE_ATTEMPTS) -> BaseRecord:
    """Base of degree 2m - 2: its degree-(m-1) piece is empty."""
    return make_base("minimal_rank", m, 2 * m - 2, seed, attempts)


def base_degree(d: int, m: int) -> tuple[str, int]:
    """The strongest base whose degree fits below d."""
    if d >= 2 * m - 2:
        return "minimal_rank", 2 * m - 2
    if d >= 2 * m - 4:
        d0 = max(m, 2 * m - 4, 2)
        return ("max_rank" if m <= 4 else "pencil"), d0
    return "max_rank", m


# -- induction steps -----------------------------------------------------------


@dataclass(frozen=True)
class WitnessStep:
    case: str
    degree: int  # degree of the input form
    f: BinaryForm
    p1: BinaryForm
    p2: BinaryForm
    s_in: BinaryForm
    shift: Fraction  # s = s_in + shift * p2 * x^deg(q2) in the odd case, else 0
    s: BinaryForm
    q1: BinaryForm
    q2: BinaryForm
    alpha: Fraction
    ell_hat: BinaryForm
    point: tuple[int, int]
    ell: BinaryForm
    q: BinaryForm
    out1: BinaryForm
    out2: BinaryForm
    resultant: Fraction
    g: BinaryForm
    s_cert: HyperbolicityCertificate


def _finish(case, f, p1, p2, s_in, shift, s, q1, q2, alpha, ell_hat, point, ell, q,
            out1, out2) -> WitnessStep:
    res = resultant(out1, out2)
    if res == 0:
        raise WitnessError(f"{case}: output generators share a root")
    g = form_from_apolar(out1, out2)
    cert = is_hyperbolic(s)
    checks = {
        "s hyperbolic": cert.hyperbolic,
        "s in I": in_ideal(s, out1, out2),
        "out1 in f-perp": annihilates(out1, f),
        "out2 in f-perp": annihilates(out2, f),
        "generic degrees": is_generic_degrees(g),
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise WitnessError(f"{case} step at degree {f.degree} failed: {', '.join(bad)}")
    return WitnessStep(case, f.degree, f, p1, p2, s_in, shift, s, q1, q2, alpha, ell_hat,
                       point, ell, q, out1, out2, res, g, cert)


def induct_even_minimal(f: BinaryForm, m: int, s: BinaryForm,
                        cs: Optional[Iterable[Fraction]] = None) -> WitnessStep:
    d = f.degree
    k = d // 2
    if d % 2 or m != k + 1:
        raise ValueError("even minimal step needs d = 2k and m = k + 1")
    piece = apolar_graded_piece(f, m)
    if piece.dim != 2 or not is_generic_degrees(f):
        raise ValueError("f must have generic degrees")
    if not annihilates(s, f) or not is_hyperbolic(s).hyperbolic:
        raise ValueError("s must be a hyperbolic element of f-perp")
    p1 = s
    p2 = next(b for b in piece.basis if linalg.rank([p1.coeffs, b.coeffs]) == 2)
    for c in (cs if cs is not None else affine_points()):
        c = Fraction(c)
        if p1(c, 1) == 0:
            continue  # the zero of ell must avoid the roots of p1
        ell = vanishing_linear(c, 1)
        out2 = ell * p2
        if resultant(p1, out2) == 0:
            continue
        one = BinaryForm.one()
        return _finish(EVEN_MINIMAL, f, p1, p2, s, Fraction(0), s, one, BinaryForm.zero(0),
                       Fraction(0), BinaryForm.zero(1), (c.numerator, c.denominator), ell,
                       BinaryForm.zero(0), p1, out2)
    raise WitnessError("no admissible linear form found")


def _split(r: BinaryForm, a: int, b: int) -> tuple[BinaryForm, BinaryForm]:
    ell = vanishing_linear(a, b)
    try:
        return ell, r.divide(ell)
    except ValueError as exc:  # pragma: no cover - r(a, b) = 0 was checked
        raise WitnessError("exact division by the root factor failed") from exc


def induct_even_general(f: BinaryForm, m: int, s: BinaryForm) -> WitnessStep:
    d = f.degree
    k = d // 2
    if d % 2 or m <= k + 1:
        raise ValueError("even general step needs d = 2k and m > k + 1")
    if not is_generic_degrees(f):
        raise ValueError("f must have generic degrees")
    pair = apolar_generators(f)
    p1, p2 = pair.g1, pair.g2
    q1, q2 = syzygy_representation(s, p1, p2)
    if q1.is_zero():
        p1, p2, q1, q2 = p2, p1, q2, q1
    # alpha = 0 when q2 already has a usable rational root
    pts, _ = rational_roots(q2) if not q2.is_zero() else ([], 0)
    for a, b in pts:
        if p1(a, b) != 0:
            ell, q = _split(q2, a, b)
            return _finish(EVEN_GENERAL, f, p1, p2, s, Fraction(0), s, q1, q2, Fraction(0),
                           BinaryForm.zero(1), (a, b), ell, q, p1, ell * p2)
    for a, b in farey_points():
        v1 = q1(a, b)
        if v1 == 0:
            continue
        # q2 - alpha q1 must vanish at (a, b), which fixes the sign of alpha
        alpha = q2(a, b) / v1
        p1n = p1 + p2.scale(alpha)
        if p1n(a, b) == 0:
            continue
        ell, q = _split(q2 - q1.scale(alpha), a, b)
        return _finish(EVEN_GENERAL, f, p1, p2, s, Fraction(0), s, q1, q2, alpha,
                       BinaryForm.zero(1), (a, b), ell, q, p1n, ell * p2)
    raise WitnessError(f"no point within {POINT_BUDGET}: s = {s}, q1 = {q1}, q2 = {q2}")


def _nudge(s: BinaryForm, p2: BinaryForm, extra: int) -> tuple[Fraction, BinaryForm]:
    """s + eps * p2 * x^extra for the largest eps = 2^-j keeping s hyperbolic."""
    bump = p2 * BinaryForm.monomial(extra, extra)
    for j in range(200):
        eps = Fraction(1, 1 << j)
        t = s + bump.scale(eps)
        if is_hyperbolic(t).hyperbolic:
            return eps, t
    raise WitnessError("could not move s off p1 * R")  # pragma: no cover


def induct_odd(f: BinaryForm, m: int, s: BinaryForm) -> WitnessStep:
    d = f.degree
    k = (d - 1) // 2
    if d % 2 == 0 or m < k + 2:
        raise ValueError("odd step needs d = 2k + 1 and m >= k + 2")
    if not is_generic_degrees(f):
        raise ValueError("f must have generic degrees")
    pair = apolar_generators(f)
    p1, p2 = pair.g1, pair.g2
    s_in, shift = s, Fraction(0)
    q1, q2 = syzygy_representation(s, p1, p2)
    if q2.is_zero():
        # s = p1 q1 leaves nothing to adjust; tilt s inside the open hyperbolic set
        shift, s = _nudge(s, p2, m - k - 2)
        q1, q2 = syzygy_representation(s, p1, p2)
    pts, _ = rational_roots(q1)
    for a, b in pts:
        if p2(a, b) != 0:
            ell, q = _split(q1, a, b)
            return _finish(ODD, f, p1, p2, s_in, shift, s, q1, q2, Fraction(0),
                           BinaryForm.zero(1), (a, b), ell, q, ell * p1, p2)
    for a, b in farey_points():
        v2 = q2(a, b)
        if v2 == 0:
            continue
        v = q1(a, b) / v2
        ell_hat = BinaryForm.linear(v / a, 0) if a else BinaryForm.linear(0, v / b)
        p2n = p2 + ell_hat * p1
        if p2n(a, b) == 0:
            continue
        ell, q = _split(q1 - ell_hat * q2, a, b)
        return _finish(ODD, f, p1, p2, s_in, shift, s, q1, q2, Fraction(0), ell_hat, (a, b),
                       ell, q, ell * p1, p2n)
    raise WitnessError(f"no point within {POINT_BUDGET}: s = {s}, q1 = {q1}, q2 = {q2}")


def induction_step(f: BinaryForm, m: int, s: BinaryForm) -> WitnessStep:
    d = f.degree
    if d % 2:
        return induct_odd(f, m, s)
    if m == d // 2 + 1:
        return induct_even_minimal(f, m, s)
    return induct_even_general(f, m, s)


# -- chains --------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateChain:
    d: int
    m: int
    seed: int
    base: BaseRecord
    steps: tuple[WitnessStep, ...]
    rank: RankCertificate
    typicality: TypicalityCertificate

    @property
    def form(self) -> BinaryForm:
        return self.steps[-1].g if self.steps else self.base.form

    @property
    def witness(self) -> BinaryForm:
        return self.steps[-1].s if self.steps else self.base.witness

    @property
    def lower_level(self) -> Rigor:
        # containment along the chain carries the base's lower bound upward
        return strongest([self.rank.rigor, self.base.level])

    @property
    def typicality_level(self) -> Rigor:
        return strongest([self.typicality.level, self.base.level])

    @property
    def rigor(self) -> Rigor:
        return weakest([self.base.level, self.lower_level, self.typicality_level])


def build_chain(base: BaseRecord, d: int, seed: int = 0,
                budget: Optional[SearchBudget] = None) -> CertificateChain:
    m = base.m
    f, s = base.form, base.witness
    steps = []
    while f.degree < d:
        step = induction_step(f, m, s)
        steps.append(step)
        f, s = step.g, step.s
    budget = budget or SearchBudget(seed=seed)
    rank = real_rank_search(f, budget, hints=(s,))
    if rank.rank != m:
        raise WitnessError(f"rank of the final form is {rank.rank}, expected {m}")
    typ = typicality_certificate(f, rank)
    if not typ.typical:
        raise WitnessError("final form has a real-rooted element in degree m - 1")
    return CertificateChain(d, m, seed, base, tuple(steps), rank, typ)


def witness(d: int, m: int, seed: int = 0,
            budget: Optional[SearchBudget] = None) -> tuple[BinaryForm, CertificateChain]:
    if not admissible(d, m):
        raise ValueError(f"need d >= 2 and {(d + 2) // 2} <= m <= {d} (got d = {d}, m = {m})")
    kind, d0 = base_degree(d, m)
    base = make_base(kind, m, d0, seed)
    chain = build_chain(base, d, seed, budget)
    return chain.form, chain


@dataclass(frozen=True)
class Atlas:
    d_max: int
    seed: int
    chains: tuple[CertificateChain, ...]

    def summary(self) -> dict[str, int]:
        out = {r.value: 0 for r in Rigor}
        for c in self.chains:
            out[c.rigor.value] += 1
        return out


def atlas(d_max: int, seed: int = 0, budget: Optional[SearchBudget] = None) -> Atlas:
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    return Atlas(d_max, seed, tuple(witness(d, m, seed, budget)[1]
                                    for d, m in admissible_pairs(d_max)))
