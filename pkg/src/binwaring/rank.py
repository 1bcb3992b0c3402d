"""Complex and real Waring ranks with certificates.

The real rank of f is the least degree e in which f-perp contains a form with
deg-many distinct real roots. Presence is always certified exactly by a
witness. Absence is exact when the graded piece has dimension at most two
(pencil decision); above that it is only a seeded search that came up empty.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .apolarity import (GradedPiece, apolar_generators, apolar_graded_piece,
                        is_generic_degrees, middle_catalecticant_rank)
from .forms import BinaryForm
from .pencil import pencil_contains_hyperbolic, pencil_contains_real_rooted
from .roots import (HyperbolicityCertificate, ZeroFormError, count_distinct_roots,
                    is_hyperbolic, is_real_rooted)


class Rigor(str, Enum):
    EXACT = "EXACT"
    THEOREM_BACKED = "THEOREM_BACKED"
    EMPIRICAL = "EMPIRICAL"

    @property
    def strength(self) -> int:
        return {"EXACT": 2, "THEOREM_BACKED": 1, "EMPIRICAL": 0}[self.value]


def weakest(levels) -> Rigor:
    levels = list(levels)
    if not levels:
        return Rigor.EXACT
    return min(levels, key=lambda r: r.strength)


def strongest(levels) -> Rigor:
    return max(levels, key=lambda r: r.strength)


class NonGenericDegreesError(ValueError):
    pass


# -- subspace search ----------------------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    max_height: int = 2
    max_directions: int = 200
    root_trials: int = 400
    seed: int = 0


@dataclass(frozen=True)
class SearchReport:
    degree: int
    dimension: int
    found: bool
    witness: Optional[BinaryForm]
    phase: Optional[str]  # "single" | "hint" | "direction" | "roots"
    tested: int  # candidates passed to the exact test
    budget: SearchBudget


def _float_hyperbolic(form: BinaryForm) -> bool:
    """Cheap floating-point screen; a False here only skips a candidate."""
    e = form.degree
    big = max(abs(c) for c in form.coeffs)
    try:
        desc = np.array([float(c / big) for c in reversed(form.coeffs)])
    except OverflowError:
        return True
    nz = np.flatnonzero(desc)
    if nz.size == 0:
        return False
    if nz[0] > 1:  # root at infinity of multiplicity >= 2
        return False
    r = np.roots(desc)
    return bool(np.all(np.abs(r.imag) <= 1e-6 * (1 + np.abs(r))))


def _directions(k: int, max_height: int):
    for h in range(1, max_height + 1):
        for v in itertools.product(range(-h, h + 1), repeat=k):
            if max(abs(c) for c in v) != h:
                continue
            first = next(c for c in v if c)
            if first > 0:
                yield v


def _project(piece: GradedPiece, hint: BinaryForm) -> Optional[BinaryForm]:
    if hint.degree != piece.degree or hint.is_zero():
        return None
    cols = [b.coeffs for b in piece.basis]
    gram = [[sum(u * v for u, v in zip(ci, cj)) for cj in cols] for ci in cols]
    rhs = [sum(u * v for u, v in zip(ci, hint.coeffs)) for ci in cols]
    cand = piece.combine(linalg.solve(gram, rhs))
    return None if cand.is_zero() else cand


def _random_point(rng: random.Random) -> tuple[Fraction, Fraction]:
    # rational parametrisation of the circle spreads points over the projective line
    u = Fraction(rng.randint(-64, 64), 16)
    return (1 - u * u, 2 * u)


def subspace_hyperbolic_search(piece: GradedPiece, budget: Optional[SearchBudget] = None,
                               hints: Sequence[BinaryForm] = ()) -> SearchReport:
    """Look for a hyperbolic form in the span of ``piece``.

    Candidates come from the hints (projected onto the piece), then integer
    direction vectors by height, then forms through ``dim - 1`` random real
    points. Every reported witness is exact; a miss proves nothing.
    """
    budget = budget or SearchBudget()
    e, k = piece.degree, piece.dim
    tested = 0

    def report(w, phase):
        return SearchReport(e, k, w is not None, w, phase, tested, budget)

    if k == 0:
        return report(None, None)
    if k == 1:
        tested = 1
        s = piece.basis[0]
        return report(s if is_hyperbolic(s).hyperbolic else None, "single")
    for h in hints:
        cand = _project(piece, h)
        if cand is not None:
            tested += 1
            if is_hyperbolic(cand).hyperbolic:
                return report(cand.primitive(), "hint")
    for i, v in enumerate(_directions(k, budget.max_height)):
        if i >= budget.max_directions:
            break
        cand = piece.combine(v)
        if _float_hyperbolic(cand):
            tested += 1
            if is_hyperbolic(cand).hyperbolic:
                return report(cand.primitive(), "direction")
    rng = random.Random(f"{budget.seed}:{e}:{k}:roots")
    for _ in range(budget.root_trials):
        pts = [_random_point(rng) for _ in range(k - 1)]
        rows = [[b(a, c) for b in piece.basis] for a, c in pts]
        null = linalg.nullspace(rows, k)
        if len(null) != 1:
            continue
        cand = piece.combine(null[0])
        if _float_hyperbolic(cand):
            tested += 1
            if is_hyperbolic(cand).hyperbolic:
                return report(cand.primitive(), "roots")
    return report(None, None)


# -- rank certificates --------------------------------------------------------


@dataclass(frozen=True)
class LowerBoundEvidence:
    """No hyperbolic form in (f-perp)_degree, with the strength of that claim.

    ``payload`` is a HyperbolicityCertificate (dim 1), a PencilDecision
    (dim 2), a SearchReport (dim >= 3) or None (dim 0).
    """

    degree: int
    dimension: int
    level: Rigor
    basis: tuple[BinaryForm, ...]
    payload: object = None
    verdict: str = "no-hyperbolic-form"


@dataclass(frozen=True)
class RankCertificate:
    form: BinaryForm
    rank: int
    generator_degrees: tuple[int, int]
    witness: BinaryForm
    witness_cert: HyperbolicityCertificate
    witness_method: str
    evidence: tuple[LowerBoundEvidence, ...]
    budget: SearchBudget
    hints: tuple[BinaryForm, ...] = ()

    @property
    def rigor(self) -> Rigor:
        # pieces grow with the degree, so the top piece carries the weakest level
        return weakest(ev.level for ev in self.evidence)


def _full_space_witness(e: int) -> BinaryForm:
    return BinaryForm.from_roots([(i, 1) for i in range(e)])


def _probe(piece: GradedPiece, budget: SearchBudget, hints: Sequence[BinaryForm]
           ) -> tuple[Optional[BinaryForm], str, Rigor, object]:
    """Witness (or None), method, absence level and payload for one piece."""
    k = piece.dim
    if k == 0:
        return None, "empty", Rigor.EXACT, None
    if k == 1:
        cert = is_hyperbolic(piece.basis[0])
        return (piece.basis[0] if cert.hyperbolic else None), "single", Rigor.EXACT, cert
    if k == 2:
        dec = pencil_contains_hyperbolic(*piece.basis)
        return dec.witness, "pencil", Rigor.EXACT, dec
    rep = subspace_hyperbolic_search(piece, budget, hints)
    return rep.witness, "search:" + (rep.phase or "none"), Rigor.EMPIRICAL, rep


def real_rank_search(f: BinaryForm, budget: Optional[SearchBudget] = None,
                     hints: Sequence[BinaryForm] = ()) -> RankCertificate:
    if f.is_zero():
        raise ZeroFormError("the zero form has no rank")
    if f.degree < 1:
        raise ValueError("rank search needs degree >= 1")
    budget = budget or SearchBudget()
    hints = tuple(hints)
    d = f.degree
    pair = apolar_generators(f)
    evidence = []
    e = pair.g1.degree
    while True:
        if e > d:
            s = _full_space_witness(e)
            return RankCertificate(f, e, pair.degrees, s, is_hyperbolic(s), "full-space",
                                   tuple(evidence), budget, hints)
        piece = apolar_graded_piece(f, e)
        w, method, level, payload = _probe(piece, budget, [h for h in hints if h.degree == e])
        if w is not None:
            w = w.primitive()
            return RankCertificate(f, e, pair.degrees, w, is_hyperbolic(w), method,
                                   tuple(evidence), budget, hints)
        evidence.append(LowerBoundEvidence(e, piece.dim, level, piece.basis, payload))
        e += 1


def complex_rank(f: BinaryForm) -> int:
    """Comas-Seiguer: d1 if the pencil of lowest generators has a squarefree member."""
    if f.is_zero():
        raise ZeroFormError("the zero form has no rank")
    pair = apolar_generators(f)
    d1, d2 = pair.degrees
    if d1 == d2:
        # a base-point-free pencil has squarefree general members
        return d1
    if count_distinct_roots(pair.g1) == d1:
        return d1
    return f.degree + 2 - d1


# -- typicality -----------------------------------------------------------------


@dataclass(frozen=True)
class TypicalityCertificate:
    """Whether (f-perp)_{m-1} holds a form with only real roots (repeats allowed).

    ``payload``: None (empty piece), bool from is_real_rooted (dim 1), a
    RealRootedPencilDecision (dim 2), or the rank search's SearchReport.
    """

    form: BinaryForm
    middle_rank: tuple[int, int]
    rank: RankCertificate
    degree: int
    dimension: int
    real_rooted_found: bool
    level: Rigor
    payload: object

    @property
    def typical(self) -> bool:
        return not self.real_rooted_found

    @property
    def rigor(self) -> Rigor:
        return weakest([self.level, self.rank.rigor])


def real_rooted_probe(piece: GradedPiece, search: Optional[SearchReport] = None
                      ) -> tuple[bool, Rigor, object]:
    k = piece.dim
    if k == 0:
        return False, Rigor.EXACT, None
    if k == 1:
        ok = is_real_rooted(piece.basis[0])
        return ok, Rigor.EXACT, ok
    if k == 2:
        dec = pencil_contains_real_rooted(*piece.basis)
        return dec.found, Rigor.EXACT, dec
    # only hyperbolic members were sampled, so a miss is weak evidence
    return bool(search is not None and search.found), Rigor.EMPIRICAL, search


def typicality_certificate(f: BinaryForm, rank_cert: Optional[RankCertificate] = None,
                           budget: Optional[SearchBudget] = None) -> TypicalityCertificate:
    if f.is_zero():
        raise ZeroFormError("the zero form has no rank")
    if not is_generic_degrees(f):
        raise NonGenericDegreesError(
            "apolar ideal is not generated in generic degrees; the typicality "
            "criterion does not apply, perturb the form first "
            "(see perturbation_stability_test)")
    cert = rank_cert or real_rank_search(f, budget)
    m = cert.rank
    piece = apolar_graded_piece(f, m - 1)
    search = next((ev.payload for ev in cert.evidence
                   if ev.degree == m - 1 and isinstance(ev.payload, SearchReport)), None)
    found, level, payload = real_rooted_probe(piece, search)
    return TypicalityCertificate(f, middle_catalecticant_rank(f), cert, m - 1, piece.dim,
                                 found, level, payload)


# -- perturbations -------------------------------------------------------------


@dataclass(frozen=True)
class PerturbationReport:
    form: BinaryForm
    radius: Fraction
    trials: int
    seed: int
    forms: tuple[BinaryForm, ...]
    ranks: tuple[int, ...]
    levels: tuple[Rigor, ...]

    @property
    def histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.ranks:
            out[r] = out.get(r, 0) + 1
        return dict(sorted(out.items()))

    @property
    def stable(self) -> bool:
        return len(set(self.ranks)) <= 1


def perturb(f: BinaryForm, radius: Fraction, rng: random.Random, grid: int = 1000
            ) -> BinaryForm:
    """f plus a random rational perturbation of sup-norm at most radius."""
    radius = Fraction(radius)
    delta = [radius * Fraction(rng.randint(-grid, grid), grid) for _ in f.coeffs]
    return BinaryForm(tuple(c + dc for c, dc in zip(f.coeffs, delta)))


def perturbation_stability_test(f: BinaryForm, radius, trials: int, seed: int = 0,
                                budget: Optional[SearchBudget] = None,
                                hints: Sequence[BinaryForm] = ()) -> PerturbationReport:
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    budget = budget or SearchBudget(seed=seed)
    hints = tuple(hints)
    if not hints:
        hints = (real_rank_search(f, budget).witness,)
    forms, ranks, levels = [], [], []
    for i in range(trials):
        h = perturb(f, radius, random.Random(f"{seed}:perturb:{i}"))
        cert = real_rank_search(h, budget, hints)
        forms.append(h)
        ranks.append(cert.rank)
        levels.append(cert.rigor)
    return PerturbationReport(f, radius, trials, seed, tuple(forms), tuple(ranks), tuple(levels))
