"""Replay verifier for certificate documents.

Two passes. First the exact claims are re-checked directly on the data in
the document (membership in apolar ideals, hyperbolicity, resultants,
containment), so a tampered witness fails under a descriptive name. Then
the certificate is recomputed from its inputs (form, seed, recorded base
attempt) and its dump must agree with the document field by field; this
catches edits to search traces and rigor labels that no exact check covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .apolarity import (DecompositionError, PowerTerm, annihilates, apolar_graded_piece, decompose,
                        in_ideal, is_generic_degrees, resum)
from .codec import (CodecError, dump_base, dump_chain, dump_decomposition, dump_form,
                    dump_perturbation, dump_rank, dump_typicality, load_budget, load_form,
                    parse_rat)
from .forms import BinaryForm
from .rank import (SearchBudget, perturbation_stability_test, real_rank_search,
                   typicality_certificate)
from .roots import is_hyperbolic, resultant
from .witness import (WitnessError, admissible, base_attempt, base_degree, build_chain)


class VerificationError(Exception):
    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)


@dataclass
class VerificationReport:
    kind: str
    checks: list[str] = field(default_factory=list)

    def require(self, ok: bool, check: str, detail: str = "") -> None:
        if not ok:
            raise VerificationError(check, detail)
        self.checks.append(check)


def first_difference(expected: Any, actual: Any, path: str = "payload") -> Optional[str]:
    """Path of the first leaf where two JSON trees differ, or None."""
    if type(expected) is not type(actual):
        return path
    if isinstance(expected, dict):
        for k in list(expected) + [k for k in actual if k not in expected]:
            if k not in expected or k not in actual:
                return f"{path}.{k}"
            sub = first_difference(expected[k], actual[k], f"{path}.{k}")
            if sub:
                return sub
        return None
    if isinstance(expected, list):
        if len(expected) != len(actual):
            return f"{path}[len]"
        for i, (a, b) in enumerate(zip(expected, actual)):
            sub = first_difference(a, b, f"{path}[{i}]")
            if sub:
                return sub
        return None
    return None if expected == actual else path


def _replay(report: VerificationReport, expected: dict, actual: dict, path: str) -> None:
    diff = first_difference(expected, actual, path)
    report.require(diff is None, "replay", f"recomputed certificate differs at {diff}")


def _seed(p: dict) -> int:
    seed = p["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise VerificationError("structure", "seed must be an integer")
    return seed


def _check_budget(report: VerificationReport, doc: Any, seed: int) -> SearchBudget:
    budget = load_budget(doc)
    report.require(budget == SearchBudget(seed=seed), "canonical search budget",
                   "budget must be the default budget with the document seed")
    return budget


def _check_rank_claims(report: VerificationReport, f: BinaryForm, p: dict, where: str) -> None:
    w = load_form(p["witness"])
    report.require(load_form(p["form"]) == f, f"{where}: form matches subject")
    report.require(w.degree == p["rank"], f"{where}: witness degree equals rank")
    report.require(annihilates(w, f), f"{where}: witness in apolar ideal")
    report.require(is_hyperbolic(w).hyperbolic, f"{where}: witness hyperbolicity")


# -- per kind ------------------------------------------------------------------


def _verify_rank(report: VerificationReport, f: BinaryForm, p: dict) -> None:
    seed = _seed(p)
    _check_rank_claims(report, f, p, "rank")
    budget = _check_budget(report, p["budget"], seed)
    report.require(p["hints"] == [], "rank: no hints")
    cert = real_rank_search(f, budget)
    _replay(report, {"seed": seed, **dump_rank(cert)}, p, "payload")


def _verify_typicality(report: VerificationReport, f: BinaryForm, p: dict) -> None:
    seed = _seed(p)
    rp = p["rank_certificate"]
    _check_rank_claims(report, f, rp, "rank")
    budget = _check_budget(report, rp["budget"], seed)
    report.require(rp["hints"] == [], "rank: no hints")
    report.require(is_generic_degrees(f), "generic degrees")
    cert = real_rank_search(f, budget)
    typ = typicality_certificate(f, cert)
    _replay(report, {"seed": seed, "rank_certificate": dump_rank(cert), **dump_typicality(typ)},
            p, "payload")


def _verify_step(report: VerificationReport, i: int, st: dict, f: BinaryForm,
                 s: BinaryForm, m: int) -> tuple[BinaryForm, BinaryForm]:
    tag = f"step {i}"
    report.require(load_form(st["f"]) == f, f"{tag}: input form continues the chain")
    report.require(load_form(st["s_in"]) == s, f"{tag}: input witness continues the chain")
    s_new = load_form(st["s"])
    p1, p2 = load_form(st["p1"]), load_form(st["p2"])
    q1, q2 = load_form(st["q1"]), load_form(st["q2"])
    out1, out2 = load_form(st["out1"]), load_form(st["out2"])
    g = load_form(st["g"])
    report.require(is_hyperbolic(s_new).hyperbolic, f"{tag}: hyperbolicity of s")
    report.require(annihilates(p1, f) and annihilates(p2, f), f"{tag}: p1, p2 in apolar ideal of f")
    report.require(_combination(p1, q1, p2, q2, s_new.degree) == s_new,
                   f"{tag}: membership s = p1 q1 + p2 q2")
    report.require(annihilates(out1, f) and annihilates(out2, f),
                   f"{tag}: containment of the new ideal in the apolar ideal of f")
    res = resultant(out1, out2)
    report.require(res != 0 and res == parse_rat(st["resultant"]),
                   f"{tag}: resultant of the new generators")
    report.require(g.degree == f.degree + 1 and annihilates(out1, g) and annihilates(out2, g),
                   f"{tag}: new form has the new generators as apolar ideal")
    report.require(in_ideal(s_new, out1, out2), f"{tag}: membership of s in the new ideal")
    report.require(is_generic_degrees(g), f"{tag}: generic degrees")
    lower = apolar_graded_piece(g, m - 1).basis
    report.require(all(annihilates(h, f) for h in lower),
                   f"{tag}: containment of degree-{m - 1} pieces")
    return g, s_new


def _combination(p1, q1, p2, q2, e: int) -> BinaryForm:
    total = BinaryForm.zero(e)
    for p, q in ((p1, q1), (p2, q2)):
        if not q.is_zero():
            total = total + p * q
    return total


def _verify_witness(report: VerificationReport, f: BinaryForm, p: dict) -> None:
    d, m, seed = p["d"], p["m"], _seed(p)
    report.require(isinstance(d, int) and isinstance(m, int) and admissible(d, m),
                   "admissible pair")
    bp = p["base"]
    kind, degree = base_degree(d, m)
    report.require(bp["kind"] == kind and bp["degree"] == degree and bp["m"] == m,
                   "base kind and degree")
    report.require(bp["seed"] == seed, "base seed")
    base_form, s = load_form(bp["form"]), load_form(bp["witness"])
    report.require(s.degree == m and annihilates(s, base_form), "base witness in apolar ideal")
    report.require(is_hyperbolic(s).hyperbolic, "base witness hyperbolicity")
    g = base_form
    for i, st in enumerate(p["steps"]):
        g, s = _verify_step(report, i, st, g, s, m)
    report.require(g == f, "final form matches subject")
    _check_rank_claims(report, f, p["rank"], "rank")
    report.require(p["rank"]["rank"] == m, "rank equals m")
    report.require(p["typicality"]["typical"] is True, "typicality")
    attempt = bp["attempt"]
    if not isinstance(attempt, int) or isinstance(attempt, bool) or attempt < 0:
        raise VerificationError("structure", "base attempt must be a non-negative integer")
    base = base_attempt(kind, m, degree, seed, attempt)
    report.require(base is not None, "base acceptance", f"attempt {attempt} is rejected on replay")
    _replay(report, dump_base(base), bp, "payload.base")
    chain = build_chain(base, d, seed)
    _replay(report, dump_chain(chain), p, "payload")


def _verify_perturbation(report: VerificationReport, f: BinaryForm, p: dict) -> None:
    seed = _seed(p)
    radius = parse_rat(p["radius"])
    trials = p["trials"]
    report.require(isinstance(trials, int) and not isinstance(trials, bool) and trials >= 0,
                   "trial count")
    for k, h in enumerate(p["forms"]):
        h = load_form(h)
        report.require(h.degree == f.degree and (h - f).norm_inf() <= radius,
                       f"perturbation {k} within radius")
    rep = perturbation_stability_test(f, radius, trials, seed)
    _replay(report, dump_perturbation(rep), p, "payload")


def _verify_decomposition(report: VerificationReport, f: BinaryForm, p: dict) -> None:
    s = load_form(p["apolar_form"])
    report.require(annihilates(s, f), "apolar form in apolar ideal")
    report.require(is_hyperbolic(s).hyperbolic, "apolar form hyperbolicity")
    terms = [PowerTerm(parse_rat(t["c"]), parse_rat(t["a"]), parse_rat(t["b"])) for t in p["terms"]]
    total = resum(terms, f.degree)
    residual = (total - f).norm_inf()
    report.require(total == load_form(p["resum"]), "re-summation")
    report.require(residual == parse_rat(p["residual"]), "residual")
    precision = p["precision"]
    if not isinstance(precision, int) or isinstance(precision, bool) or precision < 0:
        raise VerificationError("structure", "precision must be a non-negative integer")
    if p["mode"] == "exact":
        report.require(residual == 0, "exact residual is zero")
    else:
        report.require(residual < Fraction(1, 1 << precision), "residual below precision")
    dec = decompose(s, f, precision)
    expected = {**dump_decomposition(dec), "resum": dump_form(resum(dec.terms, f.degree))}
    _replay(report, expected, p, "payload")


_VERIFIERS = {
    "rank": _verify_rank,
    "typicality": _verify_typicality,
    "witness": _verify_witness,
    "perturbation": _verify_perturbation,
    "decomposition": _verify_decomposition,
}


def verify_document(doc: dict) -> VerificationReport:
    """Re-check a parsed document; raises VerificationError naming the first failure."""
    kind = doc["kind"]
    report = VerificationReport(kind)
    try:
        f = load_form(doc["subject"])
        payload = doc["payload"]
        if not isinstance(payload, dict):
            raise VerificationError("structure", "payload must be an object")
        _VERIFIERS[kind](report, f, payload)
    except VerificationError:
        raise
    except (CodecError, KeyError, TypeError, IndexError, AttributeError) as exc:
        raise VerificationError("structure", f"{type(exc).__name__}: {exc}") from exc
    except (ValueError, ArithmeticError, WitnessError, DecompositionError) as exc:
        raise VerificationError("recomputation", f"{type(exc).__name__}: {exc}") from exc
    return report
