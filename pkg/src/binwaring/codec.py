"""JSON documents for forms and certificates.

Every rational is a reduced "numerator/denominator" string; floats never
appear. ``dump_*`` functions turn library objects into plain dicts; the
verifier recomputes objects and compares their dumps with the document.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd
from typing import Any, Optional

from .apolarity import Decomposition
from .forms import BinaryForm
from .pencil import PencilDecision, RealRootedPencilDecision
from .rank import (LowerBoundEvidence, PerturbationReport, RankCertificate, SearchBudget,
                   SearchReport, TypicalityCertificate)
from .roots import HyperbolicityCertificate
from .witness import BaseRecord, CertificateChain, WitnessStep

SCHEMA_VERSION = "1.0"
SUPPORTED_MAJOR = 1
KINDS = ("rank", "witness", "typicality", "perturbation", "decomposition")

_RAT = re.compile(r"^(-?\d+)/(\d+)$")


class CodecError(ValueError):
    """Malformed document."""


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(text: Any) -> Fraction:
    if not isinstance(text, str):
        raise CodecError(f"rational must be a string, got {text!r}")
    m = _RAT.match(text)
    if not m:
        raise CodecError(f"malformed rational {text!r}")
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise CodecError(f"zero denominator in {text!r}")
    if gcd(abs(num), den) != 1:
        raise CodecError(f"rational {text!r} is not reduced")
    return Fraction(num, den)


def opt_rat(x) -> Optional[str]:
    return None if x is None else rat(x)


# -- forms ---------------------------------------------------------------------


def dump_form(f: BinaryForm) -> dict:
    return {"degree": f.degree, "coeffs": [rat(c) for c in f.coeffs]}


def load_form(doc: Any) -> BinaryForm:
    if not isinstance(doc, dict) or "coeffs" not in doc or "degree" not in doc:
        raise CodecError("form document needs 'degree' and 'coeffs'")
    coeffs, degree = doc["coeffs"], doc["degree"]
    if not isinstance(coeffs, list) or not isinstance(degree, int) or isinstance(degree, bool):
        raise CodecError("bad form document types")
    if len(coeffs) != degree + 1:
        raise CodecError(f"degree {degree} needs {degree + 1} coefficients, got {len(coeffs)}")
    return BinaryForm(tuple(parse_rat(c) for c in coeffs))


def _forms(fs) -> list:
    return [dump_form(f) for f in fs]


# -- certificates --------------------------------------------------------------


def dump_intervals(ivs) -> list:
    return [[rat(lo), rat(hi)] for lo, hi in ivs]


def dump_hyperbolicity(c: HyperbolicityCertificate) -> dict:
    iso = c.isolation
    return {
        "form": dump_form(c.form),
        "hyperbolic": c.hyperbolic,
        "reason": c.reason,
        "distinct_real_roots": c.distinct_real_roots,
        "repeated_factor": [str(v) for v in c.repeated_factor],
        "intervals": dump_intervals(iso.intervals) if iso else None,
        "infinity_multiplicity": iso.infinity_multiplicity if iso else None,
    }


def dump_pencil(dec: PencilDecision) -> dict:
    tr = dec.trace
    return {
        "found": dec.found,
        "witness": dump_form(dec.witness) if dec.witness else None,
        "parameter": opt_rat(dec.parameter),
        "at_infinity": dec.at_infinity,
        "a": dump_form(tr.a),
        "b": dump_form(tr.b),
        "discriminant": [rat(c) for c in tr.discriminant],
        "leading": [rat(c) for c in tr.leading],
        "critical": [str(c) for c in tr.critical],
        "intervals": dump_intervals(tr.intervals),
        "samples": [{"t": opt_rat(s.t), "distinct_real_roots": s.distinct_real_roots,
                     "hyperbolic": s.hyperbolic} for s in tr.samples],
        "degenerate": tr.degenerate,
    }


def dump_real_rooted_pencil(dec: RealRootedPencilDecision) -> dict:
    return {
        "found": dec.found,
        "common_factor": dump_form(dec.common_factor),
        "common_factor_real_rooted": dec.common_factor_real_rooted,
        "a": dump_form(dec.a),
        "b": dump_form(dec.b),
        "hyperbolic": dump_pencil(dec.hyperbolic) if dec.hyperbolic else None,
        "infinity_real_rooted": dec.infinity_real_rooted,
        "critical": [{"lo": rat(c.lo), "hi": rat(c.hi), "distinct_real_roots": c.distinct_real_roots,
                      "distinct_roots": c.distinct_roots} for c in dec.critical],
    }


def dump_budget(b: SearchBudget) -> dict:
    return {"max_height": b.max_height, "max_directions": b.max_directions,
            "root_trials": b.root_trials, "seed": b.seed}


def load_budget(doc: Any) -> SearchBudget:
    keys = ("max_height", "max_directions", "root_trials", "seed")
    if not isinstance(doc, dict) or set(doc) != set(keys):
        raise CodecError("budget needs exactly " + ", ".join(keys))
    for k in keys:
        if not isinstance(doc[k], int) or isinstance(doc[k], bool):
            raise CodecError(f"budget field {k} must be an integer")
    return SearchBudget(**{k: doc[k] for k in keys})


def dump_search(r: SearchReport) -> dict:
    return {"degree": r.degree, "dimension": r.dimension, "found": r.found,
            "witness": dump_form(r.witness) if r.witness else None, "phase": r.phase,
            "tested": r.tested, "budget": dump_budget(r.budget)}


def dump_payload(p) -> Optional[dict]:
    if p is None:
        return None
    if isinstance(p, bool):
        return {"type": "real_rooted", "value": p}
    if isinstance(p, str):
        return {"type": "fact", "statement": p}
    if isinstance(p, HyperbolicityCertificate):
        return {"type": "hyperbolicity", **dump_hyperbolicity(p)}
    if isinstance(p, PencilDecision):
        return {"type": "pencil", **dump_pencil(p)}
    if isinstance(p, RealRootedPencilDecision):
        return {"type": "real_rooted_pencil", **dump_real_rooted_pencil(p)}
    if isinstance(p, SearchReport):
        return {"type": "search", **dump_search(p)}
    raise TypeError(f"cannot serialise payload {type(p).__name__}")


def dump_evidence(ev: LowerBoundEvidence) -> dict:
    return {"degree": ev.degree, "dimension": ev.dimension, "verdict": ev.verdict,
            "level": ev.level.value, "basis": _forms(ev.basis), "payload": dump_payload(ev.payload)}


def dump_rank(c: RankCertificate) -> dict:
    return {
        "form": dump_form(c.form),
        "rank": c.rank,
        "generator_degrees": list(c.generator_degrees),
        "witness": dump_form(c.witness),
        "witness_cert": dump_hyperbolicity(c.witness_cert),
        "witness_method": c.witness_method,
        "evidence": [dump_evidence(ev) for ev in c.evidence],
        "budget": dump_budget(c.budget),
        "hints": _forms(c.hints),
        "upper_level": "EXACT",
        "rigor": c.rigor.value,
    }


def dump_typicality(t: TypicalityCertificate) -> dict:
    return {
        "form": dump_form(t.form),
        "middle_rank": list(t.middle_rank),
        "rank": t.rank.rank,
        "degree": t.degree,
        "dimension": t.dimension,
        "real_rooted_found": t.real_rooted_found,
        "level": t.level.value,
        "payload": dump_payload(t.payload),
        "typical": t.typical,
        "rigor": t.rigor.value,
    }


def dump_base(b: BaseRecord) -> dict:
    return {
        "kind": b.kind, "m": b.m, "degree": b.degree, "seed": b.seed, "attempt": b.attempt,
        "form": dump_form(b.form),
        "points": [rat(t) for t in b.points],
        "weights": [rat(c) for c in b.weights],
        "witness": dump_form(b.witness),
        "witness_cert": dump_hyperbolicity(b.witness_cert),
        "lower_dimension": b.lower_dimension,
        "level": b.level.value,
        "payload": dump_payload(b.payload),
    }


def dump_step(s: WitnessStep) -> dict:
    return {
        "case": s.case, "degree": s.degree, "f": dump_form(s.f),
        "p1": dump_form(s.p1), "p2": dump_form(s.p2),
        "s_in": dump_form(s.s_in), "shift": rat(s.shift), "s": dump_form(s.s),
        "q1": dump_form(s.q1), "q2": dump_form(s.q2),
        "alpha": rat(s.alpha), "ell_hat": dump_form(s.ell_hat),
        "point": [s.point[0], s.point[1]], "ell": dump_form(s.ell), "q": dump_form(s.q),
        "out1": dump_form(s.out1), "out2": dump_form(s.out2),
        "resultant": rat(s.resultant), "g": dump_form(s.g),
        "s_cert": dump_hyperbolicity(s.s_cert),
    }


def dump_chain(c: CertificateChain) -> dict:
    return {
        "d": c.d, "m": c.m, "seed": c.seed,
        "base": dump_base(c.base),
        "steps": [dump_step(s) for s in c.steps],
        "rank": dump_rank(c.rank),
        "typicality": dump_typicality(c.typicality),
        "summary": {"upper_level": "EXACT", "lower_level": c.lower_level.value,
                    "typicality_level": c.typicality_level.value, "rigor": c.rigor.value},
    }


def dump_perturbation(r: PerturbationReport) -> dict:
    return {
        "radius": rat(r.radius), "trials": r.trials, "seed": r.seed,
        "forms": _forms(r.forms),
        "ranks": list(r.ranks), "levels": [lv.value for lv in r.levels],
        "histogram": {str(k): v for k, v in r.histogram.items()},
        "stable": r.stable,
    }


def dump_decomposition(dec: Decomposition) -> dict:
    return {
        "apolar_form": dump_form(dec.apolar_form), "degree": dec.degree, "mode": dec.mode,
        "terms": [{"c": rat(t.c), "a": rat(t.a), "b": rat(t.b)} for t in dec.terms],
        "residual": rat(dec.residual), "precision": dec.precision,
    }


# -- documents -----------------------------------------------------------------


def document(kind: str, subject: BinaryForm, payload: dict) -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown document kind {kind!r}")
    return {"schema": SCHEMA_VERSION, "kind": kind, "subject": dump_form(subject),
            "payload": payload}


def rank_document(cert: RankCertificate, seed: int) -> dict:
    return document("rank", cert.form, {"seed": seed, **dump_rank(cert)})


def typicality_document(typ: TypicalityCertificate, seed: int) -> dict:
    return document("typicality", typ.form, {"seed": seed, "rank_certificate": dump_rank(typ.rank),
                                             **dump_typicality(typ)})


def witness_document(chain: CertificateChain) -> dict:
    return document("witness", chain.form, dump_chain(chain))


def perturbation_document(report: PerturbationReport) -> dict:
    return document("perturbation", report.form, dump_perturbation(report))


def decomposition_document(f: BinaryForm, dec: Decomposition, total: BinaryForm) -> dict:
    """``total`` is the re-summed form, kept so readers can see the check."""
    return document("decomposition", f, {**dump_decomposition(dec), "resum": dump_form(total)})


def serialize(doc: dict) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def check_schema(version: Any) -> None:
    if not isinstance(version, str) or not re.fullmatch(r"\d+\.\d+", version):
        raise CodecError(f"malformed schema version {version!r}")
    if int(version.split(".")[0]) != SUPPORTED_MAJOR:
        raise CodecError(f"unsupported schema major version in {version!r}")


def parse_document(text: str) -> dict:
    """Parse and structurally validate a certificate document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CodecError("document must be a JSON object")
    missing = {"schema", "kind", "subject", "payload"} - set(doc)
    if missing:
        raise CodecError("document lacks " + ", ".join(sorted(missing)))
    check_schema(doc["schema"])
    if doc["kind"] not in KINDS:
        raise CodecError(f"unknown document kind {doc['kind']!r}")
    load_form(doc["subject"])
    _check_strings(doc)
    return doc


def _check_strings(node: Any) -> None:
    # floats anywhere would mean a lossy producer
    if isinstance(node, float):
        raise CodecError("floating-point value in document")
    if isinstance(node, dict):
        for v in node.values():
            _check_strings(v)
    elif isinstance(node, list):
        for v in node:
            _check_strings(v)
