"""Command-line front end.

Documents go to standard output (or --out); one-line human summaries go to
standard error when stdout carries a document. Exit codes: 0 ok, 1 failed
verification, 2 usage or parse error, 3 rigor shortfall under --exact-only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__, codec
from .apolarity import DecompositionError, decompose, resum
from .forms import BinaryForm, FormSyntaxError, format_form, parse_form
from .rank import (NonGenericDegreesError, Rigor, SearchBudget, perturbation_stability_test,
                   real_rank_search, typicality_certificate)
from .roots import ZeroFormError
from .verify import VerificationError, verify_document
from .witness import admissible, admissible_pairs, witness

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RIGOR = 3

SEED_ENV = "BINWARING_SEED"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def form_document(f: BinaryForm, seed: Optional[int] = None) -> dict:
    doc = codec.dump_form(f)
    doc["generator"] = f"binwaring {__version__}"
    if seed is not None:
        doc["seed"] = seed
    return doc


def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    return source


def read_form(source: str) -> BinaryForm:
    """A form from a path, '-', or an inline expression such as '(x-2y)^3*(x+y)'.

    JSON input may be a form document or any certificate document, whose
    subject is used.
    """
    try:
        text = _read_source(source).strip()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc}") from exc
    if not text:
        raise UsageError(f"empty input {source!r}")
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON in {source}: {exc}") from exc
        if isinstance(doc, dict) and "schema" in doc:
            doc = codec.parse_document(text)["subject"]
        return codec.load_form(doc)
    try:
        return parse_form(text)
    except FormSyntaxError as exc:
        raise UsageError(f"{source!r} is neither a readable file nor a form: {exc}") from exc


def _emit(args, doc: dict, summary: str) -> None:
    text = codec.serialize(doc)
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)


def _seed(args) -> int:
    return default_seed() if args.seed is None else args.seed


# -- commands ------------------------------------------------------------------


def cmd_rank(args) -> int:
    f = read_form(args.input)
    seed = _seed(args)
    if f.is_zero():
        raise UsageError("the zero form has no rank")
    cert = real_rank_search(f, SearchBudget(seed=seed))
    rigor = cert.rigor
    if args.typicality:
        typ = typicality_certificate(f, cert)
        rigor = typ.rigor
        doc = codec.typicality_document(typ, seed)
        summary = (f"rank {cert.rank}, {'typical' if typ.typical else 'not typical'}, "
                   f"rigor {rigor.value}")
    else:
        doc = codec.rank_document(cert, seed)
        summary = f"rank {cert.rank}, witness {format_form(cert.witness)}, rigor {rigor.value}"
    _emit(args, doc, summary)
    if args.exact_only and rigor is not Rigor.EXACT:
        print(f"rigor shortfall: evidence is {rigor.value}, not EXACT", file=sys.stderr)
        return EXIT_RIGOR
    return EXIT_OK


def _check_pair(d: int, m: int) -> None:
    if not admissible(d, m):
        lo = (d + 2) // 2
        raise UsageError(f"inadmissible pair (d, m) = ({d}, {m}): need d >= 2 and "
                         f"{lo} <= m <= {d}")


def _chain_summary(chain) -> str:
    return (f"d={chain.d} m={chain.m}: rank {chain.rank.rank}, {len(chain.steps)} steps from "
            f"{chain.base.kind} base of degree {chain.base.degree}; upper EXACT, "
            f"lower {chain.lower_level.value}, typicality {chain.typicality_level.value}, "
            f"rigor {chain.rigor.value}")


def cmd_witness(args) -> int:
    _check_pair(args.d, args.m)
    _, chain = witness(args.d, args.m, _seed(args))
    _emit(args, codec.witness_document(chain), _chain_summary(chain))
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        text = _read_source(args.input) if args.input == "-" or Path(args.input).is_file() else None
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    if text is None:
        raise UsageError(f"no such file: {args.input}")
    doc = codec.parse_document(text)
    try:
        report = verify_document(doc)
    except VerificationError as exc:
        print(f"FAILED {exc.check}" + (f": {exc.detail}" if exc.detail else ""))
        return EXIT_VERIFY
    print(f"ok: {doc['kind']} certificate, {len(report.checks)} checks passed")
    return EXIT_OK


def cmd_decompose(args) -> int:
    f = read_form(args.input)
    if f.is_zero():
        raise UsageError("the zero form has no decomposition")
    if args.apolar_witness:
        s = read_form(args.apolar_witness)
    else:
        s = real_rank_search(f, SearchBudget(seed=_seed(args))).witness
    try:
        dec = decompose(s, f, args.precision)
    except DecompositionError as exc:
        raise UsageError(str(exc)) from exc
    total = resum(dec.terms, f.degree)
    summary = (f"{len(dec.terms)} terms, {dec.mode}, residual "
               + ("0" if not dec.residual else f"< 2^-{args.precision}"))
    _emit(args, codec.decomposition_document(f, dec, total), summary)
    return EXIT_OK


def _atlas_entry(job: tuple[int, int, int]) -> tuple[int, int, str, str]:
    d, m, seed = job
    _, chain = witness(d, m, seed)
    return d, m, codec.serialize(codec.witness_document(chain)), chain.rigor.value


def cmd_atlas(args) -> int:
    if args.dmax < 2:
        raise UsageError("--dmax must be at least 2")
    seed = _seed(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [(d, m, seed) for d, m in admissible_pairs(args.dmax)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_atlas_entry, jobs))
    else:
        results = [_atlas_entry(j) for j in jobs]
    counts = {r.value: 0 for r in Rigor}
    table = []
    for d, m, text, rigor in sorted(results):
        name = f"d{d:02d}_m{m:02d}.json"
        (out / name).write_text(text, encoding="utf-8")
        counts[rigor] += 1
        table.append({"d": d, "m": m, "file": name, "rigor": rigor})
    summary = {"dmax": args.dmax, "seed": seed, "entries": len(table), "counts": counts,
               "table": table}
    (out / "summary.json").write_text(json.dumps(summary, indent=1) + "\n", encoding="utf-8")
    print(f"{'d':>3} {'m':>3}  rigor")
    for row in table:
        print(f"{row['d']:>3} {row['m']:>3}  {row['rigor']}")
    print(f"{len(table)} certificates: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    return EXIT_OK


def _radius(text: str) -> Fraction:
    try:
        r = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad radius {text!r}") from None
    if r < 0:
        raise argparse.ArgumentTypeError("radius must be non-negative")
    return r


def cmd_perturb(args) -> int:
    f = read_form(args.input)
    if f.is_zero():
        raise UsageError("cannot perturb the zero form")
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    rep = perturbation_stability_test(f, args.radius, args.trials, _seed(args))
    parts = [f"rank {r} in {c}/{rep.trials}" for r, c in rep.histogram.items()]
    _emit(args, codec.perturbation_document(rep), "; ".join(parts) or "no trials")
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="binwaring",
                                description="Exact Waring ranks and typical-rank witnesses "
                                            "of real binary forms.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    seed_help = f"random seed (default: ${SEED_ENV} or 0)"

    r = sub.add_parser("rank", help="real rank with a certificate")
    r.add_argument("input", help="form document, certificate, '-' or an expression")
    r.add_argument("--exact-only", action="store_true",
                   help="exit 3 unless every piece of evidence is EXACT")
    r.add_argument("--typicality", action="store_true",
                   help="emit a typicality certificate instead")
    r.add_argument("--seed", type=int, help=seed_help)
    r.add_argument("--out")
    r.set_defaults(func=cmd_rank)

    w = sub.add_parser("witness", help="certified form of typical rank m in degree d")
    w.add_argument("-d", type=int, required=True)
    w.add_argument("-m", type=int, required=True)
    w.add_argument("--seed", type=int, help=seed_help)
    w.add_argument("--out")
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("certify", help="replay and check a certificate document")
    c.add_argument("input")
    c.set_defaults(func=cmd_certify)

    dc = sub.add_parser("decompose", help="sum of powers from a hyperbolic apolar form")
    dc.add_argument("input")
    dc.add_argument("--apolar-witness", help="hyperbolic form in the apolar ideal")
    dc.add_argument("--precision", type=int, default=128, help="residual bound 2^-bits")
    dc.add_argument("--seed", type=int, help=seed_help)
    dc.add_argument("--out")
    dc.set_defaults(func=cmd_decompose)

    a = sub.add_parser("atlas", help="witnesses for every admissible (d, m) up to dmax")
    a.add_argument("--dmax", type=int, required=True)
    a.add_argument("--seed", type=int, help=seed_help)
    a.add_argument("--out", required=True, help="output directory")
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_atlas)

    pt = sub.add_parser("perturb", help="ranks of random nearby forms")
    pt.add_argument("--input", required=True)
    pt.add_argument("--radius", type=_radius, required=True,
                    help="sup-norm radius of the perturbation, e.g. 1/1000")
    pt.add_argument("--trials", type=int, default=25)
    pt.add_argument("--seed", type=int, help=seed_help)
    pt.add_argument("--out")
    pt.set_defaults(func=cmd_perturb)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", line_buffering=True)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, codec.CodecError, ZeroFormError, NonGenericDegreesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
