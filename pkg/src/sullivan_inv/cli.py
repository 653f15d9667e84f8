"""Command line interface.

Exit codes: 0 success, 2 invalid input (parse or validation failure), 3 undetermined result.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .ext import UndeterminedError, default_ext_cap
from .homology import CapRequiredError, certify_ellipticity, cohomology_dims, default_cap, formal_dimension_candidate
from .invariants import InvariantReport, cat_lower_bound_report
from .model import extract_k, validate
from .modelfile import ModelFileError, load_model_file
from .spectral import ext_infinity, ext_page, mm_infinity, mm_page

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INVALID, EXIT_UNDETERMINED = 0, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path: str):
    if path.startswith("corpus:"):
        from .corpus import load

        try:
            mf = load(path.split(":", 1)[1])
        except KeyError:
            raise CliError(f"no corpus model {path!r}", EXIT_INVALID)
    else:
        try:
            mf = load_model_file(path)
        except OSError as exc:
            raise CliError(str(exc), EXIT_INVALID)
        except ModelFileError as exc:
            raise CliError(f"{path}: {exc}", EXIT_INVALID)
    try:
        model = mf.to_model()
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INVALID)
    report = validate(model)
    if not report.valid:
        raise CliError("\n".join(f"{path}: {v}" for v in report.violations), EXIT_INVALID)
    return mf, model


def basis_hash(model, max_degree: int) -> str:
    alg = model.algebra
    payload = [[alg.format_monomial(m) for m in alg.monomials(n)] for n in range(max_degree + 1)]
    return hashlib.sha256(json.dumps(payload).encode()).hexdigest()


def _degree_cap(model, given):
    if given is not None:
        return given
    try:
        return default_cap(model)
    except CapRequiredError as exc:
        raise CliError(f"{exc} (use --max-degree)", EXIT_INVALID)


def _page_table(page) -> str:
    entries = page.nonzero()
    if not entries:
        return f"page {page.page}: all entries zero"
    ps = sorted({p for p, _ in entries})
    ns = sorted({n for _, n in entries})
    width = max(3, max(len(str(n)) for n in ns) + 1)
    lines = [f"page {page.page} (rows p, columns total degree)"]
    lines.append("p\\n".ljust(5) + "".join(str(n).rjust(width) for n in ns))
    for p in ps:
        lines.append(str(p).ljust(5) + "".join((str(entries.get((p, n), "")) or ".").rjust(width) for n in ns))
    return "\n".join(lines)


def full_report(mf, model, timing: bool = False) -> dict:
    t0 = time.perf_counter()
    inv = cat_lower_bound_report(model, mf.options.get("cap"))
    cert = certify_ellipticity(model)
    k = extract_k(model).k
    N = formal_dimension_candidate(model)
    pages = {}
    if cert.elliptic:
        deg = 2 * N + 2
        pages["mm"] = [mm_page(model, k, deg).to_dict(), {**mm_infinity(model, deg).to_dict(), "page": "inf"}]
        dims = cohomology_dims(model, deg)
    else:
        deg = mf.options.get("cap", 6)
        dims = cohomology_dims(model, deg)
    if inv.r_computed is not None:
        cap = mf.options.get("cap") or default_ext_cap(model)
        pages["ext"] = [ext_page(model, k, cap).to_dict(), {**ext_infinity(model, cap).to_dict(), "page": "inf"}]
    out = {
        "schema_version": SCHEMA_VERSION,
        "model": model.name,
        "generators": [[g.name, g.degree] for g in model.generators],
        "differential": {g.name: str(v) for g, v in zip(model.generators, model.differential) if v},
        "ellipticity": {"status": cert.status, "heuristic": cert.heuristic, "evidence": cert.evidence},
        "cohomology_dims": dims,
        "invariants": inv.to_dict(),
        "pages": pages,
        "expectations": _check_expectations(mf, inv),
        "basis_hash": basis_hash(model, deg),
    }
    if timing:
        out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def _check_expectations(mf, inv: InvariantReport) -> dict:
    fields = {"r": inv.r_computed, "e0": inv.e0_fundamental}
    return {k: {"expected": v, "got": fields.get(k), "ok": fields.get(k) == v} for k, v in sorted(mf.expect.items())}


def _text_report(rep: dict) -> str:
    inv = rep["invariants"]
    lines = [
        f"model {rep['model']}: " + ", ".join(f"{n}{d}" for n, d in rep["generators"]),
        *(f"  d{g} = {v}" for g, v in rep["differential"].items()),
        f"ellipticity: {rep['ellipticity']['status']}" + (" (heuristic)" if rep["ellipticity"]["heuristic"] else ""),
        f"k = {inv['k']}, m = {inv['m']}, n = {inv['n']}, N = {inv['N']}",
        f"e0: projection {inv['e0_projection']}, fundamental class {inv['e0_fundamental']}, spectral sequence {inv['e0_ss']}",
        f"r: computed {inv['r_computed']}, spectral sequence {inv['r_ss']}, via d_k {inv['r_dk']}, closed formula {inv['r_formula']}",
    ]
    if inv["gj_bound"] is not None:
        lines.append(f"m + n(k-2) = {inv['gj_bound']}")
    if inv["question_bound"] is not None:
        lines.append(f"open lower bound m + (n-1)(k-2) = {inv['question_bound']} (reported, not asserted)")
    lines.append("checks: " + ", ".join(f"{k} {v}" for k, v in inv["verdicts"].items()))
    for note in inv["notes"]:
        lines.append(f"note: {note}")
    for k, v in rep["expectations"].items():
        lines.append(f"expect {k} = {v['expected']}: got {v['got']} {'ok' if v['ok'] else 'MISMATCH'}")
    lines.append(f"basis hash {rep['basis_hash'][:16]}")
    return "\n".join(lines)


def cmd_validate(args) -> int:
    mf, model = _load(args.model)
    print(f"{model.name}: valid")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    _, model = _load(args.model)
    deg = _degree_cap(model, args.max_degree)
    for n, dim in enumerate(cohomology_dims(model, deg)):
        print(f"H^{n} = {dim}")
    return EXIT_OK


def cmd_invariants(args) -> int:
    mf, model = _load(args.model)
    rep = full_report(mf, model)
    print(_text_report(rep))
    return EXIT_UNDETERMINED if rep["invariants"]["r_computed"] is None else EXIT_OK


def cmd_ss(args) -> int:
    mf, model = _load(args.model)
    if args.which == "mm":
        deg = _degree_cap(model, args.max_degree)
        page = mm_page(model, args.page, deg)
    else:
        cap = args.max_degree if args.max_degree is not None else default_ext_cap(model)
        try:
            page = ext_page(model, args.page, cap)
        except UndeterminedError as exc:
            raise CliError(str(exc), EXIT_UNDETERMINED)
    if args.format == "json":
        print(json.dumps(page.to_dict(), sort_keys=True))
    else:
        print(_page_table(page))
    return EXIT_OK


def cmd_report(args) -> int:
    targets = list(args.models)
    if args.corpus:
        from .corpus import ORDER

        targets += [f"corpus:{s}" for s in ORDER]
    if not targets:
        raise CliError("no models given", EXIT_INVALID)
    reports = []
    for t in targets:
        mf, model = _load(t)
        reports.append(full_report(mf, model, timing=args.timing))
    code = EXIT_UNDETERMINED if any(r["invariants"]["r_computed"] is None for r in reports) else EXIT_OK
    if args.format == "json":
        text = json.dumps({"schema_version": SCHEMA_VERSION, "reports": reports}, sort_keys=True, indent=2)
    else:
        text = "\n\n".join(_text_report(r) for r in reports)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sullivan-inv", description="Invariants of Sullivan minimal algebras.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a model file")
    p.add_argument("model", help="model file, or corpus:<name>")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="cohomology dimensions")
    p.add_argument("model")
    p.add_argument("--max-degree", type=int)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("invariants", help="e0, r and the consistency checks")
    p.add_argument("model")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("ss", help="one page of a spectral sequence")
    p.add_argument("model")
    p.add_argument("--which", choices=("mm", "ext"), default="mm")
    p.add_argument("--page", type=int, default=2)
    p.add_argument("--max-degree", type=int, help="total degree cap (mm) or Gamma truncation (ext)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_ss)

    p = sub.add_parser("report", help="full report for one or more models")
    p.add_argument("models", nargs="*")
    p.add_argument("--corpus", action="store_true", help="include every bundled corpus model")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-identical output)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code
    except UndeterminedError as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED


if __name__ == "__main__":
    sys.exit(main())
