"""Command-line surface and report emission.

Subcommands: validate, extend, fixed, verify, sweep, search.  Global
options ``--format text|json`` (env: MSFUZZ_FORMAT) and ``--out PATH``.
Exit codes: 0 success, 1 failed checks, 2 usage or input errors,
10 counterexample found (search), 70 internal invariant violation.

JSON reports are deliberately free of wall-clock data so that identical
configurations produce byte-identical bytes.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .errors import InternalInvariantError, MsfuzzError
from .extensions import extend as extend_op
from .extensions import fixed_witness_sets, is_fixed_relative
from .file_format import AlgebraDocument, document_to_objects, parse_algebra
from .fuzzy_core import FuzzySet, classify, fuzzy_filter_report
from .grades import format_grade, parse_grade
from .lattice_core import FiniteLattice, build_lattice
from .ms_algebra import MSAlgebra
from .report import Check, VerificationReport
from .verifier import (
    Instance,
    SearchConfig,
    SweepReport,
    Witness,
    properties,
    run_property,
    search_counterexample,
    sweep as run_sweep,
)
from .errors import HypothesisUnmet, UnknownProperty

SCHEMA = "msfuzz.report/1"


def main():
    cli(prog_name="msfuzz")


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default=None, envvar="MSFUZZ_FORMAT",
              help="Output format (default text; env MSFUZZ_FORMAT).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              default=None, help="Write the report to a file instead of stdout.")
@click.pass_context
def cli(ctx, fmt, out_path):
    """Finite MS-algebras, fuzzy filters, and their extension operators."""
    ctx.obj = {"format": fmt or "text", "out": out_path}


def _emit(ctx, payload: dict, text: str) -> None:
    rendered = (
        json.dumps(payload, indent=2) + "\n"
        if ctx.obj["format"] == "json"
        else text if text.endswith("\n") else text + "\n"
    )
    if ctx.obj["out"]:
        with open(ctx.obj["out"], "w") as fh:
            fh.write(rendered)
    else:
        click.echo(rendered, nl=False)


def _load_document(path: str) -> AlgebraDocument:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise click.UsageError(str(exc))
    try:
        return parse_algebra(text)
    except MsfuzzError as exc:
        raise click.UsageError(f"{path}: {exc}")


def _need_algebra(doc: AlgebraDocument, path: str):
    try:
        lat, ms, named = document_to_objects(doc)
    except MsfuzzError as exc:
        raise click.UsageError(f"{path}: {exc}")
    if ms is None:
        raise click.UsageError(f"{path}: file has no negation table")
    return lat, ms, named


def _parse_w(lat: FiniteLattice, w_text: str) -> tuple[str, ...]:
    members = [tok.strip() for tok in w_text.split(",") if tok.strip()]
    if not members:
        raise click.UsageError("--w needs at least one element")
    for m in members:
        if m not in lat.index:
            raise click.UsageError(f"--w references unknown element {m!r}")
    return lat.sorted_subset(members)


def _parse_grades(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_grade(tok) for tok in text.split(",") if tok.strip())
    except MsfuzzError as exc:
        raise click.UsageError(f"--grades: {exc}")


def _grade_map(fs: FuzzySet) -> dict[str, str]:
    return {e: format_grade(g) for e, g in zip(fs.carrier.elements, fs.grades)}


def _guard(fn):
    """Translate internal invariant violations into exit code 70."""

    def wrapped(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InternalInvariantError as exc:
            click.echo(f"internal invariant violation: {exc}", err=True)
            sys.exit(70)

    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

_LATTICE_ERROR_IDS = {
    "NotAPoset": "lattice.poset",
    "NotALattice": "lattice.bounds",
    "NotBounded": "lattice.bounded",
    "NotDistributive": "lattice.distributive",
    "DuplicateElement": "lattice.elements",
    "UnknownElement": "lattice.elements",
}


def _validate_document(doc: AlgebraDocument, title: str = "validate"
                       ) -> VerificationReport:
    checks: list[Check] = []
    try:
        lat = build_lattice(doc.elements, doc.covers)
    except MsfuzzError as exc:
        cid = _LATTICE_ERROR_IDS.get(type(exc).__name__, "lattice.valid")
        checks.append(Check(cid, False, str(exc)))
        return VerificationReport(title, tuple(checks))
    for cid in ("lattice.poset", "lattice.bounds", "lattice.bounded",
                "lattice.distributive"):
        checks.append(Check(cid, True))

    ms = None
    if doc.neg is not None:
        ms = MSAlgebra(lat, dict(doc.neg))
        for c in ms.axiom_report.checks:
            checks.append(Check(f"ms.{c.check_id}", c.passed, c.detail, c.witness))

    for name, entries in doc.fuzzy:
        fs = FuzzySet(lat, tuple(g for _, g in entries))
        checks.extend(fuzzy_filter_report(lat, fs, name).checks)

    return VerificationReport(title, tuple(checks))


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@_guard
def validate(ctx, file):
    """Check the lattice axioms, the negation axioms, and that every
    named grade map is a fuzzy filter."""
    doc = _load_document(file)
    report = _validate_document(doc, title=f"validate {file}")
    payload = {"schema": SCHEMA, "command": "validate", "file": file}
    body = report.to_dict()
    body.pop("title")  # duplicates command + file
    payload.update(body)
    _emit(ctx, payload, report.render_text())
    ctx.exit(0 if report.ok else 1)


# ---------------------------------------------------------------------------
# extend / fixed
# ---------------------------------------------------------------------------

@cli.command("extend")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--chi", "chi_name", required=True, help="Fuzzy section to extend.")
@click.option("--w", "w_text", required=True,
              help="Comma-separated reference subset.")
@click.option("--omega/--no-omega", "with_omega", default=True,
              help="Also print the strong extension (default on).")
@click.pass_context
@_guard
def extend_cmd(ctx, file, chi_name, w_text, with_omega):
    """Print the extension (and strong extension) of a grade map."""
    doc = _load_document(file)
    lat, ms, named = _need_algebra(doc, file)
    if chi_name not in named:
        raise click.UsageError(f"no fuzzy section named {chi_name!r}")
    w = _parse_w(lat, w_text)
    result = extend_op(ms, named[chi_name], w)

    payload = {
        "schema": SCHEMA,
        "command": "extend",
        "file": file,
        "chi": chi_name,
        "w": list(w),
        "base_grade": format_grade(result.base_grade),
        "upsilon": _grade_map(result.upsilon),
    }
    if with_omega:
        payload["omega"] = _grade_map(result.omega)

    header = ["element", chi_name, "upsilon"] + (["omega"] if with_omega else [])
    rows = [header]
    for e in lat.elements:
        row = [e, format_grade(named[chi_name](e)), format_grade(result.upsilon(e))]
        if with_omega:
            row.append(format_grade(result.omega(e)))
        rows.append(row)
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    lines = [f"extend {file}  chi={chi_name}  W={{{', '.join(w)}}}"]
    lines += ["  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row))
              for row in rows]
    lines.append(f"base grade: {format_grade(result.base_grade)}")
    _emit(ctx, payload, "\n".join(lines))


@cli.command("fixed")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--chi", "chi_name", required=True)
@click.option("--w", "w_text", required=True)
@click.pass_context
@_guard
def fixed_cmd(ctx, file, chi_name, w_text):
    """Report whether the extension moves the grade map, plus the
    canonical subsets that never move it."""
    doc = _load_document(file)
    lat, ms, named = _need_algebra(doc, file)
    if chi_name not in named:
        raise click.UsageError(f"no fuzzy section named {chi_name!r}")
    chi = named[chi_name]
    w = _parse_w(lat, w_text)
    verdict = is_fixed_relative(ms, chi, w)

    canonical = []
    for cand in fixed_witness_sets(ms, chi):
        entry = {
            "name": cand.name,
            "members": sorted(cand.members, key=lat.element_index),
        }
        if cand.note:
            entry["note"] = cand.note
        else:
            entry["fixed"] = is_fixed_relative(ms, chi, cand.members)
        canonical.append(entry)

    payload = {
        "schema": SCHEMA,
        "command": "fixed",
        "file": file,
        "chi": chi_name,
        "w": list(w),
        "fixed": verdict,
        "canonical_sets": canonical,
    }
    lines = [
        f"fixed {file}  chi={chi_name}  W={{{', '.join(w)}}}",
        f"  fixed relative to W: {'yes' if verdict else 'no'}",
        "  canonical never-moving subsets:",
    ]
    for entry in canonical:
        if "note" in entry:
            lines.append(f"    {entry['name']}: {entry['note']}")
        else:
            members = ", ".join(entry["members"])
            lines.append(
                f"    {entry['name']}: {{{members}}} fixed={'yes' if entry['fixed'] else 'no'}"
            )
    _emit(ctx, payload, "\n".join(lines))
    ctx.exit(0 if verdict else 1)


# ---------------------------------------------------------------------------
# verify / sweep / search
# ---------------------------------------------------------------------------

def _witness_payload(witness: Witness | None):
    return witness.to_dict() if witness is not None else None


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--props", "props_text", default=None,
              help="Comma-separated law ids (default: every instance-level law).")
@click.pass_context
@_guard
def verify(ctx, file, props_text):
    """Run registered laws against the instance in FILE."""
    doc = _load_document(file)
    try:
        lat, ms, named = document_to_objects(doc)
    except MsfuzzError as exc:
        raise click.UsageError(f"{file}: {exc}")
    chis = tuple(fs for fs in named.values() if classify(lat, fs).is_filter)
    universe = tuple(sorted(
        {g for fs in named.values() for g in fs.grades}
        | {Fraction(0), Fraction(1)}
    ))
    instance = Instance(ms=ms, chis=chis, grade_universe=universe)

    if props_text:
        pids = [tok.strip() for tok in props_text.split(",") if tok.strip()]
    else:
        pids = [rec.pid for rec in properties() if rec.fixture is None]

    rows = []
    all_pass = True
    for pid in pids:
        try:
            witness = run_property(pid, instance)
        except UnknownProperty as exc:
            raise click.UsageError(str(exc))
        except HypothesisUnmet as exc:
            rows.append({"id": pid, "verdict": "hypothesis-unmet",
                         "reason": exc.reason})
            all_pass = False
            continue
        if witness is None:
            rows.append({"id": pid, "verdict": "pass"})
        else:
            rows.append({"id": pid, "verdict": "fail",
                         "witness": witness.to_dict()})
            all_pass = False

    payload = {"schema": SCHEMA, "command": "verify", "file": file,
               "ok": all_pass, "properties": rows}
    lines = [f"verify {file}"]
    for row in rows:
        mark = {"pass": "PASS", "fail": "FAIL",
                "hypothesis-unmet": "SKIP"}[row["verdict"]]
        extra = ""
        if row["verdict"] == "fail":
            extra = "  " + row["witness"]["detail"]
        elif row["verdict"] == "hypothesis-unmet":
            extra = "  " + row["reason"]
        lines.append(f"  [{mark}] {row['id']}{extra}")
    lines.append("  all laws hold" if all_pass else "  some laws failed or were skipped")
    _emit(ctx, payload, "\n".join(lines))
    ctx.exit(0 if all_pass else 1)


def _sweep_config(max_n, grades_text, seed, iters, require_invalid=False):
    universe = _parse_grades(grades_text)
    try:
        if iters:
            return SearchConfig(max_elements=max_n, grade_universe=universe,
                                mode="randomized", seed=seed or 0,
                                iterations=iters,
                                require_valid=not require_invalid)
        return SearchConfig(max_elements=max_n, grade_universe=universe,
                            require_valid=not require_invalid)
    except (MsfuzzError, ValueError) as exc:
        raise click.UsageError(str(exc))


def _sweep_text(report: SweepReport) -> str:
    cfg = report.config
    lines = [
        f"sweep  max-n={cfg.max_elements}  "
        f"grades={{{', '.join(format_grade(g) for g in cfg.grade_universe)}}}  "
        f"mode={cfg.mode}"
    ]
    for o in report.outcomes:
        mark = "PASS" if o.failures == 0 else "FAIL"
        lines.append(
            f"  [{mark}] {o.pid}  instances={o.instances} passes={o.passes} "
            f"failures={o.failures} skips={o.skips}"
        )
        if o.first_witness is not None:
            lines.append(f"         first witness: {o.first_witness.detail}")
    lines.append(
        "  fibers closed under negation: "
        f"{report.stats['inverse_class_neg_closed']}"
        f"/{report.stats['inverse_class_fibers']} (observational)"
    )
    lines.append("  all laws hold" if report.ok else "  some laws failed")
    return "\n".join(lines)


@cli.command("sweep")
@click.option("--max-n", type=int, default=4, show_default=True)
@click.option("--grades", "grades_text", default="0,1/2,1", show_default=True)
@click.option("--props", "props_text", default=None)
@click.option("--seed", type=int, default=None)
@click.option("--iters", type=int, default=None,
              help="Randomized mode: number of sampled instances.")
@click.pass_context
@_guard
def sweep_cmd(ctx, max_n, grades_text, props_text, seed, iters):
    """Run laws over every instance up to a size cap."""
    cfg = _sweep_config(max_n, grades_text, seed, iters)
    pids = None
    if props_text:
        pids = [tok.strip() for tok in props_text.split(",") if tok.strip()]
    try:
        report = run_sweep(pids, cfg)
    except UnknownProperty as exc:
        raise click.UsageError(str(exc))
    payload = {"schema": SCHEMA, "command": "sweep"}
    payload.update(report.to_dict())
    _emit(ctx, payload, _sweep_text(report))
    ctx.exit(0 if report.ok else 1)


@cli.command("search")
@click.option("--prop", "pid", required=True, help="Law id to refute.")
@click.option("--max-n", type=int, default=4, show_default=True)
@click.option("--grades", "grades_text", default="0,1/2,1", show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--iters", type=int, default=None)
@click.pass_context
@_guard
def search_cmd(ctx, pid, max_n, grades_text, seed, iters):
    """Search for a counterexample; exit 10 when one is found."""
    cfg = _sweep_config(max_n, grades_text, seed, iters)
    try:
        witness = search_counterexample(pid, cfg)
    except UnknownProperty as exc:
        raise click.UsageError(str(exc))
    payload = {
        "schema": SCHEMA,
        "command": "search",
        "property": pid,
        "config": cfg.to_dict(),
        "witness": _witness_payload(witness),
    }
    if witness is None:
        text = f"search {pid}: no counterexample within bounds"
    else:
        d = witness.to_dict()
        lines = [f"search {pid}: counterexample found",
                 f"  {witness.detail}"]
        lines.append("  " + d["document"].replace("\n", "\n  ").rstrip())
        if "w_sets" in d:
            lines.append(
                "  W = {" + ", ".join(", ".join(w) for w in d["w_sets"]) + "}"
            )
        text = "\n".join(lines)
    _emit(ctx, payload, text)
    ctx.exit(10 if witness is not None else 0)


if __name__ == "__main__":
    main()
