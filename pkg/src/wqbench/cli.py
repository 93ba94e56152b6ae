"""wqbench command-line interface."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from wqbench import _jsonl
from wqbench.bench.harness import gap_analysis, run_benchmark
from wqbench.bench.render import render_report
from wqbench.bestofn import (
    GeneratorSpec,
    build_triplets,
    load_drafts_file,
    load_triplets_file,
    write_triplets_file,
)
from wqbench.corpus.adapters import AdapterConfig, ingest_dataset
from wqbench.corpus.types import (
    DATASETS,
    BenchmarkManifest,
    load_lamp_file,
    load_pair_file,
    write_pair_file,
)
from wqbench.corpus.validate import validate_manifest
from wqbench.edits.cot import build_cot_prompt, parse_cot_completion
from wqbench.edits.engine import EditTrace, apply_all, verify_trace
from wqbench.edits.gradual import gradual_sequence
from wqbench.scoring.types import ScorerSpec
from wqbench.study.aggregate import aggregate_all, mean_ranks
from wqbench.study.assign import assign_batches
from wqbench.study.calibration import DEFAULT_BIN_EDGES, calibration
from wqbench.study.service import StudyConfig, serve_study
from wqbench.study.types import load_records_file
from wqbench.transform.points import (
    attach_rationales,
    load_rationales_file,
    to_combined,
    to_pairwise,
    to_scalar,
    write_points_file,
)


@click.group()
def main():
    """Writing-quality benchmark toolkit."""


@main.command()
@click.option("--dataset", type=click.Choice(DATASETS), required=True)
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--allowlist", type=click.Path(exists=True), default=None)
@click.option("--rejects", type=click.Path(), default=None,
              help="Optional path for the per-record rejection report.")
def ingest(dataset, in_path, out_path, seed, allowlist, rejects):
    """Standardize a raw dataset file into preference pairs."""
    config = AdapterConfig(seed=seed, allowlist_path=allowlist)
    result = ingest_dataset(in_path, dataset, config)
    write_pair_file(out_path, result.pairs)
    if rejects:
        _jsonl.write_records(rejects, (r.to_dict() for r in result.rejections))
    click.echo(
        f"{dataset}: {len(result.pairs)} pairs written, "
        f"{len(result.rejections)} records rejected"
    )


@main.command()
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), required=True)
@click.option("--pairs", "pairs_path", type=click.Path(exists=True), required=True)
def validate(manifest_path, pairs_path):
    """Check a pair file against an expected manifest."""
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = BenchmarkManifest.from_dict(json.load(fh))
    pairs = load_pair_file(pairs_path)
    report = validate_manifest(pairs, manifest)
    click.echo(json.dumps(report.to_dict(), indent=2))
    if not report.passed:
        sys.exit(1)


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--variant", type=click.Choice(["p", "r", "pr"]), required=True)
@click.option("--rationales", type=click.Path(exists=True), default=None)
@click.option("--rationale-mode", type=click.Choice(["ir-o", "i-ro"]), default=None)
@click.option("--out", "out_path", type=click.Path(), required=True)
def transform(in_path, variant, rationales, rationale_mode, out_path):
    """Convert LAMP samples into P/R/PR training points."""
    samples = load_lamp_file(in_path)
    if variant == "p":
        points = [p for s in samples for p in to_pairwise(s)]
    elif variant == "r":
        points = [p for s in samples for p in to_scalar(s)]
    else:
        points = to_combined(samples)
    if rationales:
        if not rationale_mode:
            raise click.UsageError("--rationale-mode is required with --rationales")
        mode = "input-rationale" if rationale_mode == "ir-o" else "output-rationale"
        points = attach_rationales(points, load_rationales_file(rationales), mode)
    write_points_file(out_path, points)
    click.echo(f"{len(points)} training points written to {out_path}")


@main.group()
def edits():
    """Executable-edit operations."""


def _load_traces(path: str) -> list[EditTrace]:
    return [EditTrace.from_dict(obj) for _, obj in _jsonl.read_records(path)]


@edits.command("apply")
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def edits_apply(in_path, out_path):
    """Apply each trace and write it back with the final text filled in."""
    rows = []
    for trace in _load_traces(in_path):
        final = apply_all(trace)
        d = trace.to_dict()
        d["final"] = final
        rows.append(d)
    _jsonl.write_records(out_path, rows)
    click.echo(f"applied {len(rows)} traces")


@edits.command("verify")
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def edits_verify(in_path, out_path):
    """Verify traces; report failures and ambiguous spans."""
    reports = []
    for i, trace in enumerate(_load_traces(in_path)):
        report = verify_trace(trace)
        reports.append(
            {
                "index": i,
                "ok": report.ok,
                "error": report.error,
                "ambiguous_indices": report.ambiguous_indices,
            }
        )
    if out_path:
        _jsonl.write_records(out_path, reports)
    bad = [r for r in reports if not r["ok"]]
    ambiguous = [r for r in reports if r["ambiguous_indices"]]
    click.echo(
        f"{len(reports)} traces: {len(reports) - len(bad)} ok, {len(bad)} failed, "
        f"{len(ambiguous)} with ambiguous spans"
    )
    if bad:
        sys.exit(1)


@edits.command("gradual")
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--direction", type=click.Choice(["forward", "reverse"]),
              default="forward", show_default=True)
def edits_gradual(in_path, out_path, direction):
    """Expand traces into gradual state sequences."""
    mode = "forward" if direction == "forward" else "reverse-of-application"
    curves = [gradual_sequence(t, mode).to_dict() for t in _load_traces(in_path)]
    _jsonl.write_records(out_path, curves)
    click.echo(f"wrote {len(curves)} curves")


@edits.command("build-prompt")
@click.option("--draft", "draft_path", type=click.Path(exists=True), required=True)
def edits_build_prompt(draft_path):
    """Print the editing prompt for a draft text file."""
    draft = Path(draft_path).read_text(encoding="utf-8")
    click.echo(build_cot_prompt(draft), nl=False)


@edits.command("parse")
@click.option("--completion", "completion_path", type=click.Path(exists=True),
              required=True)
def edits_parse(completion_path):
    """Parse a three-part completion into a trace."""
    completion = Path(completion_path).read_text(encoding="utf-8")
    trace = parse_cot_completion(completion)
    click.echo(json.dumps(trace.to_dict(), ensure_ascii=False))


@main.command()
@click.option("--pairs", "pairs_path", type=click.Path(exists=True), required=True)
@click.option("--scorer", "scorer_path", type=click.Path(exists=True), required=True)
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--skip-errors", is_flag=True, default=False)
def run(pairs_path, scorer_path, seed, workers, out_path, skip_errors):
    """Run a scorer over a pair file and report accuracy."""
    spec = ScorerSpec.from_file(scorer_path)
    if seed is not None:
        spec.seed = seed
    pairs = load_pair_file(pairs_path)
    report = run_benchmark(pairs, spec, workers=workers, skip_errors=skip_errors)
    click.echo(render_report(report, "table-text"), nl=False)
    if out_path:
        Path(out_path).write_text(
            render_report(report, "machine-readable"), encoding="utf-8"
        )


@main.command()
@click.option("--pairs", "pairs_path", type=click.Path(exists=True), required=True)
@click.option("--scorer", "scorer_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def gaps(pairs_path, scorer_path, out_path):
    """Mean preferred/rejected score gap analysis per dataset."""
    spec = ScorerSpec.from_file(scorer_path)
    report = gap_analysis(load_pair_file(pairs_path), spec)
    click.echo(render_report(report, "table-text"), nl=False)
    if out_path:
        Path(out_path).write_text(
            render_report(report, "machine-readable"), encoding="utf-8"
        )


@main.command()
@click.option("--drafts", "drafts_path", type=click.Path(exists=True), required=True)
@click.option("--generator", "generator_path", type=click.Path(exists=True),
              required=True)
@click.option("--scorer", "scorer_path", type=click.Path(exists=True), required=True)
@click.option("--n", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def select(drafts_path, generator_path, scorer_path, n, seed, out_path):
    """Best-of-N selection: build (draft, random edit, best edit) triplets."""
    drafts = load_drafts_file(drafts_path)
    generator = GeneratorSpec.from_file(generator_path)
    scorer = ScorerSpec.from_file(scorer_path)
    triplets, sidecar = build_triplets(drafts, generator, scorer, n=n, seed=seed)
    write_triplets_file(out_path, triplets)
    sidecar_path = str(out_path) + ".sidecar.jsonl"
    _jsonl.write_records(sidecar_path, sidecar)
    click.echo(
        f"{len(triplets)} triplets written, {len(sidecar)} drafts skipped "
        f"(sidecar: {sidecar_path})"
    )


@main.group()
def study():
    """Annotation campaign: assignment, service, and analysis."""


@study.command("assign")
@click.option("--triplets", "triplets_path", type=click.Path(exists=True), required=True)
@click.option("--annotators", required=True,
              help="Comma-separated annotator ids/tokens.")
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--batch-size", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def study_assign(triplets_path, annotators, k, batch_size, seed, out_path):
    """Build the assignment plan for a triplet file."""
    triplet_ids = [t.id for t in load_triplets_file(triplets_path)]
    plan = assign_batches(
        triplet_ids, annotators.split(","), k_per_triplet=k,
        batch_size=batch_size, seed=seed,
    )
    plan.save(out_path)
    click.echo(
        f"{plan.n_assignments} assignments in {len(plan.batches)} batches "
        f"written to {out_path}"
    )


@study.command("serve")
@click.option("--plan", "plan_path", type=click.Path(exists=True), required=True)
@click.option("--triplets", "triplets_path", type=click.Path(exists=True), required=True)
@click.option("--records", "records_path", type=click.Path(), required=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8900, show_default=True)
@click.option("--static", "static_dir", type=click.Path(exists=True), default=None)
def study_serve(plan_path, triplets_path, records_path, host, port, static_dir):
    """Serve the annotation API (and optionally the UI)."""
    serve_study(
        StudyConfig(
            plan_path=plan_path,
            triplets_path=triplets_path,
            records_path=records_path,
            host=host,
            port=port,
            static_dir=static_dir,
        )
    )


@study.command("aggregate")
@click.option("--records", "records_path", type=click.Path(exists=True), required=True)
@click.option("--triplets", "triplets_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def study_aggregate(records_path, triplets_path, out_path):
    """Aggregate records into majority and mean ranks."""
    records = load_records_file(records_path)
    triplet_ids = [t.id for t in load_triplets_file(triplets_path)]
    annotated = [tid for tid in triplet_ids
                 if any(r.triplet_id == tid for r in records)]
    results = aggregate_all(records, annotated)
    if out_path:
        _jsonl.write_records(out_path, (r.to_dict() for r in results))
    study_means = mean_ranks(records)
    click.echo(json.dumps({
        "n_triplets": len(results),
        "study_mean_ranks": study_means,
    }, indent=2))


@study.command("calibrate")
@click.option("--records", "records_path", type=click.Path(exists=True), required=True)
@click.option("--triplets", "triplets_path", type=click.Path(exists=True), required=True)
@click.option("--edges", default=",".join(str(e) for e in DEFAULT_BIN_EDGES),
              show_default=True, help="Comma-separated ascending bin edges.")
@click.option("--out", "out_path", type=click.Path(), default=None)
def study_calibrate(records_path, triplets_path, edges, out_path):
    """Score-gap vs agreement calibration bins."""
    records = load_records_file(records_path)
    triplets = load_triplets_file(triplets_path)
    bin_edges = [float(e) for e in edges.split(",")]
    bins = calibration(records, triplets, bin_edges=bin_edges)
    payload = json.dumps([b.to_dict() for b in bins], indent=2)
    if out_path:
        Path(out_path).write_text(payload, encoding="utf-8")
    click.echo(payload)


if __name__ == "__main__":
    main()
