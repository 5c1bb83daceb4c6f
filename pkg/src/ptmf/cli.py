"""Command-line entry point: file-in/file-out pipeline stages plus power analysis.

Exit codes: 0 success, 1 domain/validation error, 2 I/O error. Logs go to
stderr; data goes to stdout or --out. PTMF_TAXONOMY can supply the default
taxonomy path.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .analysis import build_frequency, cumulative_rank, extract_critical_paths
from .errors import DocumentFormatError, PtmfError, ValidationError
from .ingest import clean, dataset_from_json, dataset_to_json, parse_responses, read_csv_responses
from .pathgraph import (
    build_graph,
    canonical_json,
    export_bundle,
    export_dot,
    export_heatmap,
    load_bundle,
    matrix_from_bundle,
    stars_csv,
)
from .stats import power_one_sample_t, required_sample_size, sensitivity_effect_size
from .taxonomy import default_taxonomy, load_taxonomy

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text("utf-8")
    except OSError as e:
        _fail(EXIT_IO, f"cannot read {path}: {e}")
        raise AssertionError  # unreachable


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
        return
    try:
        Path(path).write_text(text, "utf-8")
    except OSError as e:
        _fail(EXIT_IO, f"cannot write {path}: {e}")


def _load_taxonomy_opt(path: str | None):
    if path is None:
        return default_taxonomy()
    try:
        return load_taxonomy(_read_text(path))
    except PtmfError as e:
        _fail(EXIT_DOMAIN, f"invalid taxonomy {path}: {e}")
        raise AssertionError


taxonomy_option = click.option(
    "--taxonomy",
    "taxonomy_path",
    envvar="PTMF_TAXONOMY",
    default=None,
    help="Taxonomy document path (defaults to the bundled taxonomy; PTMF_TAXONOMY honored).",
)


@click.group()
@click.version_option(__version__, prog_name="ptmf")
@click.option("-v", "--verbose", count=True, help="Increase log verbosity (-v info, -vv debug).")
def main(verbose: int) -> None:
    """IoT privacy threat modeling toolkit."""
    import logging

    level = logging.WARNING - min(verbose, 2) * 10
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


# ---------------------------------------------------------------------------
# taxonomy
# ---------------------------------------------------------------------------


@main.group()
def taxonomy() -> None:
    """Taxonomy document utilities."""


@taxonomy.command("validate")
@click.argument("path")
def taxonomy_validate(path: str) -> None:
    """Validate a taxonomy document; exit 0 when valid."""
    text = _read_text(path)
    try:
        tax = load_taxonomy(text)
    except ValidationError as e:
        click.echo(json.dumps({"valid": False, "errors": e.problems}, indent=2))
        sys.exit(EXIT_DOMAIN)
    except DocumentFormatError as e:
        click.echo(json.dumps({"valid": False, "errors": [str(e)]}, indent=2))
        sys.exit(EXIT_DOMAIN)
    click.echo(json.dumps({
        "valid": True,
        "version": tax.version,
        "actors": len(tax.actors),
        "surfaces": len(tax.surfaces),
        "tactics": len(tax.tactics),
        "threats": len(tax.threats),
    }, indent=2))


# ---------------------------------------------------------------------------
# pipeline: clean -> analyze -> export
# ---------------------------------------------------------------------------


@main.command("clean")
@click.option("--input", "input_path", required=True, help="Raw survey records (NDJSON, or CSV with --csv).")
@click.option("--csv", "is_csv", is_flag=True, help="Read the fixed-column CSV adapter format.")
@taxonomy_option
@click.option("--out", default=None, help="Clean-dataset output path (default stdout).")
def clean_cmd(input_path: str, is_csv: bool, taxonomy_path: str | None, out: str | None) -> None:
    """Parse and clean raw survey records into a validated dataset."""
    tax = _load_taxonomy_opt(taxonomy_path)
    text = _read_text(input_path)
    try:
        reader = read_csv_responses if is_csv else parse_responses
        records, diagnostics = reader(text, tax)
    except PtmfError as e:
        _fail(EXIT_DOMAIN, f"parse failed: {e}")
        raise AssertionError
    ds = clean(records, tax)
    for d in diagnostics:
        click.echo(f"diagnostic: {d}", err=True)
    for ref, reason in ds.rejected:
        click.echo(f"rejected: {ref}: {reason}", err=True)
    for w in ds.warnings:
        click.echo(f"warning: {w}", err=True)
    _write_text(out, dataset_to_json(ds))
    click.echo(f"retained {len(ds.responses)} of {len(records)} records", err=True)


def _load_dataset(path: str, tax):
    """Accept either a clean-dataset document or raw NDJSON records."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            return dataset_from_json(text)
        except DocumentFormatError:
            pass  # single-object NDJSON or similar; fall through to raw parse
    records, _ = parse_responses(text, tax)
    click.echo("note: input looks like raw records; cleaning before analysis", err=True)
    return clean(records, tax)


@main.command("analyze")
@click.option("--input", "input_path", required=True, help="Clean dataset (or raw NDJSON, cleaned on the fly).")
@taxonomy_option
@click.option("--threat", required=True, help="Threat id to analyze (e.g. T1).")
@click.option("--k", default=3, show_default=True, help="Top-k size for rankings.")
@click.option("--out", default=None, help="Bundle output path (default stdout).")
def analyze_cmd(input_path: str, taxonomy_path: str | None, threat: str, k: int, out: str | None) -> None:
    """Run the frequency/ranking/critical-path pipeline into a bundle."""
    if k < 1:
        _fail(EXIT_DOMAIN, f"--k must be >= 1, got {k}")
    tax = _load_taxonomy_opt(taxonomy_path)
    try:
        ds = _load_dataset(input_path, tax)
        fm = build_frequency(ds, threat, tax)
        report = cumulative_rank(fm, k)
        cps = extract_critical_paths(fm)
        bundle = export_bundle(fm, cps, report, tax)
    except PtmfError as e:
        _fail(EXIT_DOMAIN, str(e))
        raise AssertionError
    _write_text(out, bundle)


@main.command("export")
@click.option("--bundle", "bundle_path", required=True, help="Bundle file produced by analyze.")
@click.option("--format", "fmt", default="json", help="One of: dot, csv, json.")
@taxonomy_option
@click.option("--out", default=None, help="Output path (default stdout; csv writes a .stars.csv sidecar).")
def export_cmd(bundle_path: str, fmt: str, taxonomy_path: str | None, out: str | None) -> None:
    """Render a bundle as DOT, heatmap CSV, or canonical JSON."""
    if fmt not in ("dot", "csv", "json"):
        click.echo(f"error: unknown format '{fmt}'\nusage: ptmf export --format {{dot|csv|json}}", err=True)
        sys.exit(EXIT_DOMAIN)
    tax = _load_taxonomy_opt(taxonomy_path)
    try:
        doc = load_bundle(_read_text(bundle_path))
    except PtmfError as e:
        _fail(EXIT_DOMAIN, f"bad bundle: {e}")
        raise AssertionError

    if fmt == "json":
        _write_text(out, canonical_json(doc))
        return

    fm = matrix_from_bundle(doc)
    cps = extract_critical_paths(fm)
    if fmt == "dot":
        graph = build_graph(fm, cps, tax, mode="full")
        colors = {a: c["token"] for a, c in doc["colors"].items()}
        _write_text(out, export_dot(graph, colors))
        return

    heatmap, csv_text = export_heatmap(fm, cps, tax)
    _write_text(out, csv_text)
    if out is not None and out != "-":
        sidecar = str(Path(out).with_suffix("")) + ".stars.csv"
        _write_text(sidecar, stars_csv(heatmap))
        click.echo(f"wrote starred-cell sidecar to {sidecar}", err=True)
    else:
        click.echo(stars_csv(heatmap), nl=False)


# ---------------------------------------------------------------------------
# power
# ---------------------------------------------------------------------------


def _power_table(rows: list[tuple[str, str]], as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps({k: v for k, v in rows}, indent=2))
    else:
        width = max(len(k) for k, _ in rows)
        for k, v in rows:
            click.echo(f"{k.ljust(width)}  {v}")


@main.group()
def power() -> None:
    """One-sample t-test power analysis."""


@power.command("a-priori")
@click.option("--d", "effect_size", type=float, required=True, help="Effect size (Cohen's d).")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--power", "target", type=float, default=0.95, show_default=True)
@click.option("--tails", type=click.Choice(["one", "two"]), default="one", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def power_a_priori(effect_size: float, alpha: float, target: float, tails: str, as_json: bool) -> None:
    """Smallest sample size reaching the target power."""
    try:
        n = required_sample_size(effect_size, alpha, target, tails)
        res = power_one_sample_t(effect_size, alpha, n, tails)
    except PtmfError as e:
        _fail(EXIT_DOMAIN, str(e))
        raise AssertionError
    _power_table([
        ("d", f"{effect_size:.4f}"),
        ("alpha", f"{alpha:.4f}"),
        ("target power", f"{target:.4f}"),
        ("tails", tails),
        ("n", str(n)),
        ("achieved power", f"{res.achieved_power:.4f}"),
        ("critical t", f"{res.critical_t:.4f}"),
        ("noncentrality", f"{res.noncentrality:.4f}"),
    ], as_json)


@power.command("sensitivity")
@click.option("--n", type=int, required=True, help="Sample size.")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--power", "target", type=float, default=0.9, show_default=True)
@click.option("--tails", type=click.Choice(["one", "two"]), default="one", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def power_sensitivity(n: int, alpha: float, target: float, tails: str, as_json: bool) -> None:
    """Detectable effect size at fixed n and target power."""
    try:
        d = sensitivity_effect_size(n, alpha, target, tails)
        res = power_one_sample_t(d, alpha, n, tails)
    except PtmfError as e:
        _fail(EXIT_DOMAIN, str(e))
        raise AssertionError
    _power_table([
        ("n", str(n)),
        ("alpha", f"{alpha:.4f}"),
        ("target power", f"{target:.4f}"),
        ("tails", tails),
        ("d", f"{d:.4f}"),
        ("achieved power", f"{res.achieved_power:.4f}"),
        ("critical t", f"{res.critical_t:.4f}"),
        ("noncentrality", f"{res.noncentrality:.4f}"),
    ], as_json)


@power.command("post-hoc")
@click.option("--d", "effect_size", type=float, required=True, help="Effect size (Cohen's d).")
@click.option("--n", type=int, required=True, help="Sample size.")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--tails", type=click.Choice(["one", "two"]), default="one", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def power_post_hoc(effect_size: float, n: int, alpha: float, tails: str, as_json: bool) -> None:
    """Achieved power at a fixed design point."""
    try:
        res = power_one_sample_t(effect_size, alpha, n, tails)
    except PtmfError as e:
        _fail(EXIT_DOMAIN, str(e))
        raise AssertionError
    _power_table([
        ("d", f"{effect_size:.4f}"),
        ("n", str(n)),
        ("alpha", f"{alpha:.4f}"),
        ("tails", tails),
        ("achieved power", f"{res.achieved_power:.4f}"),
        ("critical t", f"{res.critical_t:.4f}"),
        ("noncentrality", f"{res.noncentrality:.4f}"),
    ], as_json)


# ---------------------------------------------------------------------------
# serve + demo data
# ---------------------------------------------------------------------------


@main.command("serve")
@click.option("--port", default=7878, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--bundle-dir", required=True, help="Directory of per-threat bundle files.")
@click.option("--data-dir", required=True, help="Directory for assessment documents.")
@taxonomy_option
def serve_cmd(port: int, host: str, bundle_dir: str, data_dir: str, taxonomy_path: str | None) -> None:
    """Serve bundles, taxonomy, and assessments over HTTP."""
    import uvicorn

    from .api import create_app_from_dirs

    tax = _load_taxonomy_opt(taxonomy_path)
    try:
        app = create_app_from_dirs(tax, bundle_dir, data_dir)
    except OSError as e:
        _fail(EXIT_IO, str(e))
        raise AssertionError
    except PtmfError as e:
        _fail(EXIT_DOMAIN, str(e))
        raise AssertionError
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command("demo-data")
@click.option("--out", "out_dir", required=True, help="Directory for the example corpus and bundles.")
@taxonomy_option
def demo_data_cmd(out_dir: str, taxonomy_path: str | None) -> None:
    """Write the bundled example survey corpus and per-threat bundles."""
    from .fixtures import example_ndjson

    tax = _load_taxonomy_opt(taxonomy_path)
    root = Path(out_dir)
    try:
        root.mkdir(parents=True, exist_ok=True)
        (root / "responses.ndjson").write_text(example_ndjson(), "utf-8")
        records, _ = parse_responses(example_ndjson(), tax)
        ds = clean(records, tax)
        (root / "clean.json").write_text(dataset_to_json(ds), "utf-8")
        bundles = root / "bundles"
        bundles.mkdir(exist_ok=True)
        for threat in tax.threat_ids():
            fm = build_frequency(ds, threat, tax)
            bundle = export_bundle(fm, extract_critical_paths(fm), cumulative_rank(fm), tax)
            (bundles / f"{threat}.json").write_text(bundle, "utf-8")
    except OSError as e:
        _fail(EXIT_IO, str(e))
        raise AssertionError
    click.echo(f"wrote example corpus and {len(tax.threat_ids())} bundles under {out_dir}", err=True)


if __name__ == "__main__":
    main()
