"""Operator command line: ingest, search, serve, bench, stats, export/import.

Exit codes: 0 success, 1 operational failure, 2 user error (bad query or
flags). Every flag is mirrored by an environment variable with the
REFSEARCH_ prefix (e.g. REFSEARCH_DATA_DIR, REFSEARCH_SEARCH_LIMIT).
"""

from __future__ import annotations

import json
import socket
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from . import synth as synth_mod
from .ingest import DetectorInput, JobRequest, run_job
from .model import CaseDecodeError, from_json, validate_case
from .querylang import ParseError, parse_query
from .store import CaseStore, parse_sort

_TABLE_COLUMNS = ("repository", "tool", "type", "description")


@click.group()
@click.option(
    "--data-dir",
    default="refsearch-data",
    show_default=True,
    help="Directory holding the case store.",
)
@click.pass_context
def cli(ctx: click.Context, data_dir: str) -> None:
    """Search engine for refactoring cases mined from git histories."""
    ctx.ensure_object(dict)
    ctx.obj["data_dir"] = data_dir


def _open_store(ctx: click.Context) -> CaseStore:
    return CaseStore(ctx.obj["data_dir"])


def _echo_json(data) -> None:
    click.echo(json.dumps(data, ensure_ascii=False))


def _query_error(query: str, exc: ParseError) -> None:
    """Print the error with a caret under the offending span, then exit 2."""
    click.echo(f"error: {exc.message}", err=True)
    try:
        caret_col = len(query.encode("utf-8")[: exc.offset].decode("utf-8"))
        caret_len = max(1, len(query.encode("utf-8")[exc.offset : exc.offset + exc.length].decode("utf-8")))
    except UnicodeDecodeError:
        caret_col, caret_len = exc.offset, max(1, exc.length)
    click.echo(f"  {query}", err=True)
    click.echo("  " + " " * caret_col + "^" + "~" * (caret_len - 1), err=True)
    sys.exit(2)


@cli.command()
@click.option("--repo", required=True, help="Repository URL the cases belong to.")
@click.option("--rminer-json", type=click.Path(), help="RefactoringMiner export file.")
@click.option("--refdiff-json", type=click.Path(), help="RefDiff export file.")
@click.option("--commits-jsonl", type=click.Path(), help="Commit metadata JSONL file.")
@click.option("--clone-path", type=click.Path(), help="Local clone to read history from.")
@click.option(
    "--detector-cmd",
    "detector_cmds",
    multiple=True,
    metavar="TOOL=COMMAND",
    help="External detector command printing JSON on stdout; {repo} expands to the clone path.",
)
@click.pass_context
def ingest(ctx, repo, rminer_json, refdiff_json, commits_jsonl, clone_path, detector_cmds) -> None:
    """Run one ingestion job synchronously and print its counts."""
    inputs = []
    if rminer_json:
        inputs.append(DetectorInput("rminer", json_path=rminer_json))
    if refdiff_json:
        inputs.append(DetectorInput("refdiff", json_path=refdiff_json))
    for spec in detector_cmds:
        tool, sep, command = spec.partition("=")
        if not sep or not command:
            raise click.UsageError(f"--detector-cmd needs TOOL=COMMAND, got {spec!r}")
        inputs.append(DetectorInput(tool, command=command))

    request = JobRequest(
        repository_url=repo,
        detector_inputs=inputs,
        commits_jsonl=commits_jsonl,
        clone_path=clone_path,
    )
    store = _open_store(ctx)
    try:
        job = run_job(request, store, log=lambda event: click.echo(json.dumps(event), err=True))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    finally:
        store.close()
    _echo_json(job.to_json()["counts"])
    if not job.succeeded:
        failed = job.failed_stage
        if failed is not None:
            click.echo(f"stage {failed.name} failed: {failed.detail}", err=True)
        sys.exit(1)


@cli.command()
@click.argument("query")
@click.option("--limit", default=20, show_default=True)
@click.option("--offset", default=0, show_default=True)
@click.option("--sort", "sort_spec", default="commit.date:desc", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table", show_default=True)
@click.pass_context
def search(ctx, query, limit, offset, sort_spec, fmt) -> None:
    """Search stored cases; an empty QUERY matches everything."""
    ast = None
    if query.strip():
        try:
            ast = parse_query(query)
        except ParseError as exc:
            _query_error(query, exc)
    try:
        sort = parse_sort(sort_spec)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    store = _open_store(ctx)
    try:
        page = store.search(ast, offset=offset, limit=limit, sort=sort)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    finally:
        store.close()

    if fmt == "json":
        _echo_json(page.to_json())
        return
    widths = (40, 17, 24, 60)
    header = "  ".join(name.ljust(width) for name, width in zip(_TABLE_COLUMNS, widths))
    click.echo(header)
    click.echo("-" * len(header))
    for doc in page.items:
        row = (
            str(doc.get("repository", "")),
            str((doc.get("meta") or {}).get("tool", "")),
            str(doc.get("type", "")),
            str(doc.get("description", "")).replace("\n", " "),
        )
        click.echo("  ".join(_clip(value, width) for value, width in zip(row, widths)))
    click.echo(f"{len(page.items)} of {page.total} result(s), offset {page.offset}", err=True)


def _clip(value: str, width: int) -> str:
    if len(value) > width:
        return value[: width - 1] + "…"
    return value.ljust(width)


@cli.command()
@click.option("--port", default=7364, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui-dir", type=click.Path(), help="Static web UI bundle served at /.")
@click.option("--cors-origin", help="Origin allowed to call the API from a browser.")
@click.pass_context
def serve(ctx, port, host, ui_dir, cors_origin) -> None:
    """Serve the HTTP API (and the web UI when --ui-dir is given)."""
    import uvicorn

    from .api import create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        click.echo(f"cannot bind {host}:{port}: {exc}", err=True)
        sys.exit(1)
    finally:
        probe.close()

    store = _open_store(ctx)
    app = create_app(store, ui_dir=ui_dir, cors_origin=cors_origin)
    uvicorn.run(app, host=host, port=port, log_level="info")


@cli.command()
@click.option("--queries", "queries_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--repeat", default=10, show_default=True)
@click.option("--report-dir", type=click.Path(), help="Also write latency.csv and latency.png here.")
@click.pass_context
def bench(ctx, queries_file, repeat, report_dir) -> None:
    """Measure latency for each query in a file (one per line, # comments)."""
    lines = bench_mod.load_query_file(queries_file)
    if not lines:
        raise click.UsageError(f"no queries in {queries_file}")
    try:
        bench_mod.parse_query_lines(lines)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    store = _open_store(ctx)
    try:
        results = bench_mod.run_bench(store, lines, repeat=repeat)
        report = {
            "caseCount": len(store),
            "repeat": repeat,
            "results": [timing.to_json() for timing in results],
        }
        if report_dir:
            report["report"] = bench_mod.write_report(results, report_dir)
        _echo_json(report)
    finally:
        store.close()


@cli.command()
@click.pass_context
def stats(ctx) -> None:
    """Print store statistics as JSON."""
    store = _open_store(ctx)
    try:
        _echo_json(store.stats())
    finally:
        store.close()


@cli.group()
def index() -> None:
    """Index maintenance."""


@index.command()
@click.pass_context
def rebuild(ctx) -> None:
    """Drop and rebuild all secondary indexes."""
    store = _open_store(ctx)
    try:
        _echo_json(store.rebuild_indexes())
    finally:
        store.close()


@cli.command()
@click.option("--out", "out_path", required=True, type=click.Path())
@click.pass_context
def export(ctx, out_path) -> None:
    """Write the whole corpus as JSONL (one case per line)."""
    store = _open_store(ctx)
    try:
        count = 0
        with open(out_path, "w", encoding="utf-8") as fh:
            for doc in store.iter_docs():
                fh.write(json.dumps(doc, ensure_ascii=False) + "\n")
                count += 1
    finally:
        store.close()
    _echo_json({"exported": count})


@cli.command("import")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def import_cases(ctx, in_path) -> None:
    """Load cases from a JSONL file; any invalid line aborts with its number."""
    docs = []
    for lineno, line in enumerate(Path(in_path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            case = from_json(data)
        except (json.JSONDecodeError, CaseDecodeError) as exc:
            click.echo(f"{in_path}:{lineno}: {exc}", err=True)
            sys.exit(1)
        violations = validate_case(case)
        if violations:
            click.echo(f"{in_path}:{lineno}: invalid case: {'; '.join(violations)}", err=True)
            sys.exit(1)
        docs.append(data)
    store = _open_store(ctx)
    try:
        stored = 0
        skipped = 0
        for start in range(0, len(docs), 1000):
            outcome = store.put_cases(docs[start : start + 1000])
            stored += outcome["stored"]
            skipped += outcome["skippedDuplicate"]
    finally:
        store.close()
    _echo_json({"stored": stored, "skippedDuplicate": skipped})


@cli.command()
@click.option("--cases", "count", default=300_000, show_default=True)
@click.option("--seed", default=7, show_default=True)
@click.option("--batch-size", default=20_000, show_default=True)
@click.pass_context
def synth(ctx, count, seed, batch_size) -> None:
    """Generate a synthetic corpus into the store (for benchmarks)."""
    store = _open_store(ctx)
    try:
        stored = synth_mod.generate_into(store, count, seed=seed, batch_size=batch_size)
        _echo_json({"stored": stored, "caseCount": len(store)})
    finally:
        store.close()


def main() -> None:
    cli(auto_envvar_prefix="REFSEARCH")


if __name__ == "__main__":
    main()
