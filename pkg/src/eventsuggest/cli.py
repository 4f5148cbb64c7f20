"""Command line interface for the pipeline, suggestion and eval verbs."""

from __future__ import annotations

import json
import sys
from datetime import date, datetime, timezone
from pathlib import Path

import click

from . import evalharness, pipeline
from .index import IndexStore
from .preprocess import AnnotatorConfig
from .suggest import SuggestionRequest, suggest as run_suggest


def _as_of_epoch(value: str | None) -> int | None:
    if value is None:
        return None
    d = date.fromisoformat(value)
    return int(datetime(d.year, d.month, d.day, 23, 59, 59,
                        tzinfo=timezone.utc).timestamp())


@click.group()
def main() -> None:
    """Event-centric query suggestion over news-article metadata."""


@main.command()
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--workspace", type=click.Path(path_type=Path), required=True)
@click.option("--gazetteer", type=click.Path(exists=True, path_type=Path))
@click.option("--generic-keywords", "generic", type=click.Path(exists=True, path_type=Path))
def ingest(corpus: Path, workspace: Path, gazetteer: Path | None,
           generic: Path | None) -> None:
    """Parse and preprocess a line-delimited corpus file."""
    cfg = AnnotatorConfig.from_files(generic=generic, gazetteer=gazetteer)
    report = pipeline.run_ingest(corpus, workspace, cfg)
    click.echo(f"articles={report.articles} skipped={report.skipped_lines}")


@main.command("cluster-day")
@click.option("--workspace", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--date", "day", type=str, default=None,
              help="YYYY-MM-DD; omit to cluster every day in the workspace")
def cluster_day(workspace: Path, day: str | None) -> None:
    """Build day-wise event clusters."""
    if day is None:
        counts = pipeline.cluster_all_days(workspace)
        for d, n in counts.items():
            click.echo(f"{d.isoformat()}: {n} clusters")
    else:
        n = pipeline.run_cluster_day(workspace, date.fromisoformat(day))
        click.echo(f"{day}: {n} clusters")


@main.command("cluster-duration")
@click.option("--workspace", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--from", "start", type=str, default=None)
@click.option("--to", "end", type=str, default=None)
def cluster_duration(workspace: Path, start: str | None, end: str | None) -> None:
    """Build duration-wise event clusters over a day window."""
    n = pipeline.run_cluster_duration(
        workspace,
        date.fromisoformat(start) if start else None,
        date.fromisoformat(end) if end else None,
    )
    click.echo(f"{n} duration clusters")


@main.command("index-build")
@click.option("--workspace", type=click.Path(exists=True, path_type=Path), required=True)
def index_build(workspace: Path) -> None:
    """Rebuild the search index from the cluster store."""
    n = pipeline.run_index_build(workspace)
    click.echo(f"indexed {n} documents")


@main.command("suggest")
@click.option("-q", "query", required=True)
@click.option("-n", "n", type=int, default=8)
@click.option("-k", "k", type=int, default=2)
@click.option("--as-of", type=str, default=None)
@click.option("--index", "index_dir", type=click.Path(exists=True, path_type=Path),
              required=True)
def suggest_cmd(query: str, n: int, k: int, as_of: str | None,
                index_dir: Path) -> None:
    """Print suggestions, one per line: text, source, cluster id, rank."""
    store = IndexStore(index_dir)
    req = SuggestionRequest(q=query, n=n, k=k, as_of=_as_of_epoch(as_of))
    for item in run_suggest(req, store).items:
        click.echo(f"{item.text}\t{item.source}\t{item.cluster_id}\t{item.rank}")


@main.command()
@click.option("--index", "index_dir", type=click.Path(exists=True, path_type=Path),
              required=True)
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--ui", "ui_dir", type=click.Path(path_type=Path), default=None)
def serve(index_dir: Path, host: str, port: int, ui_dir: Path | None) -> None:
    """Run the HTTP suggestion service."""
    from .service import serve as run_serve

    run_serve(index_dir, host=host, port=port, ui_dir=ui_dir)


@main.group()
def eval() -> None:
    """Offline evaluation over result fixtures."""


@eval.command()
@click.option("--suggestions", type=click.Path(exists=True, path_type=Path),
              required=True, help="JSON file: {query: [suggestion, ...]}")
@click.option("--results", type=click.Path(exists=True, path_type=Path),
              required=True, help="fixture directory of per-query result files")
@click.option("-n", "n", type=int, default=10)
def diversity(suggestions: Path, results: Path, n: int) -> None:
    lists = json.loads(suggestions.read_text("utf-8"))
    provider = evalharness.FixtureProvider(results)
    report = evalharness.diversity_report(lists, provider, n)
    for query, value in report.per_query.items():
        click.echo(f"{query}\t{value:.6f}")
    click.echo(f"average\t{report.average:.6f}")


@eval.command()
@click.option("--lists", type=click.Path(exists=True, path_type=Path), required=True,
              help="JSON file: {technique: [list size, ...]}")
def counts(lists: Path) -> None:
    sizes = json.loads(Path(lists).read_text("utf-8"))
    report = evalharness.count_stats(sizes)
    for technique in report.mean:
        click.echo(f"{technique}\t{report.mean[technique]:.4f}"
                   f"\t{report.std[technique]:.4f}")


if __name__ == "__main__":
    sys.exit(main())
