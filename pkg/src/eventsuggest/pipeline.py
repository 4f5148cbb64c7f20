"""End-to-end pipeline plumbing: corpus -> clusters -> index.

Workspace layout under a root directory:

    articles.jsonl          cleaned five-attribute records, one per line
    clusters/day/YYYY-MM-DD day-cluster store files
    clusters/duration       duration-cluster store file
    index/                  index segments + manifest
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import date
from pathlib import Path

from . import events, ingest, preprocess
from .index import IndexStore, day_doc, duration_doc
from .preprocess import AnnotatorConfig, CleanArticle


@dataclass
class IngestReport:
    articles: int
    skipped_lines: int
    head_bytes: int


def run_ingest(corpus_path: Path, workspace: Path,
               cfg: AnnotatorConfig | None = None) -> IngestReport:
    """Parse, dedupe per day, clean and annotate the corpus."""
    cfg = cfg or AnnotatorConfig.default()
    reader = ingest.load_corpus(corpus_path)
    by_day: dict[date, list[ingest.ArticleMeta]] = {}
    head_bytes = 0
    for meta in reader:
        by_day.setdefault(meta.published_date, []).append(meta)
    if corpus_path.is_file():
        with open(corpus_path, encoding="utf-8") as fh:
            for line in fh:
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if isinstance(obj, dict) and "head_html" in obj:
                    head_bytes += len(obj["head_html"].encode("utf-8"))

    workspace.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(workspace / "articles.jsonl", "w", encoding="utf-8") as fh:
        for day in sorted(by_day):
            for article in preprocess.preprocess_day(by_day[day], cfg):
                fh.write(json.dumps({
                    "title": article.title,
                    "description": article.description,
                    "keywords": list(article.keywords),
                    "date": article.date.isoformat(),
                    "named_entities": sorted(article.named_entities),
                    "url": article.url,
                }, ensure_ascii=False) + "\n")
                count += 1
    return IngestReport(articles=count, skipped_lines=reader.skipped,
                        head_bytes=head_bytes)


def load_articles(workspace: Path) -> list[CleanArticle]:
    articles = []
    with open(workspace / "articles.jsonl", encoding="utf-8") as fh:
        for line in fh:
            obj = json.loads(line)
            articles.append(CleanArticle(
                title=obj["title"],
                description=obj["description"],
                keywords=tuple(obj["keywords"]),
                date=date.fromisoformat(obj["date"]),
                named_entities=frozenset(obj["named_entities"]),
                url=obj.get("url", ""),
            ))
    return articles


def run_cluster_day(workspace: Path, day: date) -> int:
    articles = [a for a in load_articles(workspace) if a.date == day]
    clusters = events.cluster_day(articles)
    if clusters:
        events.save_day_clusters(clusters, workspace / "clusters")
    return len(clusters)


def cluster_all_days(workspace: Path) -> dict[date, int]:
    articles = load_articles(workspace)
    days = sorted({a.date for a in articles})
    return {day: run_cluster_day(workspace, day) for day in days}


def run_cluster_duration(workspace: Path, start: date | None = None,
                         end: date | None = None) -> int:
    day_dir = workspace / "clusters" / "day"
    day_clusters: list[events.DayCluster] = []
    if day_dir.is_dir():
        for path in sorted(day_dir.iterdir()):
            day = date.fromisoformat(path.name)
            if start is not None and day < start:
                continue
            if end is not None and day > end:
                continue
            day_clusters += events.load_day_clusters(path)
    clusters = events.cluster_duration(day_clusters)
    for i, c in enumerate(clusters):
        c.cluster_id = i
    events.save_duration_clusters(clusters, workspace / "clusters")
    return len(clusters)


def run_index_build(workspace: Path) -> int:
    """Rebuild the index directory from the cluster store."""
    index_dir = workspace / "index"
    store = IndexStore(index_dir)
    day_dir = workspace / "clusters" / "day"
    doc_id = 0
    if day_dir.is_dir():
        for path in sorted(day_dir.iterdir()):
            for cluster in events.load_day_clusters(path):
                # cluster ids restart daily; give docs globally unique ids
                doc = replace(day_doc(cluster), cluster_id=doc_id)
                store.add(doc)
                doc_id += 1
    duration_path = workspace / "clusters" / "duration"
    if duration_path.is_file():
        for cluster in events.load_duration_clusters(duration_path):
            store.add(duration_doc(cluster))
    store.close()
    return len(store)


def run_all(corpus_path: Path, workspace: Path,
            cfg: AnnotatorConfig | None = None) -> IndexStore:
    """Convenience: full pipeline, returning an opened read index."""
    run_ingest(corpus_path, workspace, cfg)
    cluster_all_days(workspace)
    run_cluster_duration(workspace)
    run_index_build(workspace)
    return IndexStore(workspace / "index")
