"""Shared fixtures: planted-event synthetic corpus and helpers."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

N_EVENTS = 3
N_DAYS = 3
ARTICLES_PER_EVENT_PER_DAY = 10
DAYS = ["2016-02-01", "2016-02-02", "2016-02-03"]


def event_tokens(event: int) -> list[str]:
    return [f"ev{event}tok{t}" for t in range(8)]


def anchor_token(event: int) -> str:
    return f"ev{event}tok0"


def planted_keywords(event: int) -> list[str]:
    b = event_tokens(event)
    return [
        f"{b[0]} {b[1]} {b[2]}",
        f"{b[3]} {b[4]}",
        f"{b[5]} {b[6]} {b[7]}",
    ]


def planted_records() -> list[dict]:
    """90 pre-extracted records: 3 events x 3 days x 10 articles."""
    records = []
    for d, day in enumerate(DAYS):
        for e in range(N_EVENTS):
            b = event_tokens(e)
            for j in range(ARTICLES_PER_EVENT_PER_DAY):
                records.append({
                    "url": f"https://news.example/world/ev{e}-d{d}-a{j}",
                    "title": f"{b[0]} {b[1]} {b[2]} {b[3]} uniq{e}d{d}a{j}",
                    "description": f"{b[4]} {b[5]} {b[6]} {b[7]}",
                    "keywords": planted_keywords(e),
                    "published": day,
                })
    return records


@pytest.fixture(scope="session")
def planted_corpus(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("corpus") / "planted.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for record in planted_records():
            fh.write(json.dumps(record) + "\n")
    return path


@pytest.fixture(scope="session")
def planted_workspace(planted_corpus, tmp_path_factory):
    """Full pipeline run over the planted corpus; returns the workspace."""
    from eventsuggest import pipeline

    workspace = tmp_path_factory.mktemp("ws")
    pipeline.run_ingest(planted_corpus, workspace)
    pipeline.cluster_all_days(workspace)
    pipeline.run_cluster_duration(workspace)
    pipeline.run_index_build(workspace)
    return workspace
