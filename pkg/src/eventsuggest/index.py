"""Persistent field-structured index over event-cluster documents.

Documents carry a keywords text field (analyzed with the same
tokenize_stem pipeline as vector building) plus sort fields. Matching is
all-tokens with an any-token fallback; ordering is strictly by field
sorts, never by relevance score:

- day documents: date desc, cluster weight desc, cluster id asc
- duration documents: cluster weight desc, start date desc, cluster id asc

On disk the index is a directory of append-only segment files listed by
a manifest; reopening replays the segments.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path

from .vectors import tokenize_stem

MANIFEST = "manifest.json"
FORMAT_VERSION = 1


class StoreClosed(RuntimeError):
    pass


class EmptyQuery(ValueError):
    """No token of the query survives analysis."""


def day_to_timestamp(d: date) -> int:
    """Seconds since epoch at midnight UTC of the given date."""
    return int(datetime(d.year, d.month, d.day, tzinfo=timezone.utc).timestamp())


@dataclass(frozen=True)
class DayClusterDoc:
    cluster_id: int
    keywords: str
    cluster_weight: float
    date: int  # epoch seconds
    keyword_ranks: tuple[tuple[str, float], ...] = ()

    kind = "day"


@dataclass(frozen=True)
class DurationClusterDoc:
    cluster_id: int
    keywords: str
    cluster_weight: float
    start_date: int
    end_date: int
    keyword_ranks: tuple[tuple[str, float], ...] = ()

    kind = "duration"


ClusterDoc = DayClusterDoc | DurationClusterDoc


def doc_identity(doc: ClusterDoc) -> str:
    if isinstance(doc, DayClusterDoc):
        span = str(doc.date)
    else:
        span = f"{doc.start_date}..{doc.end_date}"
    payload = f"{doc.kind}\x1f{span}\x1f{doc.keywords}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _doc_to_obj(doc: ClusterDoc) -> dict:
    obj = {
        "kind": doc.kind,
        "cluster_id": doc.cluster_id,
        "keywords": doc.keywords,
        "cluster_weight": doc.cluster_weight,
        "keyword_ranks": list(map(list, doc.keyword_ranks)),
    }
    if isinstance(doc, DayClusterDoc):
        obj["date"] = doc.date
    else:
        obj["start_date"] = doc.start_date
        obj["end_date"] = doc.end_date
    return obj


def _doc_from_obj(obj: dict) -> ClusterDoc:
    ranks = tuple((s, r) for s, r in obj.get("keyword_ranks", []))
    if obj["kind"] == "day":
        return DayClusterDoc(
            cluster_id=obj["cluster_id"], keywords=obj["keywords"],
            cluster_weight=obj["cluster_weight"], date=obj["date"],
            keyword_ranks=ranks,
        )
    return DurationClusterDoc(
        cluster_id=obj["cluster_id"], keywords=obj["keywords"],
        cluster_weight=obj["cluster_weight"],
        start_date=obj["start_date"], end_date=obj["end_date"],
        keyword_ranks=ranks,
    )


class IndexStore:
    """Inverted index plus stored document table, directory-backed."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._postings: dict[str, set[str]] = {}
        self._docs: dict[str, ClusterDoc] = {}
        self._pending: list[str] = []
        self._open = True
        self.directory.mkdir(parents=True, exist_ok=True)
        self._load()

    def _manifest_path(self) -> Path:
        return self.directory / MANIFEST

    def _load(self) -> None:
        manifest_path = self._manifest_path()
        if not manifest_path.is_file():
            return
        manifest = json.loads(manifest_path.read_text("utf-8"))
        if manifest.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported index format: {manifest.get('version')}")
        for segment in manifest["segments"]:
            seg_path = self.directory / segment
            with open(seg_path, encoding="utf-8") as fh:
                for line in fh:
                    self._insert(_doc_from_obj(json.loads(line)), persisting=False)

    def _insert(self, doc: ClusterDoc, *, persisting: bool) -> bool:
        ident = doc_identity(doc)
        if ident in self._docs:
            return False
        self._docs[ident] = doc
        for token in set(tokenize_stem(doc.keywords)):
            self._postings.setdefault(token, set()).add(ident)
        if persisting:
            self._pending.append(ident)
        return True

    def add(self, doc: ClusterDoc) -> bool:
        """Index a document; identical documents are a no-op."""
        if not self._open:
            raise StoreClosed("index store is closed")
        return self._insert(doc, persisting=True)

    def commit(self) -> None:
        """Write pending documents as a new segment and update the manifest."""
        if not self._open:
            raise StoreClosed("index store is closed")
        if not self._pending:
            return
        manifest_path = self._manifest_path()
        if manifest_path.is_file():
            manifest = json.loads(manifest_path.read_text("utf-8"))
        else:
            manifest = {"version": FORMAT_VERSION, "segments": []}
        name = f"segment-{len(manifest['segments']):05d}.jsonl"
        with open(self.directory / name, "w", encoding="utf-8") as fh:
            for ident in self._pending:
                fh.write(json.dumps(_doc_to_obj(self._docs[ident]),
                                    ensure_ascii=False) + "\n")
        manifest["segments"].append(name)
        manifest_path.write_text(json.dumps(manifest, indent=2), "utf-8")
        self._pending = []

    def close(self) -> None:
        if self._open:
            self.commit()
            self._open = False

    def __len__(self) -> int:
        return len(self._docs)

    def _candidates(self, query: str, kind: str,
                    mode: str = "all-with-fallback") -> list[ClusterDoc]:
        tokens = tokenize_stem(query)
        if not tokens:
            raise EmptyQuery(query)
        unique = set(tokens)
        posting_sets = [self._postings.get(t, set()) for t in unique]

        if mode in ("all", "all-with-fallback"):
            matched = set.intersection(*posting_sets) if posting_sets else set()
            docs = [self._docs[i] for i in matched
                    if self._docs[i].kind == kind]
            if docs or mode == "all":
                return docs
        matched = set.union(*posting_sets) if posting_sets else set()
        return [self._docs[i] for i in matched if self._docs[i].kind == kind]

    def search_day(self, query: str, limit: int,
                   as_of: int | None = None,
                   mode: str = "all-with-fallback") -> list[DayClusterDoc]:
        docs = self._candidates(query, "day", mode)
        if as_of is not None:
            docs = [d for d in docs if d.date <= as_of]
        docs.sort(key=lambda d: (-d.date, -d.cluster_weight, d.cluster_id))
        return docs[:limit]

    def search_duration(self, query: str, limit: int,
                        mode: str = "all-with-fallback") -> list[DurationClusterDoc]:
        docs = self._candidates(query, "duration", mode)
        docs.sort(key=lambda d: (-d.cluster_weight, -d.start_date, d.cluster_id))
        return docs[:limit]


def day_doc(cluster) -> DayClusterDoc:
    """Build the indexable document for a ranked day cluster."""
    return DayClusterDoc(
        cluster_id=cluster.cluster_id,
        keywords=" ".join(k.surface for k in cluster.keywords),
        cluster_weight=cluster.weight,
        date=day_to_timestamp(cluster.date),
        keyword_ranks=tuple((k.surface, k.rank) for k in cluster.keywords),
    )


def duration_doc(cluster) -> DurationClusterDoc:
    return DurationClusterDoc(
        cluster_id=cluster.cluster_id,
        keywords=" ".join(k.surface for k in cluster.keywords),
        cluster_weight=cluster.weight,
        start_date=day_to_timestamp(cluster.start_date),
        end_date=day_to_timestamp(cluster.end_date),
        keyword_ranks=tuple((k.surface, k.rank) for k in cluster.keywords),
    )
