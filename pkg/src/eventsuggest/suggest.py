"""Ordered suggestion list with mix-factor control.

The mix factor k caps how many suggestions come from day clusters; the
remaining n - k slots are filled from duration clusters. Selection is a
round-robin over candidate clusters: round m takes each cluster's m-th
best keyword, skipping texts already selected without consuming a slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

from .index import DayClusterDoc, DurationClusterDoc, IndexStore


class InvalidMix(ValueError):
    """Mix factor k exceeds the requested list size n."""


@dataclass(frozen=True)
class SuggestionRequest:
    q: str
    n: int = 8
    k: int = 2
    as_of: int | None = None
    exclude_query_text: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.k <= self.n:
            raise InvalidMix(f"k={self.k} outside [0, n={self.n}]")


@dataclass(frozen=True)
class Suggestion:
    text: str
    source: str  # "day" | "duration"
    cluster_id: int
    rank: float
    cluster_date_or_range: str


@dataclass(frozen=True)
class SuggestionList:
    items: tuple[Suggestion, ...]


def _normalize(text: str) -> str:
    return " ".join(text.casefold().split())


def _date_str(epoch: int) -> str:
    return datetime.fromtimestamp(epoch, tz=timezone.utc).date().isoformat()


def _doc_span(doc: DayClusterDoc | DurationClusterDoc) -> str:
    if isinstance(doc, DayClusterDoc):
        return _date_str(doc.date)
    return f"{_date_str(doc.start_date)}..{_date_str(doc.end_date)}"


def _round_robin(clusters: list[DayClusterDoc] | list[DurationClusterDoc],
                 source: str, quota: int, picked: list[Suggestion],
                 taken: set[str], skip: set[str]) -> None:
    """Fill picked up to quota, one keyword per cluster per round."""
    if not clusters or quota <= 0:
        return
    ranked = [list(doc.keyword_ranks) for doc in clusters]
    max_size = max(len(r) for r in ranked)
    m = 0
    while len(picked) < quota and m < max_size:
        for doc, kws in zip(clusters, ranked):
            if len(picked) >= quota:
                break
            if m >= len(kws):
                continue
            surface, rank = kws[m]
            norm = _normalize(surface)
            if norm in taken or norm in skip:
                continue
            taken.add(norm)
            picked.append(Suggestion(
                text=surface, source=source, cluster_id=doc.cluster_id,
                rank=rank, cluster_date_or_range=_doc_span(doc),
            ))
        m += 1


def mix_suggestions(day_docs: list[DayClusterDoc],
                    duration_docs: list[DurationClusterDoc],
                    req: SuggestionRequest) -> SuggestionList:
    """Selection stage over already-fetched candidate clusters."""
    skip = {_normalize(req.q)} if req.exclude_query_text else set()
    taken: set[str] = set()
    items: list[Suggestion] = []
    _round_robin(day_docs, "day", req.k, items, taken, skip)
    # The duration phase tops the list up to n even when the day phase
    # came up short of k.
    _round_robin(duration_docs, "duration", req.n, items, taken, skip)
    return SuggestionList(items=tuple(items))


def suggest(req: SuggestionRequest, store: IndexStore) -> SuggestionList:
    """Fetch top-k day and top-(n-k) duration candidates, then mix."""
    day_docs = store.search_day(req.q, limit=req.k, as_of=req.as_of) if req.k else []
    duration_docs = (store.search_duration(req.q, limit=req.n - req.k)
                     if req.n - req.k else [])
    return mix_suggestions(day_docs, duration_docs, req)
