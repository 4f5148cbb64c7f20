"""Offline evaluation: result-set diversity and suggestion-count stats.

Search results come from file fixtures (one file per query: first line
the query text, then URLs in rank order) so runs are hermetic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urlsplit, urlunsplit


class UncoveredQuery(KeyError):
    pass


class TooFewSuggestions(ValueError):
    """Diversity needs at least two suggestions."""


def canonical_url(url: str) -> str:
    """Lowercase the host and strip one trailing slash."""
    parts = urlsplit(url.strip())
    if parts.netloc:
        url = urlunsplit((parts.scheme.lower(), parts.netloc.lower(),
                          parts.path, parts.query, parts.fragment))
    return url[:-1] if url.endswith("/") else url


class FixtureProvider:
    """query text -> ordered top-n result URLs, read from a directory."""

    def __init__(self, directory: str | Path):
        self._results: dict[str, list[str]] = {}
        for path in sorted(Path(directory).iterdir()):
            if not path.is_file():
                continue
            lines = [l.strip() for l in path.read_text("utf-8").splitlines()
                     if l.strip()]
            if not lines:
                continue
            query, urls = lines[0], lines[1:]
            self._results[" ".join(query.casefold().split())] = urls

    def results(self, query: str, n: int) -> list[str]:
        key = " ".join(query.casefold().split())
        if key not in self._results:
            raise UncoveredQuery(query)
        return self._results[key][:n]


class MappingProvider:
    """In-memory provider, mainly for tests."""

    def __init__(self, mapping: dict[str, list[str]]):
        self._mapping = {" ".join(q.casefold().split()): urls
                         for q, urls in mapping.items()}

    def results(self, query: str, n: int) -> list[str]:
        key = " ".join(query.casefold().split())
        if key not in self._mapping:
            raise UncoveredQuery(query)
        return self._mapping[key][:n]


def pair_distance(q1: str, q2: str, provider, n: int) -> float:
    """1 - (shared top-n URLs) / n, URLs compared canonically."""
    r1 = Counter(canonical_url(u) for u in provider.results(q1, n))
    r2 = Counter(canonical_url(u) for u in provider.results(q2, n))
    sim = sum((r1 & r2).values())
    return 1.0 - sim / n


def diversity(suggestions: list[str], provider, n: int) -> float:
    """Root mean pairwise distance over all ordered pairs."""
    size = len(suggestions)
    if size < 2:
        raise TooFewSuggestions("need at least 2 suggestions")
    total = 0.0
    for i, q1 in enumerate(suggestions):
        for j, q2 in enumerate(suggestions):
            if i != j:
                total += pair_distance(q1, q2, provider, n)
    return math.sqrt(total / (size * (size - 1)))


@dataclass(frozen=True)
class DiversityReport:
    per_query: dict[str, float]
    average: float
    n: int


def diversity_report(lists: dict[str, list[str]], provider, n: int) -> DiversityReport:
    per_query = {q: diversity(s, provider, n) for q, s in lists.items()}
    avg = sum(per_query.values()) / len(per_query) if per_query else 0.0
    return DiversityReport(per_query=per_query, average=avg, n=n)


@dataclass(frozen=True)
class CountReport:
    mean: dict[str, float]
    std: dict[str, float]


def count_stats(lists_per_technique: dict[str, list[int]]) -> CountReport:
    """Mean and population standard deviation of suggestion-list sizes."""
    mean: dict[str, float] = {}
    std: dict[str, float] = {}
    for technique, sizes in lists_per_technique.items():
        if not sizes:
            raise ValueError(f"no lists for technique {technique!r}")
        m = sum(sizes) / len(sizes)
        var = sum((s - m) ** 2 for s in sizes) / len(sizes)
        mean[technique] = m
        std[technique] = math.sqrt(var)
    return CountReport(mean=mean, std=std)
