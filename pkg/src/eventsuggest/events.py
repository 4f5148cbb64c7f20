"""Day-wise and duration-wise event clustering with keyword ranking.

Ranking rules, applied per day cluster:

- a keyword whose normalized surface equals a named entity of any member
  article gets the frequency-invariant rank 0.1 * n_k / n_max;
- otherwise each member article contributes 0.1 per keyword token found
  in its title/description token set plus 0.1 per keyword token found in
  its entity-token set, the sum scaled by n_k / n_max.

n_k counts every whitespace token of the keyword surface (stopwords
included); the overlap sets exclude stopwords. Duration-level ranks are
the sums of member-day ranks, and a duration cluster's weight sums the
duration rank of each keyword once per member day cluster that carries
it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import date
from pathlib import Path

from . import vectors
from .dbscan import DbscanParams, dbscan
from .preprocess import CleanArticle

DAY_PARAMS = DbscanParams(min_samples=3, eps=0.96, metric="cosine")
DURATION_PARAMS = DbscanParams(min_samples=2, eps=0.52, metric="cosine")

ENTITY_RANK_UNIT = 0.1
OVERLAP_RANK_UNIT = 0.1

STORE_HEADER = "#eventsuggest-clusters v1"


class KeywordNotInCluster(KeyError):
    pass


def normalize_surface(keyword: str) -> str:
    return " ".join(keyword.casefold().split())


@dataclass(frozen=True)
class RankedKeyword:
    surface: str
    tokens: tuple[str, ...]  # stopwords excluded
    n_k: int                 # all surface tokens, stopwords included
    rank: float
    is_entity: bool


@dataclass
class DayCluster:
    date: date
    cluster_id: int
    articles: list[CleanArticle]
    keywords: list[RankedKeyword] = field(default_factory=list)
    weight: float = 0.0
    n_max: int = 1

    def keyword_rank(self, surface: str) -> float:
        surface = normalize_surface(surface)
        for kw in self.keywords:
            if kw.surface == surface:
                return kw.rank
        raise KeywordNotInCluster(surface)


@dataclass
class DurationCluster:
    cluster_id: int
    day_clusters: list[DayCluster]
    keywords: list[RankedKeyword] = field(default_factory=list)
    weight: float = 0.0
    start_date: date = date.min
    end_date: date = date.min


def _sorted_keywords(ranked: list[RankedKeyword]) -> list[RankedKeyword]:
    return sorted(ranked, key=lambda k: (-k.rank, k.surface))


def _article_rel_tokens(article: CleanArticle) -> frozenset[str]:
    return frozenset(vectors.content_tokens(article.title)
                     + vectors.content_tokens(article.description))


def _article_entity_tokens(article: CleanArticle) -> frozenset[str]:
    toks: set[str] = set()
    for entity in article.named_entities:
        toks.update(vectors.content_tokens(entity))
    return frozenset(toks)


def rank_day_keyword(surface: str, cluster: DayCluster) -> float:
    """Rank of one cluster keyword; the cluster's n_max must be set."""
    surface = normalize_surface(surface)
    n_k = len(surface.split())
    tokens = frozenset(vectors.content_tokens(surface))
    length_factor = n_k / cluster.n_max

    is_entity = any(surface in a.named_entities for a in cluster.articles)
    if is_entity:
        return ENTITY_RANK_UNIT * length_factor

    total = 0.0
    for article in cluster.articles:
        rel = _article_rel_tokens(article)
        ne = _article_entity_tokens(article)
        total += OVERLAP_RANK_UNIT * len(tokens & rel)
        total += OVERLAP_RANK_UNIT * len(tokens & ne)
    return total * length_factor


def _cluster_keyword_surfaces(articles: list[CleanArticle]) -> list[str]:
    seen: set[str] = set()
    surfaces: list[str] = []
    for article in articles:
        for kw in article.keywords:
            norm = normalize_surface(kw)
            if norm and norm not in seen:
                seen.add(norm)
                surfaces.append(norm)
    return surfaces


def _rank_cluster(cluster: DayCluster) -> DayCluster:
    surfaces = _cluster_keyword_surfaces(cluster.articles)
    if not surfaces:
        cluster.keywords = []
        cluster.weight = 0.0
        cluster.n_max = 1
        return cluster
    cluster.n_max = max(len(s.split()) for s in surfaces)
    ranked = []
    entity_surfaces = set()
    for article in cluster.articles:
        entity_surfaces |= article.named_entities
    for surface in surfaces:
        rank = rank_day_keyword(surface, cluster)
        ranked.append(RankedKeyword(
            surface=surface,
            tokens=tuple(vectors.content_tokens(surface)),
            n_k=len(surface.split()),
            rank=rank,
            is_entity=surface in entity_surfaces,
        ))
    cluster.keywords = _sorted_keywords(ranked)
    cluster.weight = sum(k.rank for k in cluster.keywords)
    return cluster


def cluster_day(articles: list[CleanArticle],
                params: DbscanParams = DAY_PARAMS) -> list[DayCluster]:
    """Cluster one day's deduplicated articles into ranked event clusters."""
    if not articles:
        return []
    day = articles[0].date
    dictionary = vectors.TokenDictionary()
    bows = [vectors.build_bow(a.title, a.description, list(a.keywords), dictionary)
            for a in articles]
    stats = vectors.corpus_stats(bows)
    points = [vectors.tfidf(bow, stats) for bow in bows]
    assignment = dbscan(points, params)

    clusters: list[DayCluster] = []
    for cid, members in enumerate(assignment.clusters()):
        cluster = DayCluster(
            date=day,
            cluster_id=cid,
            articles=[articles[i] for i in members],
        )
        clusters.append(_rank_cluster(cluster))
    return clusters


def day_cluster_pseudo_tokens(cluster: DayCluster) -> list[str]:
    """Second-level feature stream: stemmed tokens of keyword surfaces."""
    tokens: list[str] = []
    for kw in cluster.keywords:
        tokens += vectors.tokenize_stem(kw.surface)
    return tokens


def cluster_duration(day_clusters: list[DayCluster],
                     params: DbscanParams = DURATION_PARAMS) -> list[DurationCluster]:
    """Group day clusters into duration clusters and rank them."""
    if not day_clusters:
        return []
    dictionary = vectors.TokenDictionary()
    bows = [vectors.bow_from_tokens(day_cluster_pseudo_tokens(c), dictionary)
            for c in day_clusters]
    stats = vectors.corpus_stats(bows)
    points = [vectors.tfidf(bow, stats) for bow in bows]
    assignment = dbscan(points, params)

    out: list[DurationCluster] = []
    for cid, members in enumerate(assignment.clusters()):
        cluster = DurationCluster(
            cluster_id=cid,
            day_clusters=[day_clusters[i] for i in members],
        )
        rank_duration(cluster)
        out.append(cluster)
    return out


def rank_duration(cluster: DurationCluster, *,
                  distinct_keyword_weight: bool = False) -> DurationCluster:
    """Fill duration-level ranks, weight and start/end dates in place.

    The weight sums rank(k, cluster) once per member day cluster carrying
    k; distinct_keyword_weight=True counts each keyword once instead.
    """
    duration_rank: dict[str, float] = {}
    for day_cluster in cluster.day_clusters:
        for kw in day_cluster.keywords:
            duration_rank[kw.surface] = duration_rank.get(kw.surface, 0.0) + kw.rank

    if distinct_keyword_weight:
        weight = sum(duration_rank.values())
    else:
        weight = 0.0
        for day_cluster in cluster.day_clusters:
            for kw in day_cluster.keywords:
                weight += duration_rank[kw.surface]

    by_surface: dict[str, RankedKeyword] = {}
    for day_cluster in cluster.day_clusters:
        for kw in day_cluster.keywords:
            if kw.surface not in by_surface:
                by_surface[kw.surface] = replace(
                    kw, rank=duration_rank[kw.surface])

    cluster.keywords = _sorted_keywords(list(by_surface.values()))
    cluster.weight = weight
    cluster.start_date = min(c.date for c in cluster.day_clusters)
    cluster.end_date = max(c.date for c in cluster.day_clusters)
    return cluster


# --- cluster store (line-delimited, versioned header) ---

def _keyword_obj(kw: RankedKeyword) -> dict:
    return {"surface": kw.surface, "tokens": list(kw.tokens), "n_k": kw.n_k,
            "rank": kw.rank, "is_entity": kw.is_entity}


def _keyword_from_obj(obj: dict) -> RankedKeyword:
    return RankedKeyword(surface=obj["surface"], tokens=tuple(obj["tokens"]),
                         n_k=obj["n_k"], rank=obj["rank"],
                         is_entity=obj["is_entity"])


def save_day_clusters(clusters: list[DayCluster], root: Path) -> Path:
    if not clusters:
        raise ValueError("no clusters to save")
    day = clusters[0].date
    path = root / "day" / day.isoformat()
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(STORE_HEADER + "\n")
        for c in clusters:
            fh.write(json.dumps({
                "id": c.cluster_id,
                "weight": c.weight,
                "n_max": c.n_max,
                "articles": [a.url for a in c.articles],
                "keywords": [_keyword_obj(k) for k in c.keywords],
            }, ensure_ascii=False) + "\n")
    return path


def load_day_clusters(path: Path) -> list[DayCluster]:
    day = date.fromisoformat(path.name)
    clusters = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != STORE_HEADER:
            raise ValueError(f"unrecognized cluster store header: {header!r}")
        for line in fh:
            obj = json.loads(line)
            keywords = [_keyword_from_obj(k) for k in obj["keywords"]]
            clusters.append(DayCluster(
                date=day, cluster_id=obj["id"], articles=[],
                keywords=keywords, weight=obj["weight"], n_max=obj["n_max"],
            ))
    return clusters


def save_duration_clusters(clusters: list[DurationCluster], root: Path) -> Path:
    path = root / "duration"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(STORE_HEADER + "\n")
        for c in clusters:
            fh.write(json.dumps({
                "id": c.cluster_id,
                "weight": c.weight,
                "start": c.start_date.isoformat(),
                "end": c.end_date.isoformat(),
                "members": [[d.date.isoformat(), d.cluster_id]
                            for d in c.day_clusters],
                "keywords": [_keyword_obj(k) for k in c.keywords],
            }, ensure_ascii=False) + "\n")
    return path


def load_duration_clusters(path: Path) -> list[DurationCluster]:
    clusters = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != STORE_HEADER:
            raise ValueError(f"unrecognized cluster store header: {header!r}")
        for line in fh:
            obj = json.loads(line)
            cluster = DurationCluster(
                cluster_id=obj["id"], day_clusters=[],
                keywords=[_keyword_from_obj(k) for k in obj["keywords"]],
                weight=obj["weight"],
                start_date=date.fromisoformat(obj["start"]),
                end_date=date.fromisoformat(obj["end"]),
            )
            clusters.append(cluster)
    return clusters
