import random
from datetime import date, timedelta

import pytest

from eventsuggest import events
from eventsuggest.events import (
    DayCluster,
    DurationCluster,
    RankedKeyword,
    cluster_day,
    cluster_duration,
    rank_day_keyword,
    rank_duration,
)
from eventsuggest.preprocess import CleanArticle


def article(title="", description="", keywords=(), entities=(), day="2016-03-01",
            url=""):
    return CleanArticle(
        title=title, description=description, keywords=tuple(keywords),
        date=date.fromisoformat(day), named_entities=frozenset(entities),
        url=url,
    )


def day_cluster(articles, n_max, day="2016-03-01"):
    return DayCluster(date=date.fromisoformat(day), cluster_id=0,
                      articles=articles, n_max=n_max)


# --- keyword rank anchors ---

def test_entity_keyword_rank_anchor():
    a = article(entities={"united nations security council"},
                keywords=["united nations security council"])
    cluster = day_cluster([a], n_max=4)
    assert rank_day_keyword("united nations security council", cluster) == \
        pytest.approx(0.1, abs=1e-15)


def test_non_entity_keyword_rank_anchor():
    # all 4 keyword tokens in title/description; "north korea" is an
    # entity, so tokens north and korea are also entity tokens
    a = article(
        title="north korea conducts nuclear test",
        description="sanctions loom after test",
        keywords=["north korea nuclear test"],
        entities={"north korea"},
    )
    cluster = day_cluster([a], n_max=4)
    assert rank_day_keyword("north korea nuclear test", cluster) == \
        pytest.approx(0.6, abs=1e-15)


def test_no_overlap_keyword_rank_zero():
    a = article(title="unrelated words entirely", keywords=["orphan keyword"])
    cluster = day_cluster([a], n_max=2)
    assert rank_day_keyword("orphan keyword", cluster) == 0.0


def test_entity_rank_frequency_invariant():
    a = article(title="x", entities={"nitish kumar"}, keywords=["nitish kumar"])
    one = day_cluster([a], n_max=2)
    three = day_cluster([a, a, a], n_max=2)
    r1 = rank_day_keyword("nitish kumar", one)
    r3 = rank_day_keyword("nitish kumar", three)
    assert r1 == r3 == pytest.approx(0.1, abs=1e-15)


def test_non_entity_rank_grows_with_duplication():
    a = article(title="bihar polls counting", keywords=["bihar polls"])
    one = day_cluster([a], n_max=2)
    two = day_cluster([a, a], n_max=2)
    assert rank_day_keyword("bihar polls", two) == \
        pytest.approx(2 * rank_day_keyword("bihar polls", one), rel=1e-12)


def test_rank_monotone_in_overlap():
    base = article(title="alpha beta", keywords=["alpha beta gamma"])
    more = article(title="alpha beta gamma", keywords=["alpha beta gamma"])
    c1 = day_cluster([base], n_max=3)
    c2 = day_cluster([more], n_max=3)
    assert rank_day_keyword("alpha beta gamma", c2) >= \
        rank_day_keyword("alpha beta gamma", c1)


def test_entity_match_is_exact_not_substring():
    # keyword strictly contains an entity but does not equal it:
    # the overlap formula applies, not the frequency-invariant entity rank
    a = article(title="pathankot attack probe continues today",
                entities={"pathankot"},
                keywords=["pathankot attack probe"])
    cluster = day_cluster([a], n_max=3)
    rank = rank_day_keyword("pathankot attack probe", cluster)
    # 3 rel-token hits + 1 entity-token hit, times 3/3
    assert rank == pytest.approx(0.4, abs=1e-12)


def test_keyword_not_in_cluster():
    cluster = day_cluster([article(keywords=["a b"])], n_max=1)
    events._rank_cluster(cluster)
    with pytest.raises(events.KeywordNotInCluster):
        cluster.keyword_rank("missing keyword")


# --- day clustering ---

def test_fewer_than_three_articles_no_clusters():
    arts = [article(title=f"same event tokens {i}", keywords=["same event"])
            for i in range(2)]
    assert cluster_day(arts) == []


def test_two_disjoint_events():
    event_a = [article(title="alpha burst storm warning",
                       description="alpha burst storm",
                       keywords=["alpha burst", "storm warning"],
                       url=f"https://x/a{i}")
               for i in range(5)]
    event_b = [article(title="market crash shares plunge",
                       description="market crash shares",
                       keywords=["market crash", "shares plunge"],
                       url=f"https://x/b{i}")
               for i in range(5)]
    clusters = cluster_day(event_a + event_b)
    assert len(clusters) == 2
    sizes = sorted(len(c.articles) for c in clusters)
    assert sizes == [5, 5]


def _background(n):
    # distinct-vocabulary outliers keep the shared terms' idf above zero
    return [article(title=f"filler{i} noise{i} other{i}",
                    keywords=[f"filler{i} noise{i}"], url=f"https://x/f{i}")
            for i in range(n)]


def test_cluster_weight_is_rank_sum():
    arts = [article(title="alpha beta gamma", description="alpha beta",
                    keywords=["alpha beta", "gamma delta"])
            for _ in range(4)] + _background(3)
    clusters = cluster_day(arts)
    assert len(clusters) == 1
    c = clusters[0]
    assert c.weight == pytest.approx(sum(k.rank for k in c.keywords), rel=1e-12)
    assert c.n_max == max(k.n_k for k in c.keywords)


def test_keywords_sorted_rank_desc_then_lex():
    arts = [article(title="alpha beta gamma delta",
                    keywords=["alpha beta", "gamma delta", "zeta"])
            for _ in range(4)] + _background(3)
    c = cluster_day(arts)[0]
    ranks = [k.rank for k in c.keywords]
    assert ranks == sorted(ranks, reverse=True)
    for a, b in zip(c.keywords, c.keywords[1:]):
        if a.rank == b.rank:
            assert a.surface < b.surface


# --- duration clustering ---

def _mk_day_cluster(day, keywords_ranks, cid=0):
    kws = [RankedKeyword(surface=s, tokens=tuple(s.split()), n_k=len(s.split()),
                         rank=r, is_entity=False)
           for s, r in keywords_ranks]
    kws.sort(key=lambda k: (-k.rank, k.surface))
    return DayCluster(date=date.fromisoformat(day), cluster_id=cid, articles=[],
                      keywords=kws, weight=sum(r for _, r in keywords_ranks),
                      n_max=max((k.n_k for k in kws), default=1))


def test_single_day_cluster_no_duration():
    out = cluster_duration([_mk_day_cluster("2016-01-01", [("alpha beta", 1.0)])])
    assert out == []


def test_same_event_three_days_one_duration_cluster():
    days = ["2016-01-01", "2016-01-02", "2016-01-03"]
    clusters = [_mk_day_cluster(d, [("alpha beta", 1.0), ("alpha gamma", 0.5)])
                for d in days]
    # lone cluster with disjoint vocabulary keeps idf above zero; it has no
    # neighbour so it stays noise
    clusters.append(_mk_day_cluster("2016-01-04", [("omega psi", 1.0)], cid=9))
    out = cluster_duration(clusters)
    assert len(out) == 1
    assert len(out[0].day_clusters) == 3
    assert out[0].start_date == date(2016, 1, 1)
    assert out[0].end_date == date(2016, 1, 3)


def test_two_disjoint_events_two_duration_clusters():
    days = ["2016-01-01", "2016-01-02", "2016-01-03"]
    a = [_mk_day_cluster(d, [("alpha beta", 1.0)], cid=0) for d in days]
    b = [_mk_day_cluster(d, [("gamma delta", 1.0)], cid=1) for d in days]
    out = cluster_duration(a + b)
    assert len(out) == 2


# --- duration rank, weight and date span ---

def test_rank_duration_single_member():
    d = _mk_day_cluster("2016-11-01", [("alpha beta", 0.6), ("gamma", 0.2)])
    cluster = DurationCluster(cluster_id=0, day_clusters=[d])
    rank_duration(cluster)
    assert {k.surface: k.rank for k in cluster.keywords} == \
        {"alpha beta": 0.6, "gamma": 0.2}
    assert cluster.weight == pytest.approx(0.8, rel=1e-12)
    assert cluster.start_date == cluster.end_date == date(2016, 11, 1)


def test_rank_duration_double_count():
    d1 = _mk_day_cluster("2016-11-01", [("alpha beta", 0.6)])
    d2 = _mk_day_cluster("2016-11-05", [("alpha beta", 0.4)])
    cluster = DurationCluster(cluster_id=0, day_clusters=[d1, d2])
    rank_duration(cluster)
    assert cluster.keywords[0].rank == pytest.approx(1.0, rel=1e-12)
    # the keyword appears in 2 members, contributing 2 * 1.0 to weight
    assert cluster.weight == pytest.approx(2.0, rel=1e-12)
    assert cluster.start_date == date(2016, 11, 1)
    assert cluster.end_date == date(2016, 11, 5)


def test_rank_duration_distinct_flag():
    d1 = _mk_day_cluster("2016-11-01", [("alpha beta", 0.6)])
    d2 = _mk_day_cluster("2016-11-05", [("alpha beta", 0.4)])
    cluster = DurationCluster(cluster_id=0, day_clusters=[d1, d2])
    rank_duration(cluster, distinct_keyword_weight=True)
    assert cluster.weight == pytest.approx(1.0, rel=1e-12)


def oracle_duration(day_clusters):
    """Straightforward independent re-implementation of the duration math."""
    ranks = {}
    for dc in day_clusters:
        for kw in dc.keywords:
            ranks[kw.surface] = ranks.get(kw.surface, 0.0) + kw.rank
    weight = sum(ranks[kw.surface] for dc in day_clusters for kw in dc.keywords)
    start = min(dc.date for dc in day_clusters)
    end = max(dc.date for dc in day_clusters)
    return ranks, weight, start, end


def test_duration_oracle_random():
    rng = random.Random(4242)
    vocabulary = [f"kw{i} word" for i in range(12)]
    for _ in range(50):
        members = []
        for m in range(rng.randint(1, 6)):
            day = date(2016, 1, 1) + timedelta(days=rng.randint(0, 60))
            chosen = rng.sample(vocabulary, rng.randint(1, 8))
            members.append(_mk_day_cluster(
                day.isoformat(),
                [(s, round(rng.uniform(0.05, 3.0), 6)) for s in chosen]))
        cluster = DurationCluster(cluster_id=0, day_clusters=members)
        rank_duration(cluster)
        ranks, weight, start, end = oracle_duration(members)
        assert {k.surface: k.rank for k in cluster.keywords} == ranks
        assert cluster.weight == pytest.approx(weight, rel=1e-12)
        assert (cluster.start_date, cluster.end_date) == (start, end)


def test_weight_monotone_in_members():
    d1 = _mk_day_cluster("2016-01-01", [("alpha beta", 0.5)])
    d2 = _mk_day_cluster("2016-01-02", [("alpha beta", 0.5)])
    small = DurationCluster(cluster_id=0, day_clusters=[d1])
    big = DurationCluster(cluster_id=0, day_clusters=[d1, d2])
    rank_duration(small)
    rank_duration(big)
    assert big.weight > small.weight


# --- cluster store round trip ---

def test_day_store_round_trip(tmp_path):
    arts = [article(title="alpha beta gamma", description="alpha beta",
                    keywords=["alpha beta", "gamma delta"])
            for _ in range(4)] + _background(3)
    clusters = cluster_day(arts)
    path = events.save_day_clusters(clusters, tmp_path)
    loaded = events.load_day_clusters(path)
    assert len(loaded) == len(clusters)
    assert loaded[0].keywords == clusters[0].keywords
    assert loaded[0].weight == clusters[0].weight
    assert loaded[0].date == clusters[0].date


def test_duration_store_round_trip(tmp_path):
    d1 = _mk_day_cluster("2016-11-01", [("alpha beta", 0.6)])
    d2 = _mk_day_cluster("2016-11-05", [("alpha beta", 0.4)])
    cluster = DurationCluster(cluster_id=3, day_clusters=[d1, d2])
    rank_duration(cluster)
    path = events.save_duration_clusters([cluster], tmp_path)
    loaded = events.load_duration_clusters(path)
    assert loaded[0].cluster_id == 3
    assert loaded[0].keywords == cluster.keywords
    assert loaded[0].weight == cluster.weight
    assert (loaded[0].start_date, loaded[0].end_date) == \
        (cluster.start_date, cluster.end_date)
