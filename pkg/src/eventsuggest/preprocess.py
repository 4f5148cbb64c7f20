"""Same-day dedup, keyword cleaning and named-entity annotation.

Turns parsed metadata into the five-attribute record the clustering
stages operate on: title, description, keywords, date, named entities.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from datetime import date
from importlib import resources
from pathlib import Path
from urllib.parse import urlparse

from .ingest import ArticleMeta

SIMHASH_BITS = 2048
_CHUNKS = SIMHASH_BITS // 64


@dataclass(frozen=True)
class Fingerprint:
    bits: int

    def hamming(self, other: "Fingerprint") -> int:
        return (self.bits ^ other.bits).bit_count()


def _token_hash(token: str) -> int:
    """2048-bit token hash: 32 concatenated salted 64-bit blake2b digests."""
    raw = token.encode("utf-8")
    parts = bytearray()
    for i in range(_CHUNKS):
        parts += hashlib.blake2b(
            raw, digest_size=8, salt=i.to_bytes(8, "little"), person=b"simhash"
        ).digest()
    return int.from_bytes(parts, "big")


def simhash(title: str) -> Fingerprint:
    """Bag-of-tokens simhash over the case-folded title."""
    counts: dict[str, int] = {}
    for token in title.casefold().split():
        counts[token] = counts.get(token, 0) + 1
    if not counts:
        raise ValueError("simhash requires a non-empty title")
    acc = [0] * SIMHASH_BITS
    for token, weight in counts.items():
        h = _token_hash(token)
        for bit in range(SIMHASH_BITS):
            if (h >> bit) & 1:
                acc[bit] += weight
            else:
                acc[bit] -= weight
    bits = 0
    for bit in range(SIMHASH_BITS):
        if acc[bit] > 0:
            bits |= 1 << bit
    return Fingerprint(bits)


def dedupe_day(articles: list[ArticleMeta],
               hamming_threshold: int = 0) -> list[ArticleMeta]:
    """Keep the first article of each same-fingerprint bucket, input order.

    hamming_threshold > 0 additionally folds near-identical fingerprints
    into the first bucket within that distance (off by default: the
    dedup contract is exact-equality bucketing).
    """
    survivors: list[ArticleMeta] = []
    buckets: list[Fingerprint] = []
    seen_exact: set[int] = set()
    for article in articles:
        fp = simhash(article.title)
        if fp.bits in seen_exact:
            continue
        if hamming_threshold > 0 and any(
            fp.hamming(b) <= hamming_threshold for b in buckets
        ):
            seen_exact.add(fp.bits)
            continue
        seen_exact.add(fp.bits)
        buckets.append(fp)
        survivors.append(article)
    return survivors


def _load_lines(name: str) -> frozenset[str]:
    text = resources.files("eventsuggest.data").joinpath(name).read_text("utf-8")
    return frozenset(l.strip().casefold() for l in text.splitlines() if l.strip())


def _load_lexicon_text(text: str) -> dict[str, tuple[str, ...]]:
    lex: dict[str, tuple[str, ...]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or "\t" not in line:
            continue
        token, tags = line.split("\t", 1)
        lex[token.casefold()] = tuple(tags.split())
    return lex


@dataclass
class AnnotatorConfig:
    """Wordlists driving cleaning and entity annotation.

    generic_news_suffix reproduces removal of compound generics like
    "latest news" / "bihar news": any multi-token keyword ending in the
    token "news" counts as generic.
    """

    generic_keywords: frozenset[str]
    entity_gazetteer: frozenset[str] = frozenset()
    noun_verb_lexicon: dict[str, tuple[str, ...]] = field(default_factory=dict)
    generic_news_suffix: bool = True
    split_semicolons: bool = False

    @classmethod
    def default(cls, gazetteer: frozenset[str] = frozenset()) -> "AnnotatorConfig":
        lex_text = resources.files("eventsuggest.data").joinpath(
            "pos_lexicon.txt").read_text("utf-8")
        return cls(
            generic_keywords=_load_lines("generic_keywords.txt"),
            entity_gazetteer=frozenset(g.casefold() for g in gazetteer),
            noun_verb_lexicon=_load_lexicon_text(lex_text),
        )

    @classmethod
    def from_files(cls, generic: Path | None = None, gazetteer: Path | None = None,
                   lexicon: Path | None = None) -> "AnnotatorConfig":
        cfg = cls.default()
        if generic is not None:
            cfg.generic_keywords = frozenset(
                l.strip().casefold()
                for l in generic.read_text("utf-8").splitlines() if l.strip()
            )
        if gazetteer is not None:
            cfg.entity_gazetteer = frozenset(
                l.strip().casefold()
                for l in gazetteer.read_text("utf-8").splitlines() if l.strip()
            )
        if lexicon is not None:
            cfg.noun_verb_lexicon = _load_lexicon_text(lexicon.read_text("utf-8"))
        return cfg


@dataclass(frozen=True)
class CleanArticle:
    title: str
    description: str
    keywords: tuple[str, ...]
    date: date
    named_entities: frozenset[str]
    url: str = ""


_HAS_ALPHA = re.compile(r"[A-Za-z]")
_URL_SHAPE = re.compile(
    r"""^(https?://\S+|www\.\S+|[\w-]+(\.[\w-]+)*\.[A-Za-z]{2,6}(/\S*)?)$""",
    re.IGNORECASE,
)


def url_categories(url: str) -> set[str]:
    """Path segments between host and article slug, as category names."""
    path = urlparse(url).path
    segments = [s for s in path.split("/") if s]
    if segments:
        segments = segments[:-1]  # final segment is the article slug
    return {s.casefold().replace("-", " ") for s in segments}


def _is_noun_or_verb(token: str, cfg: AnnotatorConfig) -> bool:
    tags = cfg.noun_verb_lexicon.get(token.casefold())
    if tags is not None:
        return any(t.upper().startswith(("NN", "VB")) or t.lower() in ("noun", "verb")
                   for t in tags)
    if token.casefold().endswith("ly"):
        return False
    # Unknown tokens default to noun: news keywords are mostly nominal.
    return True


def clean_keywords(meta: ArticleMeta, cfg: AnnotatorConfig) -> list[str]:
    """Five-step keyword cleaner; preserves input order, never adds."""
    categories = url_categories(meta.url)
    out: list[str] = []
    for kw in meta.keywords_raw:
        norm = kw.casefold()
        if not _HAS_ALPHA.search(kw):
            continue
        if norm in cfg.generic_keywords:
            continue
        if cfg.generic_news_suffix and " " in norm and norm.split()[-1] == "news":
            continue
        if _URL_SHAPE.match(kw.strip()):
            continue
        if norm in categories:
            continue
        parts = kw.split()
        if len(parts) == 1 and not _is_noun_or_verb(parts[0], cfg):
            continue
        out.append(kw)
    return out


_SENTENCE_SPLIT = re.compile(r"[.!?]+")
_EDGE_PUNCT = re.compile(r"^[^\w]+|[^\w]+$")


def _word_tokens(text: str) -> list[str]:
    words = []
    for raw in text.split():
        w = _EDGE_PUNCT.sub("", raw)
        if w:
            words.append(w)
    return words


def _cap_runs(text: str) -> set[str]:
    """Maximal runs of capitalized tokens, excluding sentence-initial tokens."""
    entities: set[str] = set()
    for sentence in _SENTENCE_SPLIT.split(text):
        words = _word_tokens(sentence)
        run: list[str] = []
        for i, w in enumerate(words):
            capitalized = w[0].isupper() and i > 0
            if capitalized:
                run.append(w)
            else:
                if run:
                    entities.add(" ".join(run).casefold())
                run = []
        if run:
            entities.add(" ".join(run).casefold())
    return entities


def _gazetteer_matches(text: str, phrases: dict[tuple[str, ...], str],
                       max_len: int) -> set[str]:
    tokens = [w.casefold() for w in _word_tokens(text)]
    found: set[str] = set()
    i = 0
    while i < len(tokens):
        matched = 0
        for length in range(min(max_len, len(tokens) - i), 0, -1):
            phrase = tuple(tokens[i:i + length])
            if phrase in phrases:
                found.add(phrases[phrase])
                matched = length
                break
        i += matched if matched else 1
    return found


def extract_named_entities(title: str, description: str, keywords: list[str],
                           cfg: AnnotatorConfig) -> frozenset[str]:
    """Gazetteer longest-match plus capitalization heuristic; casefolded."""
    phrases: dict[tuple[str, ...], str] = {}
    max_len = 1
    for entry in cfg.entity_gazetteer:
        toks = tuple(entry.casefold().split())
        if toks:
            phrases[toks] = entry.casefold()
            max_len = max(max_len, len(toks))

    entities: set[str] = set()
    if phrases:
        for text in [title, description, *keywords]:
            entities |= _gazetteer_matches(text, phrases, max_len)
    entities |= _cap_runs(title)
    entities |= _cap_runs(description)
    return frozenset(entities)


def preprocess_day(articles: list[ArticleMeta],
                   cfg: AnnotatorConfig) -> list[CleanArticle]:
    """Dedup one day's articles and produce five-attribute records."""
    cleaned: list[CleanArticle] = []
    for meta in dedupe_day(articles):
        keywords = clean_keywords(meta, cfg)
        entities = extract_named_entities(meta.title, meta.description,
                                          keywords, cfg)
        cleaned.append(CleanArticle(
            title=meta.title,
            description=meta.description,
            keywords=tuple(keywords),
            date=meta.published_date,
            named_entities=entities,
            url=meta.url,
        ))
    return cleaned
