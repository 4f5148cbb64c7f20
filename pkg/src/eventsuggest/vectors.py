"""Tokenization, stemming, bag-of-words and TF-IDF weighting.

Vectors are sparse dicts keyed by dense integer term ids. The corpus for
day-level weighting is all articles published on one day; for the second
clustering level it is the set of day-cluster pseudo-documents in the
window.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from importlib import resources

from . import stemming

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


def _load_wordlist(name: str) -> frozenset[str]:
    text = resources.files("eventsuggest.data").joinpath(name).read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


STOPWORDS: frozenset[str] = _load_wordlist("stopwords.txt")


def simple_tokens(text: str) -> list[str]:
    """Case-folded tokens split on non-alphanumeric boundaries, no stemming."""
    return [t for t in _TOKEN_SPLIT.split(text.casefold()) if t]


def content_tokens(text: str) -> list[str]:
    """simple_tokens with stopwords removed (ranking-side token sets)."""
    return [t for t in simple_tokens(text) if t not in STOPWORDS]


def tokenize_stem(text: str, *, remove_stopwords: bool = True) -> list[str]:
    """Analysis pipeline: case-fold, split, drop stopwords, Porter-stem."""
    tokens = simple_tokens(text)
    if remove_stopwords:
        tokens = [t for t in tokens if t not in STOPWORDS]
    return [stemming.stem(t) for t in tokens]


class UnknownTerm(KeyError):
    """A bag-of-words term is absent from the corpus statistics."""


@dataclass
class TokenDictionary:
    """Bijective token <-> dense term-id map."""

    token_to_id: dict[str, int] = field(default_factory=dict)
    id_to_token: list[str] = field(default_factory=list)

    def add(self, token: str) -> int:
        tid = self.token_to_id.get(token)
        if tid is None:
            tid = len(self.id_to_token)
            self.token_to_id[token] = tid
            self.id_to_token.append(token)
        return tid

    def __len__(self) -> int:
        return len(self.id_to_token)


# A BowVector is a sparse {term_id: count} map with no zero counts;
# a TermVector is a sparse {term_id: weight} map with weights > 0.
BowVector = dict[int, int]
TermVector = dict[int, float]


@dataclass
class CorpusStats:
    """Document count and per-term document frequencies."""

    num_docs: int
    doc_freq: dict[int, int]


def bow_from_tokens(tokens: list[str], dictionary: TokenDictionary) -> BowVector:
    bow: BowVector = {}
    for token in tokens:
        tid = dictionary.add(token)
        bow[tid] = bow.get(tid, 0) + 1
    return bow


def article_tokens(title: str, description: str, keywords: list[str]) -> list[str]:
    """Token stream feeding an article's bag of words."""
    tokens = tokenize_stem(title)
    tokens += tokenize_stem(description)
    for kw in keywords:
        tokens += tokenize_stem(kw)
    return tokens


def build_bow(title: str, description: str, keywords: list[str],
              dictionary: TokenDictionary) -> BowVector:
    return bow_from_tokens(article_tokens(title, description, keywords), dictionary)


def corpus_stats(bows: list[BowVector]) -> CorpusStats:
    doc_freq: dict[int, int] = {}
    for bow in bows:
        for tid in bow:
            doc_freq[tid] = doc_freq.get(tid, 0) + 1
    return CorpusStats(num_docs=len(bows), doc_freq=doc_freq)


def tfidf(bow: BowVector, stats: CorpusStats, *, log_base: float | None = None) -> TermVector:
    """weight(t) = f(t,d) * log(N / n(t)); zero-weight terms are dropped."""
    out: TermVector = {}
    for tid, count in bow.items():
        df = stats.doc_freq.get(tid)
        if df is None:
            raise UnknownTerm(tid)
        w = count * math.log(stats.num_docs / df)
        if log_base is not None:
            w /= math.log(log_base)
        if w != 0.0:
            out[tid] = w
    return out
