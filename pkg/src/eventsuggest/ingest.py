"""Parse news-article HTML head sections into article metadata tuples.

Only five meta keys matter: news_keywords, keywords, og:title,
og:description and article:published_time. Scanning is tolerant regex
matching over the head markup, not strict HTML parsing, so one broken
tag never kills a record.
"""

from __future__ import annotations

import html
import json
import re
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path
from typing import Iterator


class MissingTitle(ValueError):
    """Neither og:title nor a <title> element is present."""


class FormatError(ValueError):
    """More than half the corpus lines failed to parse."""


@dataclass(frozen=True)
class RawPage:
    url: str
    fetched_date: date
    head_html: str
    source_name: str | None = None


@dataclass(frozen=True)
class ArticleMeta:
    url: str
    title: str
    description: str
    keywords_raw: tuple[str, ...]
    published_date: date
    source_name: str | None = None
    title_from_fallback: bool = False
    date_from_fallback: bool = False


_META_TAG = re.compile(r"<meta\b[^>]*>", re.IGNORECASE | re.DOTALL)
_ATTR = re.compile(
    r"""([a-zA-Z:_-]+)\s*=\s*("([^"]*)"|'([^']*)')""", re.DOTALL
)
_TITLE_EL = re.compile(r"<title[^>]*>(.*?)</title>", re.IGNORECASE | re.DOTALL)

_WANTED_KEYS = {"news_keywords", "keywords", "og:title", "og:description",
                "article:published_time"}


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def _meta_values(head_html: str) -> dict[str, list[str]]:
    """key -> values for the five meta keys we care about, document order."""
    found: dict[str, list[str]] = {}
    for tag in _META_TAG.findall(head_html):
        attrs = {}
        for m in _ATTR.finditer(tag):
            name = m.group(1).casefold()
            value = m.group(3) if m.group(3) is not None else m.group(4)
            attrs[name] = value
        key = (attrs.get("name") or attrs.get("property") or "").casefold()
        if key in _WANTED_KEYS and "content" in attrs:
            content = _normalize_ws(html.unescape(attrs["content"]))
            found.setdefault(key, []).append(content)
    return found


def split_keywords(value: str) -> list[str]:
    """Comma-split a keywords meta value, trimming whitespace."""
    return [_normalize_ws(part) for part in value.split(",") if _normalize_ws(part)]


def union_keywords(news_keywords: list[str], keywords: list[str]) -> list[str]:
    """Order-stable union: news_keywords entries first, then unseen keywords."""
    out: list[str] = []
    seen: set[str] = set()
    for kw in news_keywords + keywords:
        norm = kw.casefold()
        if norm not in seen:
            seen.add(norm)
            out.append(kw)
    return out


def parse_head(page: RawPage) -> ArticleMeta:
    """Extract the <title, description, keywords, date> tuple from a head."""
    meta = _meta_values(page.head_html)

    title = ""
    title_fallback = False
    if meta.get("og:title"):
        title = meta["og:title"][0]
    else:
        m = _TITLE_EL.search(page.head_html)
        if m:
            title = _normalize_ws(html.unescape(m.group(1)))
            title_fallback = True
    if not title:
        raise MissingTitle(page.url)

    description = meta["og:description"][0] if meta.get("og:description") else ""

    news_kw: list[str] = []
    for value in meta.get("news_keywords", []):
        news_kw += split_keywords(value)
    plain_kw: list[str] = []
    for value in meta.get("keywords", []):
        plain_kw += split_keywords(value)
    keywords = union_keywords(news_kw, plain_kw)

    published = page.fetched_date
    date_fallback = False
    if meta.get("article:published_time"):
        raw = meta["article:published_time"][0]
        parsed = _parse_date(raw)
        if parsed is not None:
            published = parsed
        else:
            date_fallback = True

    return ArticleMeta(
        url=page.url,
        title=title,
        description=description,
        keywords_raw=tuple(keywords),
        published_date=published,
        source_name=page.source_name,
        title_from_fallback=title_fallback,
        date_from_fallback=date_fallback,
    )


def _parse_date(raw: str) -> date | None:
    raw = raw.strip()
    for candidate in (raw, raw[:19], raw[:10]):
        try:
            return datetime.fromisoformat(candidate).date()
        except ValueError:
            continue
    return None


@dataclass
class CorpusReader:
    """Line-delimited corpus reader with per-line shape auto-detection."""

    path: Path
    skipped: int = 0
    date_fallbacks: int = 0
    lines_seen: int = field(default=0)

    def __iter__(self) -> Iterator[ArticleMeta]:
        malformed = 0
        total = 0
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                total += 1
                self.lines_seen = total
                record = self._parse_line(line)
                if record is None:
                    malformed += 1
                    self.skipped = malformed
                    continue
                yield record
        if total and malformed * 2 > total:
            raise FormatError(
                f"{malformed}/{total} lines malformed in {self.path}"
            )

    def _parse_line(self, line: str) -> ArticleMeta | None:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            return None
        if not isinstance(obj, dict):
            return None
        try:
            if "head_html" in obj:
                page = RawPage(
                    url=obj["url"],
                    source_name=obj.get("source"),
                    fetched_date=date.fromisoformat(obj["fetched_date"]),
                    head_html=obj["head_html"],
                )
                meta = parse_head(page)
                if meta.date_from_fallback:
                    self.date_fallbacks += 1
                return meta
            return ArticleMeta(
                url=obj["url"],
                title=obj["title"],
                description=obj.get("description", ""),
                keywords_raw=tuple(union_keywords(list(obj.get("keywords", [])), [])),
                published_date=date.fromisoformat(obj["published"]),
                source_name=obj.get("source"),
            )
        except (KeyError, TypeError, ValueError, MissingTitle):
            return None


def load_corpus(path: str | Path) -> CorpusReader:
    """Stream ArticleMeta records from a line-delimited corpus file."""
    p = Path(path)
    if not p.is_file():
        raise IOError(f"corpus file not readable: {p}")
    return CorpusReader(path=p)
