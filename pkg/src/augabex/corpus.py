"""Corpus ingestion, deterministic sentence segmentation and corpus statistics."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .entities import EntityAnnotation

__all__ = [
    "CaseRecord",
    "Sentence",
    "SegmentedText",
    "CorpusStats",
    "CorpusFormatError",
    "load_corpus",
    "segment",
    "tokenize",
    "corpus_stats",
]


class CorpusFormatError(ValueError):
    """Raised for malformed or inconsistent corpus input."""


@dataclass(frozen=True)
class Sentence:
    index: int
    raw: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class SegmentedText:
    sentences: tuple[Sentence, ...]
    word_count: int

    def __post_init__(self):
        for i, s in enumerate(self.sentences):
            if s.index != i:
                raise ValueError(f"sentence indices not contiguous at {i}")
            if not s.tokens:
                raise ValueError(f"sentence {i} has no tokens")
        if self.word_count != sum(len(s.tokens) for s in self.sentences):
            raise ValueError("word_count inconsistent with token totals")


@dataclass(frozen=True)
class CaseRecord:
    id: str
    dataset: str
    doc_text: str
    oag_text: str
    entities_doc: tuple[EntityAnnotation, ...] | None = None
    entities_oag: tuple[EntityAnnotation, ...] | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("record id must be nonempty")
        if not self.doc_text or not self.oag_text:
            raise ValueError(f"record {self.id!r}: doc and summary text must be nonempty")


@dataclass(frozen=True)
class CorpusStats:
    n_docs: int
    avg_wc_doc: float
    avg_wc_sum: float
    avg_sc_doc: float
    avg_sc_sum: float
    avg_cr: float


# Legal abbreviations that do not end a sentence when followed by a period.
# Matched case-insensitively against the word immediately before the period.
_ABBREVIATIONS = frozenset(
    {
        "no", "nos", "vs", "v", "rs", "sec", "secs", "art", "arts",
        "dr", "mr", "mrs", "ms", "ors", "anr", "hon'ble", "co", "ltd",
        "pvt", "cl", "viz", "etc", "i.e", "e.g", "j", "jj",
    }
)

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")
_PARA_RE = re.compile(r"\n\s*\n")
_BOUNDARY_RE = re.compile(r"[.?!]+(?=\s+[A-Z0-9])")
_LAST_WORD_RE = re.compile(r"([\w'.]+)$")


def tokenize(text: str) -> tuple[str, ...]:
    """Maximal alphanumeric runs, lowercased."""
    return tuple(m.group(0).lower() for m in _TOKEN_RE.finditer(text))


def _split_paragraph(para: str) -> list[str]:
    pieces = []
    start = 0
    for m in _BOUNDARY_RE.finditer(para):
        before = para[: m.start()]
        lw = _LAST_WORD_RE.search(before)
        if lw is not None:
            word = lw.group(1).rstrip(".").lower()
            if word in _ABBREVIATIONS:
                continue
        pieces.append(para[start : m.end()].strip())
        start = m.end()
    tail = para[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def segment(text: str) -> SegmentedText:
    """Deterministic rule-based sentence segmentation.

    Boundaries occur at ``.?!`` followed by whitespace and an uppercase
    letter or digit, unless the preceding word is a known legal
    abbreviation.  Blank lines always end a sentence.  Sentences left
    with no tokens are dropped and indices re-packed.
    """
    sentences: list[Sentence] = []
    for para in _PARA_RE.split(text):
        if not para.strip():
            continue
        for raw in _split_paragraph(para):
            tokens = tokenize(raw)
            if tokens:
                sentences.append(Sentence(len(sentences), raw, tokens))
    return SegmentedText(tuple(sentences), sum(len(s.tokens) for s in sentences))


def _parse_entities(raw, record_id: str, side: str) -> tuple[EntityAnnotation, ...]:
    out = []
    for i, obj in enumerate(raw):
        try:
            span = None
            if obj.get("start") is not None and obj.get("end") is not None:
                span = (int(obj["start"]), int(obj["end"]))
            out.append(EntityAnnotation(label=obj["label"], surface=obj["text"], span=span))
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusFormatError(
                f"record {record_id!r}: bad {side} entity at position {i}: {exc}"
            ) from exc
    return tuple(out)


def load_corpus(path) -> list[CaseRecord]:
    """Load a corpus-jsonl file: one record per line, ids unique."""
    path = Path(path)
    records: list[CaseRecord] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            try:
                rec = CaseRecord(
                    id=obj["id"],
                    dataset=obj["dataset"],
                    doc_text=obj["doc"],
                    oag_text=obj["summary"],
                    entities_doc=(
                        _parse_entities(obj["entities_doc"], obj["id"], "doc")
                        if "entities_doc" in obj
                        else None
                    ),
                    entities_oag=(
                        _parse_entities(obj["entities_summary"], obj["id"], "summary")
                        if "entities_summary" in obj
                        else None
                    ),
                )
            except KeyError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: missing field {exc}") from exc
            except ValueError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: {exc}") from exc
            if rec.id in seen:
                raise CorpusFormatError(f"{path}:{lineno}: duplicate record id {rec.id!r}")
            seen.add(rec.id)
            records.append(rec)
    return records


def corpus_stats(records: list[CaseRecord]) -> CorpusStats:
    """Table-1-style statistics: mean word/sentence counts and compression ratio."""
    if not records:
        raise ValueError("corpus_stats requires at least one record")
    wc_doc, wc_sum, sc_doc, sc_sum, crs = [], [], [], [], []
    for rec in records:
        doc = segment(rec.doc_text)
        oag = segment(rec.oag_text)
        if oag.word_count == 0:
            raise ValueError(f"record {rec.id!r}: summary has zero words")
        wc_doc.append(doc.word_count)
        wc_sum.append(oag.word_count)
        sc_doc.append(len(doc.sentences))
        sc_sum.append(len(oag.sentences))
        crs.append(doc.word_count / oag.word_count)
    n = len(records)
    return CorpusStats(
        n_docs=n,
        avg_wc_doc=sum(wc_doc) / n,
        avg_wc_sum=sum(wc_sum) / n,
        avg_sc_doc=sum(sc_doc) / n,
        avg_sc_sum=sum(sc_sum) / n,
        avg_cr=sum(crs) / n,
    )
