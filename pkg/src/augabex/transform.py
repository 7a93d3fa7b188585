"""Two-stage OAG-to-TEG transformation.

Stage 1 picks, for every abstractive-summary sentence, the top-k document
sentences by average ROUGE score and pools them into a candidate set.
Stage 2 greedily applies maximal marginal relevance over the pool until the
summary reaches the abstractive summary's word count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .corpus import CaseRecord, SegmentedText, segment
from .entities import extract_pattern_entities, prov_recall
from .rouge import avg_rouge

__all__ = [
    "PipelineConfig",
    "Candidate",
    "CandidateSet",
    "ExtractiveSummary",
    "select_candidates",
    "mmr_select",
    "transform_summary",
    "sweep_k",
]


_TIE_EPS = 1e-12


@dataclass(frozen=True)
class PipelineConfig:
    k: int = 2
    mmr_lambda: float = 0.5

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.mmr_lambda <= 1.0:
            raise ValueError("lambda must be in [0, 1]")


@dataclass(frozen=True)
class Candidate:
    doc_index: int
    raw: str
    tokens: tuple[str, ...]
    vector: tuple[int, ...]  # term frequencies over the candidate-set vocabulary


@dataclass(frozen=True)
class CandidateSet:
    members: tuple[Candidate, ...]
    vocab: tuple[str, ...]
    # OAG sentence index -> its top-k (doc index, avg_rouge score), best first
    provenance: dict[int, tuple[tuple[int, float], ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class ExtractiveSummary:
    selected: tuple[int, ...]  # doc sentence indices in document order
    text: str
    word_count: int
    trace: tuple[tuple[int, float], ...]  # (doc index, score at choice time) in pick order


def _cosine(a, b) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


def select_candidates(doc: SegmentedText, oag: SegmentedText, k: int) -> CandidateSet:
    """Stage 1: pool the top-k avg-ROUGE document sentences per OAG sentence."""
    if not doc.sentences or not oag.sentences:
        raise ValueError("document and summary must both have sentences")
    if k < 1:
        raise ValueError("k must be >= 1")

    provenance: dict[int, tuple[tuple[int, float], ...]] = {}
    order: list[int] = []
    seen: set[int] = set()
    for osent in oag.sentences:
        scored = sorted(
            ((avg_rouge(d.tokens, osent.tokens), d.index) for d in doc.sentences),
            key=lambda t: (-t[0], t[1]),
        )[:k]
        provenance[osent.index] = tuple((idx, score) for score, idx in scored)
        for _, idx in scored:
            if idx not in seen:
                seen.add(idx)
                order.append(idx)

    vocab = sorted({t for idx in order for t in doc.sentences[idx].tokens})
    pos = {t: i for i, t in enumerate(vocab)}
    members = []
    for idx in order:
        sent = doc.sentences[idx]
        vec = [0] * len(vocab)
        for t in sent.tokens:
            vec[pos[t]] += 1
        members.append(Candidate(idx, sent.raw, sent.tokens, tuple(vec)))
    return CandidateSet(tuple(members), tuple(vocab), provenance)


def mmr_select(candidates: CandidateSet, mmr_lambda: float, budget: int) -> ExtractiveSummary:
    """Stage 2: greedy MMR selection until the word budget is reached.

    Each round scores every unselected candidate as
    ``lambda * cos(v, centroid) - (1 - lambda) * max cos(v, selected)``
    and takes the maximum, ties broken by lower document index.  Selection
    stops once the accumulated word count reaches the budget, so the last
    pick may overshoot by at most one sentence.
    """
    if not candidates.members:
        raise ValueError("candidate set is empty")
    if budget < 1:
        raise ValueError("budget must be >= 1")

    n = len(candidates.members)
    dim = len(candidates.vocab)
    centroid = [0.0] * dim
    for c in candidates.members:
        for i, x in enumerate(c.vector):
            centroid[i] += x
    centroid = [x / n for x in centroid]
    relevance = [_cosine(c.vector, centroid) for c in candidates.members]

    selected: list[int] = []  # positions into candidates.members
    trace: list[tuple[int, float]] = []
    words = 0
    while words < budget and len(selected) < n:
        best_pos, best_score = None, None
        for pos, cand in enumerate(candidates.members):
            if pos in selected:
                continue
            redundancy = max(
                (_cosine(cand.vector, candidates.members[s].vector) for s in selected),
                default=0.0,
            )
            score = mmr_lambda * relevance[pos] - (1.0 - mmr_lambda) * redundancy
            # Scores within _TIE_EPS are ties (float noise on mathematically
            # equal cosines); ties go to the lower document index.
            if (
                best_score is None
                or score > best_score + _TIE_EPS
                or (
                    score >= best_score - _TIE_EPS
                    and cand.doc_index < candidates.members[best_pos].doc_index
                )
            ):
                best_pos, best_score = pos, score
        selected.append(best_pos)
        chosen = candidates.members[best_pos]
        trace.append((chosen.doc_index, best_score))
        words += len(chosen.tokens)

    chosen = sorted((candidates.members[p] for p in selected), key=lambda c: c.doc_index)
    return ExtractiveSummary(
        selected=tuple(c.doc_index for c in chosen),
        text=" ".join(c.raw for c in chosen),
        word_count=words,
        trace=tuple(trace),
    )


def transform_summary(record: CaseRecord, cfg: PipelineConfig = PipelineConfig()) -> ExtractiveSummary:
    """Full pipeline for one record; budget is the OAG word count."""
    doc = segment(record.doc_text)
    oag = segment(record.oag_text)
    if not doc.sentences or not oag.sentences:
        raise ValueError(f"record {record.id!r}: empty document or summary after segmentation")
    candidates = select_candidates(doc, oag, cfg.k)
    return mmr_select(candidates, cfg.mmr_lambda, oag.word_count)


def sweep_k(
    records: list[CaseRecord], k_values: list[int], cfg: PipelineConfig = PipelineConfig()
) -> list[tuple[int, float]]:
    """Macro-averaged provision recall of the TEG summaries for each k.

    Provisions are found with the built-in pattern extractor; records whose
    OAG summary mentions no provision are excluded from the average.
    """
    if not k_values:
        raise ValueError("k_values must be nonempty")
    for k in k_values:
        if k < 1:
            raise ValueError("every k must be >= 1")
    rows = []
    for k in k_values:
        recalls = []
        for rec in records:
            teg = transform_summary(rec, PipelineConfig(k=k, mmr_lambda=cfg.mmr_lambda))
            r = prov_recall(
                extract_pattern_entities(rec.oag_text),
                extract_pattern_entities(teg.text),
            )
            if r is not None:
                recalls.append(r)
        rows.append((k, sum(recalls) / len(recalls) if recalls else float("nan")))
    return rows
