"""Term-distribution metrics: Jensen-Shannon distance and smoothed KL-divergence."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import SegmentedText

__all__ = ["TermDistribution", "term_distribution", "union_vocab", "jsd", "kld"]


@dataclass(frozen=True)
class TermDistribution:
    support: tuple[str, ...]
    counts: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.support) != len(self.counts) or len(self.support) != len(self.probs):
            raise ValueError("support, counts and probs must align")
        if any(p < 0 for p in self.probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(self.probs) - 1.0) > 1e-9:
            raise ValueError("probabilities must sum to 1")


def union_vocab(*texts: SegmentedText) -> tuple[str, ...]:
    return tuple(sorted({t for text in texts for s in text.sentences for t in s.tokens}))


def term_distribution(
    text: SegmentedText, vocab: tuple[str, ...] | None = None
) -> TermDistribution:
    """Relative term frequencies, optionally zero-extended over a shared vocabulary."""
    if text.word_count == 0:
        raise ValueError("cannot build a term distribution from empty text")
    freq: dict[str, int] = {}
    for s in text.sentences:
        for t in s.tokens:
            freq[t] = freq.get(t, 0) + 1
    support = vocab if vocab is not None else tuple(sorted(freq))
    counts = tuple(freq.get(t, 0) for t in support)
    total = sum(counts)
    if total == 0:
        raise ValueError("text has no tokens inside the given vocabulary")
    return TermDistribution(support, counts, tuple(c / total for c in counts))


def jsd(p: TermDistribution, q: TermDistribution) -> float:
    """Jensen-Shannon distance with base-2 logs; bounded in [0, 1]."""
    if p.support != q.support:
        raise ValueError("distributions must share the same support")

    def _kl2(a, b):
        return sum(x * math.log2(x / y) for x, y in zip(a, b) if x > 0.0)

    m = [(x + y) / 2.0 for x, y in zip(p.probs, q.probs)]
    div = 0.5 * _kl2(p.probs, m) + 0.5 * _kl2(q.probs, m)
    return math.sqrt(max(div, 0.0))


def kld(summary_dist: TermDistribution, doc_dist: TermDistribution, alpha: float = 0.5) -> float:
    """KL-divergence of the summary from the document, natural log.

    Both sides are smoothed by adding ``alpha`` to every count before
    normalizing, so summary terms missing from the document stay finite.
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if summary_dist.support != doc_dist.support:
        raise ValueError("distributions must share the same support")

    def _smooth(counts):
        total = sum(counts) + alpha * len(counts)
        return [(c + alpha) / total for c in counts]

    p = _smooth(summary_dist.counts)
    q = _smooth(doc_dist.counts)
    return sum(x * math.log(x / y) for x, y in zip(p, q))
