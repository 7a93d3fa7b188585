"""ROUGE-1/2/L recall, precision and F1 over pre-tokenized sentences."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

__all__ = ["RougeScore", "rouge_n", "rouge_l", "avg_rouge"]


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f1: float

    @staticmethod
    def from_counts(overlap: int, n_ref: int, n_cand: int) -> "RougeScore":
        r = overlap / n_ref if n_ref else 0.0
        p = overlap / n_cand if n_cand else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return RougeScore(r, p, f)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    """Clipped (multiset) n-gram overlap, n in {1, 2}."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    cand = _ngrams(candidate, n)
    ref = _ngrams(reference, n)
    overlap = sum((cand & ref).values())
    return RougeScore.from_counts(overlap, sum(ref.values()), sum(cand.values()))


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    """Longest-common-subsequence overlap."""
    lcs = _lcs_length(candidate, reference)
    return RougeScore.from_counts(lcs, len(reference), len(candidate))


def avg_rouge(candidate: Sequence[str], reference: Sequence[str]) -> float:
    """Mean of ROUGE-1, ROUGE-2 and ROUGE-L F1; the stage-1 ranking score."""
    return (
        rouge_n(candidate, reference, 1).f1
        + rouge_n(candidate, reference, 2).f1
        + rouge_l(candidate, reference).f1
    ) / 3.0
