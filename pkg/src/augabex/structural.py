"""Surface attributes: length, sentence length and Flesch-Kincaid reading ease."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import SegmentedText

__all__ = ["StructuralProfile", "count_syllables", "fk_score", "structural_profile"]


@dataclass(frozen=True)
class StructuralProfile:
    word_count: int
    n_sentences: int
    avg_sentence_len: float
    fk_score: float


_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


def count_syllables(word: str) -> int:
    """Vowel-group heuristic with a terminal silent-e adjustment; minimum 1."""
    if not word:
        raise ValueError("word must be nonempty")
    w = word.lower()
    count = len(_VOWEL_GROUP_RE.findall(w))
    if w.endswith("e") and count > 1:
        count -= 1
    return max(count, 1)


def fk_score(text: SegmentedText) -> float:
    """Flesch-Kincaid reading ease: 206.835 - 1.015*ASL - 84.6*ASW.

    Not clamped: very dense legal prose legitimately scores below zero.
    """
    if not text.sentences:
        raise ValueError("cannot score empty text")
    words = text.word_count
    syllables = sum(count_syllables(t) for s in text.sentences for t in s.tokens)
    asl = words / len(text.sentences)
    asw = syllables / words
    return 206.835 - 1.015 * asl - 84.6 * asw


def structural_profile(text: SegmentedText) -> StructuralProfile:
    if not text.sentences:
        raise ValueError("cannot profile empty text")
    n = len(text.sentences)
    return StructuralProfile(
        word_count=text.word_count,
        n_sentences=n,
        avg_sentence_len=text.word_count / n,
        fk_score=fk_score(text),
    )
