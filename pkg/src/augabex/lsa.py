"""SVD-based latent topic machinery.

Provides the classic sentence-scoring extractive baseline (singular-value
weighted sentence norms) and a main-topic cosine similarity between two
texts in a shared latent space.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .corpus import SegmentedText

__all__ = [
    "TopicDecomposition",
    "default_stopwords",
    "load_stopwords",
    "decompose",
    "lsa_summarize",
    "lsa_similarity",
]


@dataclass(frozen=True)
class TopicDecomposition:
    vocab: tuple[str, ...]
    singular_values: tuple[float, ...]  # retained topics, descending
    term_topics: np.ndarray  # |vocab| x r
    sentence_topics: np.ndarray  # r x n_sentences


def default_stopwords() -> frozenset[str]:
    text = resources.files("augabex").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(w for w in text.split() if w)


def load_stopwords(path) -> frozenset[str]:
    """One term per line, UTF-8; blank lines ignored."""
    words = Path(path).read_text(encoding="utf-8").split()
    return frozenset(w.lower() for w in words if w)


def _tf_matrix(text: SegmentedText, vocab: tuple[str, ...]) -> np.ndarray:
    pos = {t: i for i, t in enumerate(vocab)}
    mat = np.zeros((len(vocab), len(text.sentences)))
    for j, sent in enumerate(text.sentences):
        for tok in sent.tokens:
            i = pos.get(tok)
            if i is not None:
                mat[i, j] += 1.0
    return mat


def _decompose_matrix(vocab: tuple[str, ...], mat: np.ndarray) -> TopicDecomposition:
    u, s, vt = np.linalg.svd(mat, full_matrices=False)
    # Retain topics whose singular value is at least half the leading one.
    r = max(1, int(np.sum(s >= 0.5 * s[0])))
    return TopicDecomposition(
        vocab=vocab,
        singular_values=tuple(float(x) for x in s[:r]),
        term_topics=u[:, :r],
        sentence_topics=vt[:r, :],
    )


def decompose(text: SegmentedText, stopwords: frozenset[str] = frozenset()) -> TopicDecomposition:
    """Thin SVD of the term-sentence frequency matrix over non-stopword terms."""
    vocab = tuple(sorted({t for s in text.sentences for t in s.tokens if t not in stopwords}))
    if not vocab:
        raise ValueError("no non-stopword terms to decompose")
    return _decompose_matrix(vocab, _tf_matrix(text, vocab))


def lsa_summarize(
    doc: SegmentedText, budget: int, stopwords: frozenset[str] = frozenset()
):
    """Baseline extractive summarizer: sigma-weighted sentence norms.

    Sentence j scores sqrt(sum_i (sigma_i * v_ij)^2) over retained topics;
    sentences are taken by descending score (ties to the lower index) until
    the word budget is reached, and emitted in document order.
    """
    from .transform import ExtractiveSummary

    if budget < 1:
        raise ValueError("budget must be >= 1")
    dec = decompose(doc, stopwords)
    sigma = np.array(dec.singular_values)
    scores = np.sqrt(((sigma[:, None] * dec.sentence_topics) ** 2).sum(axis=0))
    ranking = sorted(range(len(doc.sentences)), key=lambda j: (-scores[j], j))

    picked: list[int] = []
    trace: list[tuple[int, float]] = []
    words = 0
    for j in ranking:
        if words >= budget:
            break
        picked.append(j)
        trace.append((j, float(scores[j])))
        words += len(doc.sentences[j].tokens)
    picked.sort()
    return ExtractiveSummary(
        selected=tuple(picked),
        text=" ".join(doc.sentences[j].raw for j in picked),
        word_count=words,
        trace=tuple(trace),
    )


def lsa_similarity(
    a: SegmentedText, b: SegmentedText, stopwords: frozenset[str] = frozenset()
) -> float:
    """Absolute cosine between the main-topic term vectors of the two texts.

    Both texts are decomposed over their shared (union) vocabulary so the
    leading left singular vectors live in the same space.
    """
    vocab = tuple(
        sorted(
            {t for s in a.sentences for t in s.tokens if t not in stopwords}
            | {t for s in b.sentences for t in s.tokens if t not in stopwords}
        )
    )
    if not vocab:
        raise ValueError("no non-stopword terms in either text")
    for text, name in ((a, "first"), (b, "second")):
        if not any(t not in stopwords for s in text.sentences for t in s.tokens):
            raise ValueError(f"{name} text has no non-stopword terms")
    main = []
    for text in (a, b):
        dec = _decompose_matrix(vocab, _tf_matrix(text, vocab))
        main.append(dec.term_topics[:, 0])
    denom = np.linalg.norm(main[0]) * np.linalg.norm(main[1])
    if denom == 0.0:
        return 0.0
    return float(abs(np.dot(main[0], main[1])) / denom)
