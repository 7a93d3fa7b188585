"""Embedding-space similarity over externally produced document vectors."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

__all__ = ["EmbeddingStore", "EmbeddingFormatError", "load_embeddings", "embed_cosine"]


class EmbeddingFormatError(ValueError):
    """Raised for malformed embedding files."""


@dataclass(frozen=True)
class EmbeddingStore:
    dim: int
    vectors: dict[str, tuple[float, ...]]
    model_tag: str


def load_embeddings(path) -> EmbeddingStore:
    """Load embedding-jsonl: a {"dim", "model"} header line, then one
    {"id", "vector"} object per line."""
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise EmbeddingFormatError(f"{path}: missing header line")
        try:
            header = json.loads(header_line)
            dim = int(header["dim"])
            model_tag = str(header["model"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise EmbeddingFormatError(f"{path}: bad header: {exc}") from exc
        if dim <= 0:
            raise EmbeddingFormatError(f"{path}: dim must be positive, got {dim}")

        vectors: dict[str, tuple[float, ...]] = {}
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                text_id = obj["id"]
                vec = tuple(float(x) for x in obj["vector"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise EmbeddingFormatError(f"{path}:{lineno}: bad record: {exc}") from exc
            if text_id in vectors:
                raise EmbeddingFormatError(f"{path}:{lineno}: duplicate id {text_id!r}")
            if len(vec) != dim:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: id {text_id!r} has {len(vec)} components, expected {dim}"
                )
            if any(math.isnan(x) or math.isinf(x) for x in vec):
                raise EmbeddingFormatError(f"{path}:{lineno}: id {text_id!r} has non-finite component")
            vectors[text_id] = vec
    return EmbeddingStore(dim=dim, vectors=vectors, model_tag=model_tag)


def embed_cosine(store: EmbeddingStore, id_a: str, id_b: str) -> float:
    for text_id in (id_a, id_b):
        if text_id not in store.vectors:
            raise KeyError(f"no embedding for id {text_id!r}")
    a = store.vectors[id_a]
    b = store.vectors[id_b]
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0.0 or nb == 0.0:
        raise ArithmeticError("cannot take cosine with a zero vector")
    return sum(x * y for x, y in zip(a, b)) / (na * nb)
