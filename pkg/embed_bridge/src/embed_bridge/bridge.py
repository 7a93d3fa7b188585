"""Run a pretrained transformer encoder over corpus texts and write them out
as embedding-jsonl: a header line {"dim", "model"} followed by one
{"id", "vector"} line per text.

Texts longer than the encoder window are split into chunks; each chunk is
encoder-pooled and the chunk vectors are mean-pooled into one document
vector. The pooling choice is recorded in the header's model tag so
downstream consumers can tell how the vectors were produced.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2

POOLINGS = ("mean-of-chunks", "encoder-pooled")


@dataclasses.dataclass(frozen=True)
class BridgeConfig:
    model: str
    input: str
    out: str
    texts: str = "doc"  # doc | oag | teg
    teg: str | None = None  # required when texts == "teg"
    pooling: str = "mean-of-chunks"
    max_tokens: int = 512
    batch_size: int = 8

    def __post_init__(self):
        if self.texts not in ("doc", "oag", "teg"):
            raise ValueError(f"unknown text source {self.texts!r}")
        if self.pooling not in POOLINGS:
            raise ValueError(f"unknown pooling {self.pooling!r}")
        if self.texts == "teg" and not self.teg:
            raise ValueError("texts=teg requires a TEG summaries file")
        if self.max_tokens < 8:
            raise ValueError("max_tokens must be at least 8")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


def _iter_texts(cfg: BridgeConfig):
    """Yield (embedding id, text) pairs for the configured source."""
    if cfg.texts == "teg":
        path, field, suffix = cfg.teg, "teg", "teg"
    else:
        field = "doc" if cfg.texts == "doc" else "summary"
        path, suffix = cfg.input, cfg.texts
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                yield f"{obj['id']}:{suffix}", obj[field]
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: bad record ({exc})") from exc


def _chunk_ids(tokenizer, text: str, max_tokens: int):
    """Token-id chunks, each wrapped in the tokenizer's special tokens."""
    ids = tokenizer(text, add_special_tokens=False)["input_ids"]
    window = max_tokens - 2
    if not ids:
        raise ValueError("text has no encodable tokens")
    chunks = [ids[i : i + window] for i in range(0, len(ids), window)]
    head = [tokenizer.cls_token_id] if tokenizer.cls_token_id is not None else []
    tail = [tokenizer.sep_token_id] if tokenizer.sep_token_id is not None else []
    return [head + c + tail for c in chunks]


def _encode_chunks(model, torch, chunk_ids_list, pad_id: int):
    """One pooled vector per chunk: pooler output when the encoder has one,
    else the mean of the final hidden states over real tokens."""
    width = max(len(c) for c in chunk_ids_list)
    input_ids = torch.full((len(chunk_ids_list), width), pad_id, dtype=torch.long)
    mask = torch.zeros((len(chunk_ids_list), width), dtype=torch.long)
    for row, ids in enumerate(chunk_ids_list):
        input_ids[row, : len(ids)] = torch.tensor(ids, dtype=torch.long)
        mask[row, : len(ids)] = 1
    with torch.no_grad():
        out = model(input_ids=input_ids, attention_mask=mask)
    pooled = getattr(out, "pooler_output", None)
    if pooled is None:
        hidden = out.last_hidden_state
        weights = mask.unsqueeze(-1).to(hidden.dtype)
        pooled = (hidden * weights).sum(dim=1) / weights.sum(dim=1)
    return pooled


def export_embeddings(cfg: BridgeConfig) -> int:
    """Write the embedding-jsonl file; returns the number of skipped texts."""
    import torch
    from transformers import AutoModel, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(cfg.model)
    model = AutoModel.from_pretrained(cfg.model)
    model.eval()
    pad_id = tokenizer.pad_token_id or 0

    texts = list(_iter_texts(cfg))
    dim = model.config.hidden_size
    tag = f"{cfg.model}|pooling={cfg.pooling}|max_tokens={cfg.max_tokens}"

    out_path = Path(cfg.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    skipped = 0
    with out_path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps({"dim": dim, "model": tag}) + "\n")
        for text_id, text in texts:
            try:
                chunks = _chunk_ids(tokenizer, text, cfg.max_tokens)
                vectors = []
                for start in range(0, len(chunks), cfg.batch_size):
                    vectors.append(
                        _encode_chunks(model, torch, chunks[start : start + cfg.batch_size], pad_id)
                    )
                stacked = torch.cat(vectors, dim=0)
                if cfg.pooling == "mean-of-chunks":
                    vec = stacked.mean(dim=0)
                else:
                    vec = stacked[0]
            except Exception as exc:
                skipped += 1
                print(f"skipped {text_id}: {exc}", file=sys.stderr)
                continue
            fh.write(json.dumps({"id": text_id, "vector": [float(x) for x in vec]}) + "\n")
    return skipped


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embed-bridge")
    parser.add_argument("--model", required=True, help="encoder id or local path")
    parser.add_argument("--input", required=True, help="corpus-jsonl input file")
    parser.add_argument("--out", required=True, help="embedding-jsonl output path")
    parser.add_argument("--texts", choices=("doc", "oag", "teg"), default="doc")
    parser.add_argument("--teg", help="TEG summaries jsonl, required with --texts teg")
    parser.add_argument("--pooling", choices=POOLINGS, default="mean-of-chunks")
    parser.add_argument("--max-tokens", type=int, default=512)
    parser.add_argument("--batch-size", type=int, default=8)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = BridgeConfig(
            model=args.model, input=args.input, out=args.out, texts=args.texts,
            teg=args.teg, pooling=args.pooling, max_tokens=args.max_tokens,
            batch_size=args.batch_size,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        skipped = export_embeddings(cfg)
    except (OSError, ValueError, EnvironmentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_PARTIAL if skipped else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
