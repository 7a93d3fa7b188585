"""Command-line front end: transform, evaluate, baseline-lsa, sweep-k, stats,
sample-review.

All commands are deterministic: reruns (at any --workers setting) rewrite
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import embedsim, entities, lexical, lsa, rouge, stats, structural, transform

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _stopwords(args) -> frozenset[str]:
    path = getattr(args, "stopwords", None) or os.environ.get("AUGABEX_STOPWORDS")
    if path:
        return lsa.load_stopwords(path)
    return lsa.default_stopwords()


def _load_corpus(args):
    return corpus_mod.load_corpus(args.input)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

def _transform_one(payload):
    rec, k, lam = payload
    cfg = transform.PipelineConfig(k=k, mmr_lambda=lam)
    teg = transform.transform_summary(rec, cfg)
    return {
        "id": rec.id,
        "selected_indices": list(teg.selected),
        "teg": teg.text,
        "word_count": teg.word_count,
        "k": k,
        "lambda": lam,
    }


def _run_records(records, worker, payloads, n_workers):
    """Apply worker to payloads, preserving input order; None marks failure."""
    results = []
    failures = []
    if n_workers <= 1:
        for rec, payload in zip(records, payloads):
            try:
                results.append(worker(payload))
            except Exception as exc:
                failures.append((rec.id, str(exc)))
                results.append(None)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=n_workers) as pool:
            futures = [pool.submit(worker, p) for p in payloads]
            for rec, fut in zip(records, futures):
                try:
                    results.append(fut.result())
                except Exception as exc:
                    failures.append((rec.id, str(exc)))
                    results.append(None)
    return results, failures


def cmd_transform(args) -> int:
    records = _load_corpus(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    payloads = [(rec, args.k, args.mmr_lambda) for rec in records]
    results, failures = _run_records(records, _transform_one, payloads, args.workers)

    teg_path = out_dir / "teg.jsonl"
    with teg_path.open("w", encoding="utf-8", newline="\n") as fh:
        for row in results:
            if row is not None:
                fh.write(json.dumps(row, sort_keys=True) + "\n")

    log_path = out_dir / "transform.log"
    with log_path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"k={args.k} lambda={args.mmr_lambda}\n")
        fh.write(f"records={len(records)} transformed={len(records) - len(failures)} failed={len(failures)}\n")
        for rec_id, msg in failures:
            fh.write(f"failed {rec_id}: {msg}\n")

    for rec_id, msg in failures:
        print(f"skipped {rec_id}: {msg}", file=sys.stderr)
    print(f"transformed {len(records) - len(failures)}/{len(records)} records -> {teg_path}")
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def _load_teg(path) -> dict[str, dict]:
    rows = {}
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            if obj["id"] in rows:
                raise corpus_mod.CorpusFormatError(f"{path}:{lineno}: duplicate id {obj['id']!r}")
            rows[obj["id"]] = obj
    return rows


def _summary_text(obj: dict) -> str:
    for key in ("teg", "summary"):
        if key in obj:
            return obj[key]
    raise corpus_mod.CorpusFormatError(f"summary record {obj.get('id')!r} has no text field")


def _entities_for(rec, side_text: str, source: str, annotated):
    if source == "annotations" and annotated is not None:
        return list(annotated)
    return entities.extract_pattern_entities(side_text)


def _teg_entities(rec, teg_text: str, source: str):
    # Under the annotations source, TEG entities are the document annotations
    # whose surface occurs in the extracted text (TEG sentences are verbatim
    # document sentences); falls back to the pattern extractor otherwise.
    if source == "annotations" and rec.entities_doc is not None:
        return [e for e in rec.entities_doc if e.surface in teg_text]
    return entities.extract_pattern_entities(teg_text)


def _evaluate_one(payload):
    rec, teg_obj, source, stop, alpha = payload
    doc = corpus_mod.segment(rec.doc_text)
    oag = corpus_mod.segment(rec.oag_text)
    teg_text = _summary_text(teg_obj)
    teg = corpus_mod.segment(teg_text)
    if not oag.sentences or not teg.sentences:
        raise ValueError("empty summary after segmentation")

    oag_tokens = [t for s in oag.sentences for t in s.tokens]
    teg_tokens = [t for s in teg.sentences for t in s.tokens]

    vocab_pair = lexical.union_vocab(oag, teg)
    dist_oag_pair = lexical.term_distribution(oag, vocab_pair)
    dist_teg_pair = lexical.term_distribution(teg, vocab_pair)

    vocab_doc_o = lexical.union_vocab(oag, doc)
    vocab_doc_t = lexical.union_vocab(teg, doc)

    prof_oag = structural.structural_profile(oag)
    prof_teg = structural.structural_profile(teg)

    ents_oag = _entities_for(rec, rec.oag_text, source, rec.entities_oag)
    ents_teg = _teg_entities(rec, teg_text, source)

    row = {
        "id": rec.id,
        "dataset": rec.dataset,
        "rouge1_f": rouge.rouge_n(teg_tokens, oag_tokens, 1).f1,
        "rouge2_f": rouge.rouge_n(teg_tokens, oag_tokens, 2).f1,
        "rougeL_f": rouge.rouge_l(teg_tokens, oag_tokens).f1,
        "jsd": lexical.jsd(dist_oag_pair, dist_teg_pair),
        "kld_oag": lexical.kld(
            lexical.term_distribution(oag, vocab_doc_o),
            lexical.term_distribution(doc, vocab_doc_o),
            alpha,
        ),
        "kld_teg": lexical.kld(
            lexical.term_distribution(teg, vocab_doc_t),
            lexical.term_distribution(doc, vocab_doc_t),
            alpha,
        ),
        "lsa_similarity": lsa.lsa_similarity(oag, teg, stop),
        "lsa_doc_oag": lsa.lsa_similarity(doc, oag, stop),
        "lsa_doc_teg": lsa.lsa_similarity(doc, teg, stop),
        "lent_cnt_oag": entities.lent_cnt(ents_oag),
        "lent_cnt_teg": entities.lent_cnt(ents_teg),
        "prov_recall": entities.prov_recall(ents_oag, ents_teg),
        "wc_oag": prof_oag.word_count,
        "wc_teg": prof_teg.word_count,
        "sent_len_oag": prof_oag.avg_sentence_len,
        "sent_len_teg": prof_teg.avg_sentence_len,
        "fk_oag": prof_oag.fk_score,
        "fk_teg": prof_teg.fk_score,
    }
    return row


_PAIRED_METRICS = [
    # (report key, (o column, t column), orientation)
    ("lent_cnt", ("lent_cnt_oag", "lent_cnt_teg"), "higher"),
    ("kld", ("kld_oag", "kld_teg"), "lower"),
    ("lsa_doc_similarity", ("lsa_doc_oag", "lsa_doc_teg"), "higher"),
]

_POOLED_METRICS = [
    "rouge1_f", "rouge2_f", "rougeL_f", "jsd", "lsa_similarity", "prov_recall",
    "embed_similarity",
]


def _attach_embeddings(rows, store):
    for row in rows:
        sims = {}
        for key, (a, b) in {
            "embed_similarity": (f"{row['id']}:oag", f"{row['id']}:teg"),
            "embed_doc_oag": (f"{row['id']}:doc", f"{row['id']}:oag"),
            "embed_doc_teg": (f"{row['id']}:doc", f"{row['id']}:teg"),
        }.items():
            if a in store.vectors and b in store.vectors:
                sims[key] = embedsim.embed_cosine(store, a, b)
            else:
                sims[key] = None
        row.update(sims)


def _build_report(rows, out_dir: Path, prefix: str = "") -> dict:
    datasets = sorted({r["dataset"] for r in rows})
    report: dict = {}
    for ds in datasets:
        ds_rows = [r for r in rows if r["dataset"] == ds]
        section: dict = {"n": len(ds_rows), "paired": {}, "pooled": {}}
        for key, (col_o, col_t), orientation in _PAIRED_METRICS:
            scores = stats.PairedScores(
                metric=key,
                orientation=orientation,
                rows=tuple((r["id"], float(r[col_o]), float(r[col_t])) for r in ds_rows),
            )
            mean_o, median_o, _ = stats.macro_average([(r["id"], r[col_o]) for r in ds_rows])
            mean_t, median_t, _ = stats.macro_average([(r["id"], r[col_t]) for r in ds_rows])
            section["paired"][key] = {
                "mean_o": mean_o,
                "mean_t": mean_t,
                "median_o": median_o,
                "median_t": median_t,
                "lambda_t": stats.bt_strength(scores),
            }
            stats.export_paired(scores, out_dir / f"{prefix}{ds}_{key}.csv")
        for key in _POOLED_METRICS:
            values = [(r["id"], r.get(key)) for r in ds_rows]
            if all(v is None for _, v in values):
                section["pooled"][key] = None
                continue
            mean, median, n_defined = stats.macro_average(values)
            section["pooled"][key] = {"mean": mean, "median": median, "n_defined": n_defined}
        report[ds] = section
    return report


def _print_report(report: dict) -> None:
    for ds, section in sorted(report.items()):
        print(f"dataset {ds} (n={section['n']})")
        for key, vals in section["paired"].items():
            print(
                f"  {key:<20} O mean {vals['mean_o']:>9.4f} median {vals['median_o']:>9.4f}"
                f" | T mean {vals['mean_t']:>9.4f} median {vals['median_t']:>9.4f}"
                f" | lambda_T {vals['lambda_t']:.4f}"
            )
        for key, vals in section["pooled"].items():
            if vals is None:
                print(f"  {key:<20} absent")
            else:
                print(f"  {key:<20} mean {vals['mean']:>9.4f} median {vals['median']:>9.4f} (n={vals['n_defined']})")


def _align(records, teg_rows):
    rec_ids = {r.id for r in records}
    teg_ids = set(teg_rows)
    orphans = sorted(rec_ids ^ teg_ids)
    if orphans:
        raise corpus_mod.CorpusFormatError(
            "corpus and summary file do not align; orphan ids: " + ", ".join(orphans)
        )


def cmd_evaluate(args) -> int:
    records = _load_corpus(args)
    teg_rows = _load_teg(args.teg)
    _align(records, teg_rows)
    stop = _stopwords(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    payloads = [(rec, teg_rows[rec.id], args.entities, stop, args.alpha) for rec in records]
    results, failures = _run_records(records, _evaluate_one, payloads, args.workers)
    rows = [r for r in results if r is not None]
    if not rows:
        return _fail("every record failed evaluation")

    if args.embeddings:
        store = embedsim.load_embeddings(args.embeddings)
        _attach_embeddings(rows, store)
    else:
        for row in rows:
            row["embed_similarity"] = None
            row["embed_doc_oag"] = None
            row["embed_doc_teg"] = None

    report = _build_report(rows, out_dir)
    _write_json(out_dir / "report.json", {"datasets": report, "per_instance": rows})
    _print_report(report)
    for rec_id, msg in failures:
        print(f"skipped {rec_id}: {msg}", file=sys.stderr)
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# baseline-lsa
# ---------------------------------------------------------------------------

def _lsa_one(payload):
    rec, stop = payload
    doc = corpus_mod.segment(rec.doc_text)
    oag = corpus_mod.segment(rec.oag_text)
    if not doc.sentences or not oag.sentences:
        raise ValueError("empty document or summary after segmentation")
    summary = lsa.lsa_summarize(doc, oag.word_count, stop)
    return {
        "id": rec.id,
        "selected_indices": list(summary.selected),
        "summary": summary.text,
        "word_count": summary.word_count,
    }


def cmd_baseline_lsa(args) -> int:
    records = _load_corpus(args)
    stop = _stopwords(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    payloads = [(rec, stop) for rec in records]
    results, failures = _run_records(records, _lsa_one, payloads, args.workers)
    lsa_path = out_dir / "lsa.jsonl"
    with lsa_path.open("w", encoding="utf-8", newline="\n") as fh:
        for row in results:
            if row is not None:
                fh.write(json.dumps(row, sort_keys=True) + "\n")

    lsa_rows = {row["id"]: row for row in results if row is not None}
    ok_records = [rec for rec in records if rec.id in lsa_rows]
    payloads = [(rec, lsa_rows[rec.id], args.entities, stop, args.alpha) for rec in ok_records]
    eval_results, eval_failures = _run_records(ok_records, _evaluate_one, payloads, args.workers)
    rows = [r for r in eval_results if r is not None]
    if not rows:
        return _fail("every record failed LSA evaluation")
    for row in rows:
        row["embed_similarity"] = None
    report = {"lsa": _build_report(rows, out_dir, prefix="lsa_")}

    if args.teg:
        teg_rows = _load_teg(args.teg)
        _align(ok_records, teg_rows)
        payloads = [(rec, teg_rows[rec.id], args.entities, stop, args.alpha) for rec in ok_records]
        teg_results, _ = _run_records(ok_records, _evaluate_one, payloads, args.workers)
        teg_eval = [r for r in teg_results if r is not None]
        for row in teg_eval:
            row["embed_similarity"] = None
        report["teg"] = _build_report(teg_eval, out_dir, prefix="teg_")

    _write_json(out_dir / "baseline_report.json", report)
    for name, section in report.items():
        print(f"== {name} vs OAG ==")
        _print_report(section)
    failures += eval_failures
    for rec_id, msg in failures:
        print(f"skipped {rec_id}: {msg}", file=sys.stderr)
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# sweep-k, stats, sample-review
# ---------------------------------------------------------------------------

def cmd_sweep_k(args) -> int:
    records = _load_corpus(args)
    k_values = [int(x) for x in args.k_values.split(",") if x.strip()]
    rows = transform.sweep_k(
        records, k_values, transform.PipelineConfig(k=max(k_values), mmr_lambda=args.mmr_lambda)
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "sweep_k.csv"
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,prov_recall\n")
        for k, recall in rows:
            fh.write(f"{k},{recall!r}\n")
    for k, recall in rows:
        print(f"k={k} prov_recall={recall:.4f}")
    return EXIT_OK


def cmd_stats(args) -> int:
    records = _load_corpus(args)
    st = corpus_mod.corpus_stats(records)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(out_dir / "corpus_stats.json", dataclasses.asdict(st))
    print(f"{'n_docs':<12}{st.n_docs}")
    for name in ("avg_wc_doc", "avg_wc_sum", "avg_sc_doc", "avg_sc_sum", "avg_cr"):
        print(f"{name:<12}{getattr(st, name):.2f}")
    return EXIT_OK


def cmd_sample_review(args) -> int:
    records = _load_corpus(args)
    teg_rows = _load_teg(args.teg)
    _align(records, teg_rows)
    rows = []
    for rec in records:
        oag = corpus_mod.segment(rec.oag_text)
        teg = corpus_mod.segment(_summary_text(teg_rows[rec.id]))
        oag_tokens = [t for s in oag.sentences for t in s.tokens]
        teg_tokens = [t for s in teg.sentences for t in s.tokens]
        score = rouge.rouge_l(teg_tokens, oag_tokens).f1
        rows.append((rec.id, score, score))
    scores = stats.PairedScores(metric="rougeL_f", orientation="higher", rows=tuple(rows))
    ids = stats.sample_for_review(scores, args.top, args.bottom)
    for i in ids:
        print(i)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p, teg=False, teg_required=False):
    p.add_argument("--input", required=True, help="corpus-jsonl input file")
    p.add_argument("--out", default="out", help="output directory")
    if teg:
        p.add_argument("--teg", required=teg_required, help="TEG summaries jsonl")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="augabex")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="build extractive gold summaries")
    _add_common(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--lambda", dest="mmr_lambda", type=float, default=0.5)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("evaluate", help="compare summaries along all dimensions")
    _add_common(p, teg=True, teg_required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--stopwords")
    p.add_argument("--entities", choices=("pattern", "annotations"), default="pattern")
    p.add_argument("--embeddings")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("baseline-lsa", help="latent-topic baseline summaries and comparison")
    _add_common(p, teg=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--stopwords")
    p.add_argument("--entities", choices=("pattern", "annotations"), default="pattern")
    p.set_defaults(func=cmd_baseline_lsa)

    p = sub.add_parser("sweep-k", help="provision recall for varying k")
    _add_common(p)
    p.add_argument("--k-values", default="1,2,3")
    p.add_argument("--lambda", dest="mmr_lambda", type=float, default=0.5)
    p.set_defaults(func=cmd_sweep_k)

    p = sub.add_parser("stats", help="corpus statistics")
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sample-review", help="ids of top and bottom summaries by ROUGE-L")
    _add_common(p, teg=True, teg_required=True)
    p.add_argument("--top", type=int, default=2)
    p.add_argument("--bottom", type=int, default=2)
    p.set_defaults(func=cmd_sample_review)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except (corpus_mod.CorpusFormatError, embedsim.EmbeddingFormatError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
