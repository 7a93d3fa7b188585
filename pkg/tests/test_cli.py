import json
from pathlib import Path

import pytest

from augabex.cli import main
from augabex.corpus import load_corpus, segment

DATA = Path(__file__).parent / "data"
CORPUS = Path(__file__).parents[1] / "data" / "mini_corpus.jsonl"
SNAPSHOT = DATA / "mini_teg_snapshot.jsonl"
EMBEDDINGS = DATA / "embeddings.jsonl"


def run_transform(out_dir, workers=1, extra=()):
    return main(
        ["transform", "--input", str(CORPUS), "--out", str(out_dir),
         "--workers", str(workers), *extra]
    )


class TestTransform:
    def test_matches_golden_snapshot(self, tmp_path):
        assert run_transform(tmp_path) == 0
        assert (tmp_path / "teg.jsonl").read_bytes() == SNAPSHOT.read_bytes()

    def test_workers_do_not_change_output(self, tmp_path):
        assert run_transform(tmp_path / "a", workers=1) == 0
        assert run_transform(tmp_path / "b", workers=4) == 0
        assert (tmp_path / "a" / "teg.jsonl").read_bytes() == (
            tmp_path / "b" / "teg.jsonl"
        ).read_bytes()

    def test_log_records_parameters(self, tmp_path):
        run_transform(tmp_path, extra=["--k", "3", "--lambda", "0.7"])
        log = (tmp_path / "transform.log").read_text()
        assert "k=3" in log and "lambda=0.7" in log

    def test_sentences_verbatim_from_document(self, tmp_path):
        run_transform(tmp_path)
        records = {r.id: r for r in load_corpus(CORPUS)}
        with (tmp_path / "teg.jsonl").open() as fh:
            for line in fh:
                row = json.loads(line)
                doc = segment(records[row["id"]].doc_text)
                raws = {s.index: s.raw for s in doc.sentences}
                for idx in row["selected_indices"]:
                    assert raws[idx] in row["teg"]

    def test_missing_input_exits_2(self, tmp_path, capsys):
        code = main(["transform", "--input", str(tmp_path / "nope.jsonl"),
                     "--out", str(tmp_path)])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_corpus_exits_2(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"id": "x"}\n', encoding="utf-8")
        assert main(["transform", "--input", str(bad), "--out", str(tmp_path)]) == 2


class TestEvaluate:
    def run(self, out_dir, extra=()):
        return main(
            ["evaluate", "--input", str(CORPUS), "--teg", str(SNAPSHOT),
             "--out", str(out_dir), *extra]
        )

    def test_report_schema(self, tmp_path):
        assert self.run(tmp_path) == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert set(report) == {"datasets", "per_instance"}
        assert len(report["per_instance"]) == 5
        row = report["per_instance"][0]
        for key in ("rouge1_f", "rouge2_f", "rougeL_f", "jsd", "kld_oag",
                    "kld_teg", "lsa_similarity", "lent_cnt_oag", "lent_cnt_teg",
                    "prov_recall", "fk_oag", "fk_teg", "embed_similarity"):
            assert key in row
        section = next(iter(report["datasets"].values()))
        assert set(section["paired"]) == {"lent_cnt", "kld", "lsa_doc_similarity"}
        for vals in section["paired"].values():
            assert 0.0 <= vals["lambda_t"] <= 1.0

    def test_embeddings_optional(self, tmp_path):
        assert self.run(tmp_path) == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert all(r["embed_similarity"] is None for r in report["per_instance"])

    def test_embeddings_attached(self, tmp_path):
        assert self.run(tmp_path, ["--embeddings", str(EMBEDDINGS)]) == 0
        report = json.loads((tmp_path / "report.json").read_text())
        for row in report["per_instance"]:
            assert 0.0 < row["embed_similarity"] <= 1.0
        section = next(iter(report["datasets"].values()))
        assert section["pooled"]["embed_similarity"]["n_defined"] == 5

    def test_paired_csvs_written(self, tmp_path):
        self.run(tmp_path)
        for key in ("lent_cnt", "kld", "lsa_doc_similarity"):
            matches = list(tmp_path.glob(f"*_{key}.csv"))
            assert matches, key
            header = matches[0].read_text().splitlines()[0]
            assert header == "id,score_o,score_t"

    def test_misaligned_teg_exits_2(self, tmp_path):
        partial = tmp_path / "partial.jsonl"
        with SNAPSHOT.open() as fh:
            partial.write_text(fh.readline(), encoding="utf-8")
        assert self.run(tmp_path, ["--teg", str(partial)]) == 2

    def test_deterministic_report_bytes(self, tmp_path):
        self.run(tmp_path / "a")
        self.run(tmp_path / "b")
        assert (tmp_path / "a" / "report.json").read_bytes() == (
            tmp_path / "b" / "report.json"
        ).read_bytes()


class TestBaselineLsa:
    def test_extractive_and_reported(self, tmp_path):
        code = main(["baseline-lsa", "--input", str(CORPUS), "--out", str(tmp_path),
                     "--teg", str(SNAPSHOT)])
        assert code == 0
        records = {r.id: r for r in load_corpus(CORPUS)}
        with (tmp_path / "lsa.jsonl").open() as fh:
            rows = [json.loads(line) for line in fh]
        assert len(rows) == 5
        for row in rows:
            doc = segment(records[row["id"]].doc_text)
            raws = {s.index: s.raw for s in doc.sentences}
            for idx in row["selected_indices"]:
                assert raws[idx] in row["summary"]
        report = json.loads((tmp_path / "baseline_report.json").read_text())
        assert set(report) == {"lsa", "teg"}

    def test_without_teg(self, tmp_path):
        code = main(["baseline-lsa", "--input", str(CORPUS), "--out", str(tmp_path)])
        assert code == 0
        report = json.loads((tmp_path / "baseline_report.json").read_text())
        assert set(report) == {"lsa"}


class TestSweepK:
    def test_csv_and_trend(self, tmp_path, capsys):
        code = main(["sweep-k", "--input", str(CORPUS), "--out", str(tmp_path),
                     "--k-values", "1,2,3"])
        assert code == 0
        lines = (tmp_path / "sweep_k.csv").read_text().splitlines()
        assert lines[0] == "k,prov_recall"
        rows = {int(l.split(",")[0]): float(l.split(",")[1]) for l in lines[1:]}
        assert set(rows) == {1, 2, 3}
        assert rows[2] >= rows[1]


class TestStats:
    def test_json_written(self, tmp_path):
        assert main(["stats", "--input", str(CORPUS), "--out", str(tmp_path)]) == 0
        st = json.loads((tmp_path / "corpus_stats.json").read_text())
        assert st["n_docs"] == 5
        assert st["avg_cr"] > 1.0


class TestSampleReview:
    def test_four_ids(self, tmp_path, capsys):
        code = main(["sample-review", "--input", str(CORPUS), "--teg", str(SNAPSHOT),
                     "--out", str(tmp_path), "--top", "2", "--bottom", "2"])
        assert code == 0
        ids = capsys.readouterr().out.split()
        assert len(ids) == 4
        assert len(set(ids)) == 4


class TestStopwordsEnv:
    def test_env_fallback(self, tmp_path, monkeypatch):
        stop = tmp_path / "stop.txt"
        stop.write_text("the\nof\n", encoding="utf-8")
        monkeypatch.setenv("AUGABEX_STOPWORDS", str(stop))
        code = main(["baseline-lsa", "--input", str(CORPUS), "--out", str(tmp_path)])
        assert code == 0

    def test_bad_env_path_exits_2(self, tmp_path, monkeypatch):
        monkeypatch.setenv("AUGABEX_STOPWORDS", str(tmp_path / "missing.txt"))
        code = main(["baseline-lsa", "--input", str(CORPUS), "--out", str(tmp_path)])
        assert code == 2
