import random

import pytest
from hypothesis import given, settings, strategies as st

from augabex.corpus import CaseRecord, load_corpus, segment
from augabex.transform import (
    Candidate,
    CandidateSet,
    PipelineConfig,
    mmr_select,
    select_candidates,
    sweep_k,
    transform_summary,
)

from oracles import avg_rouge_oracle, check_mmr_trace

from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "data"


def make_candidate_set(token_lists, vocab=None):
    """CandidateSet over explicit token lists; doc index = position."""
    if vocab is None:
        vocab = tuple(sorted({t for toks in token_lists for t in toks}))
    pos = {t: i for i, t in enumerate(vocab)}
    members = []
    for idx, toks in enumerate(token_lists):
        vec = [0] * len(vocab)
        for t in toks:
            vec[pos[t]] += 1
        members.append(Candidate(idx, " ".join(toks), tuple(toks), tuple(vec)))
    return CandidateSet(tuple(members), vocab, {})


class TestSelectCandidates:
    def test_cardinality_bound(self):
        doc = segment("Alpha one two. Beta three four. Gamma five six. Delta seven eight.")
        oag = segment("Alpha one. Beta three. Gamma five.")
        cs = select_candidates(doc, oag, 2)
        assert len(cs.members) <= 6

    def test_identical_sentence_is_rank_one(self):
        sentences = [f"Filler text number {i} here." for i in range(10)]
        sentences[7] = "The tribunal award was entirely without jurisdiction."
        doc = segment(" ".join(sentences))
        oag = segment("The tribunal award was entirely without jurisdiction.")
        cs = select_candidates(doc, oag, 2)
        (top, score), *_ = cs.provenance[0]
        assert top == 7
        assert score == pytest.approx(1.0)

    def test_provenance_matches_bruteforce_ranking(self):
        doc = segment(
            "The cat sat on the mat. Dogs bark at night. The cat ran away fast. Rain fell all day."
        )
        oag = segment("The cat sat on a mat. Dogs bark loudly at night.")
        cs = select_candidates(doc, oag, 2)
        for oidx, entries in cs.provenance.items():
            scores = sorted(
                (
                    (avg_rouge_oracle(d.tokens, oag.sentences[oidx].tokens), d.index)
                    for d in doc.sentences
                ),
                key=lambda t: (-t[0], t[1]),
            )
            expected = tuple((i, s) for s, i in scores[:2])
            assert [e[0] for e in entries] == [e[0] for e in expected]
            for (gi, gs), (ei, es) in zip(entries, expected):
                assert gs == pytest.approx(es, abs=1e-12)

    def test_monotone_candidates(self):
        doc = segment(
            "The cat sat on the mat. Dogs bark at night. The cat ran away fast. Rain fell all day."
        )
        oag = segment("The cat sat on a mat. Dogs bark loudly at night.")
        small = select_candidates(doc, oag, 1)
        big = select_candidates(doc, oag, 2)
        for oidx, entries in small.provenance.items():
            assert big.provenance[oidx][: len(entries)] == entries
        small_ids = {c.doc_index for c in small.members}
        big_ids = {c.doc_index for c in big.members}
        assert small_ids <= big_ids

    def test_empty_doc_errors(self):
        with pytest.raises(ValueError):
            select_candidates(segment(""), segment("Some words."), 1)


class TestMmrSelect:
    def test_singleton(self):
        cs = make_candidate_set([["alpha", "beta", "gamma"]])
        summary = mmr_select(cs, 0.5, budget=3)
        assert summary.selected == (0,)
        assert summary.trace[0][1] == pytest.approx(0.5)

    def test_lambda_one_is_pure_relevance(self):
        cs = make_candidate_set(
            [["a", "a", "b"], ["a", "b", "c"], ["c", "c", "d"], ["d", "e", "e"]]
        )
        summary = mmr_select(cs, 1.0, budget=12)
        scores = [s for _, s in summary.trace]
        assert scores == sorted(scores, reverse=True)
        assert set(summary.selected) == {0, 1, 2, 3}

    def test_budget_overshoot_bounded_by_last_sentence(self):
        cs = make_candidate_set([["a"] * 4, ["b"] * 5, ["c"] * 6])
        summary = mmr_select(cs, 0.5, budget=7)
        assert summary.word_count >= 7
        last_len = len(cs.members[[c.doc_index for c in cs.members].index(summary.trace[-1][0])].tokens)
        assert summary.word_count - 7 < last_len

    def test_output_in_document_order(self):
        cs = make_candidate_set([["z", "z"], ["a", "b"], ["c", "d"]])
        summary = mmr_select(cs, 0.5, budget=6)
        assert list(summary.selected) == sorted(summary.selected)

    def test_empty_candidates_error(self):
        cs = CandidateSet((), (), {})
        with pytest.raises(ValueError):
            mmr_select(cs, 0.5, 5)

    def test_trace_matches_bruteforce_oracle(self):
        rng = random.Random(7)
        for _ in range(25):
            n = rng.randint(1, 8)
            vocab = [f"w{i}" for i in range(rng.randint(2, 12))]
            token_lists = [
                [rng.choice(vocab) for _ in range(rng.randint(1, 6))] for _ in range(n)
            ]
            cs = make_candidate_set(token_lists)
            total = sum(len(t) for t in token_lists)
            budget = rng.randint(1, total)
            for lam in (0.0, 0.5, 1.0):
                summary = mmr_select(cs, lam, budget)
                check_mmr_trace(cs, lam, budget, summary)


class TestTransformSummary:
    def test_perfect_extract_fixture(self):
        sentences = [
            "Quite unrelated filler about procedure and adjournment of hearings generally.",
            "Another unrelated filler about court fees and process service alone.",
            "The notice was served by registered post and was received in time by the tenant.",
            "Further filler regarding listing of matters before the registrar office.",
            "The arrears of rent were tendered before the first hearing of the suit itself.",
        ]
        doc = " ".join(sentences)
        oag = sentences[2] + " " + sentences[4]
        rec = CaseRecord("px", "t", doc, oag)
        teg = transform_summary(rec, PipelineConfig(k=2, mmr_lambda=0.5))
        assert teg.selected == (2, 4)
        assert teg.text == oag

    def test_extractiveness_and_budget_on_mini_corpus(self):
        records = load_corpus(DATA / "mini_corpus.jsonl")
        for rec in records:
            doc = segment(rec.doc_text)
            oag = segment(rec.oag_text)
            teg = transform_summary(rec)
            doc_raws = {s.index: s.raw for s in doc.sentences}
            teg_sentences = segment(teg.text)
            for idx in teg.selected:
                assert doc_raws[idx] in teg.text
            budget = oag.word_count
            total_candidate_words = sum(
                len(doc.sentences[i].tokens) for i in teg.selected
            )
            assert teg.word_count == total_candidate_words
            last_idx = teg.trace[-1][0]
            assert teg.word_count - budget < len(doc.sentences[last_idx].tokens) or (
                teg.word_count < budget
            )

    def test_deterministic(self):
        records = load_corpus(DATA / "mini_corpus.jsonl")
        a = transform_summary(records[0])
        b = transform_summary(records[0])
        assert a == b


class TestSweepK:
    def test_two_rows_recomputed_independently(self):
        records = load_corpus(DATA / "mini_corpus.jsonl")
        rows = sweep_k(records, [1, 2])
        assert [k for k, _ in rows] == [1, 2]

        from augabex.entities import extract_pattern_entities, prov_recall

        for k, macro in rows:
            recalls = []
            for rec in records:
                teg = transform_summary(rec, PipelineConfig(k=k))
                r = prov_recall(
                    extract_pattern_entities(rec.oag_text),
                    extract_pattern_entities(teg.text),
                )
                if r is not None:
                    recalls.append(r)
            assert macro == pytest.approx(sum(recalls) / len(recalls))

    def test_saturated_provisions(self):
        doc = (
            "The claim arises under Section 5 of the Limitation Act, 1963 as pleaded. "
            "The delay was explained by illness of the appellant. "
            "The condonation application was allowed by the court below."
        )
        oag = "Delay was condoned under Section 5 of the Limitation Act, 1963."
        recs = [CaseRecord("s1", "t", doc, oag)]
        rows = sweep_k(recs, [1, 2, 3])
        assert all(r == pytest.approx(1.0) for _, r in rows)

    def test_empty_sweep_errors(self):
        records = load_corpus(DATA / "mini_corpus.jsonl")
        with pytest.raises(ValueError):
            sweep_k(records, [])
