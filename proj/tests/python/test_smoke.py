"""Smoke tests for the kpbench python module."""

import json
import math
import os

import pytest

import kpbench

FIXTURES = os.environ.get("KPBENCH_FIXTURE_DIR")


def make_doc(doc_id, sections):
    payload = {
        "id": doc_id,
        "sections": [
            {
                "kind": kind,
                "sentences": [
                    [{"surface": s, "pos": p} for s, p in sent]
                    for sent in sents
                ],
            }
            for kind, sents in sections
        ],
    }
    return kpbench.parse_document(json.dumps(payload))


SIMPLE = [
    ("title", [[("Grid", "NN"), ("Services", "NNS")]]),
    (
        "body",
        [
            [
                ("Efficient", "JJ"),
                ("grid", "NN"),
                ("services", "NNS"),
                ("for", "IN"),
                ("mobile", "JJ"),
                ("users", "NNS"),
                (".", "."),
            ],
            [
                ("Grid", "NN"),
                ("services", "NNS"),
                ("reduce", "VBP"),
                ("latency", "NN"),
                (".", "."),
            ],
        ],
    ),
    ("references", [[("Foster", "NNP"), ("2002", "CD")]]),
]


def test_stemming():
    assert kpbench.stem_word("Keyphrases") == "keyphras"
    assert kpbench.stem_phrase(["grid", "services"]) == "grid servic"
    assert kpbench.is_punct_word("---")
    assert not kpbench.is_punct_word("e.g")


def test_stopwords():
    sw = kpbench.Stopwords.english()
    assert "the" in sw
    assert "The" in sw
    assert "grid" not in sw
    assert len(sw) == 179


def test_document_parsing_and_levels():
    doc = make_doc("D-1", SIMPLE)
    assert doc.id == "D-1"
    assert doc.token_count() == 16
    assert [sec.kind for sec in doc.sections] == ["title", "body", "references"]

    l2 = kpbench.filter_level2(doc)
    assert [sec.kind for sec in l2.sections] == ["title", "body"]
    assert l2.level == 2

    with pytest.raises(RuntimeError):
        kpbench.parse_document('{"id": "x", "sections": []}')


def test_candidates_and_ranking():
    doc = make_doc("D-1", SIMPLE)
    cands = kpbench.select_ngrams(doc)
    assert "grid servic" in cands.by_stem
    cand = cands.by_stem["grid servic"]
    assert cand.tf == 3
    assert list(cand.positions) == [0, 3, 9]

    df = kpbench.compute_df([doc], 3)
    ranked = kpbench.rank_tfidf(cands, df)
    scores = [item.score for item in ranked.items]
    assert scores == sorted(scores, reverse=True)

    filtered = kpbench.redundancy_filter(ranked)
    stems = [item.stem for item in filtered.items]
    assert len(stems) == len(set(stems))


def test_full_pipeline_and_eval():
    doc = make_doc("D-1", SIMPLE)
    df = kpbench.compute_df([doc], 3)
    refs = kpbench.make_references({"D-1": [["grid services"], ["latency"]]})
    out = kpbench.run_model(doc, kpbench.Model.tfidf, df, top_n=10)
    assert 0 < len(out.items) <= 10

    report = kpbench.f_at_n({"D-1": out}, refs, 10)
    assert 0.0 <= report.micro.f <= 1.0
    assert report.total_gold == 2

    recall = kpbench.max_recall(kpbench.select_ngrams(doc), refs)
    assert recall == 1.0


def test_make_references_merges_stem_collisions():
    refs = kpbench.make_references(
        {"D": [["computing grids"], ["computing grid"], ["other phrase"]]}
    )
    gold = refs.gold("D")
    assert len(gold) == 2  # the first two stem to "comput grid"


def test_statistics():
    assert math.isclose(
        kpbench.sample_stddev([12.2, 12.5, 14.5]), 1.25, abs_tol=0.005
    )
    a = {f"d{i}": 0.5 + 0.02 * (i % 5) for i in range(12)}
    b = {f"d{i}": 0.4 + 0.03 * (i % 4) for i in range(12)}
    assert math.isclose(
        kpbench.paired_ttest(a, b), kpbench.paired_ttest(b, a), rel_tol=1e-9
    )


def test_textrank_and_level4():
    doc = make_doc(
        "D-2",
        [
            ("title", [[("Grid", "NN"), ("services", "NNS")]]),
            (
                "body",
                [
                    [("Grid", "NN"), ("services", "NNS"), ("scale", "VBP")],
                    [("Grid", "NN"), ("latency", "NN"), ("drops", "VBZ")],
                    [("Unrelated", "JJ"), ("words", "NNS"), ("here", "RB")],
                ],
            ),
        ],
    )
    ranked = kpbench.textrank_sentences(doc)
    assert len(ranked) == 4
    assert all(score >= 0 for _, score in ranked)
    scores = [score for _, score in ranked]
    assert scores == sorted(scores, reverse=True)

    cfg = kpbench.LevelConfig(level=4, reduction_ratio=0.5)
    reduced = kpbench.reduce_level4(doc, cfg)
    # title kept, ceil(0.5 * 3) = 2 of the body sentences kept
    assert reduced.sentence_count() == 3


@pytest.mark.skipif(FIXTURES is None, reason="fixture dir not set")
def test_fixture_corpus_roundtrip():
    docs = kpbench.load_corpus_dir(os.path.join(FIXTURES, "corpus"))
    assert len(docs) == 5
    refs = kpbench.load_references(os.path.join(FIXTURES, "refs.txt"))
    split = kpbench.load_split(os.path.join(FIXTURES, "split.txt"))
    train = [d for d in docs if d.id in split.train]
    df = kpbench.compute_df(train, 3)
    assert df.n_docs == 3

    rows = kpbench.build_training_rows(
        train, refs, kpbench.Model.kea, df, kpbench.Stopwords.english()
    )
    model = kpbench.nb_train(rows, ["tfidf", "first_pos_rel"])
    test_docs = [d for d in docs if d.id in split.test]
    ranked = {
        d.id: kpbench.run_model(d, kpbench.Model.kea, df, model)
        for d in test_docs
    }
    report = kpbench.f_at_n(ranked, refs, 10)
    assert report.micro.f > 0.0
