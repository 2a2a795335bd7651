import json
import random
from dataclasses import replace

import pytest

from src.documents.document import CorefChain, Mention, permute_document
from src.errors import MissingAnnotationError
from src.scoring.coherence import bundle_to_dict, coherence, explain, report_to_dict
from tests.oracles import make_document, oracle_coherence, random_document, reorder


def test_three_sentence_fixture(three_sentence):
    report = coherence(three_sentence)
    assert report.m == 3
    assert not report.degenerate
    assert report.coherence == 0.5
    assert report.similarity(0, 1) == 1.0
    assert report.similarity(2, 0) == 0.5
    assert report.similarity(1, 2) == 0.0
    assert [pair for pair, _ in report.pair_similarities] == [(0, 1), (0, 2), (1, 2)]


def test_three_sentence_fixture_without_chains(three_sentence):
    report = coherence(replace(three_sentence, chains=()))
    assert report.similarity(0, 1) == 0.25
    assert report.coherence == pytest.approx(0.25 / 3)


def test_two_sentence_fixture(two_sentence_coref):
    report = coherence(two_sentence_coref)
    assert report.similarity(0, 1) == 0.625
    assert report.coherence == 0.3125


def test_single_sentence_is_degenerate():
    report = coherence(make_document([[["a", "b"]]]))
    assert report.degenerate
    assert report.m == 1
    assert report.coherence == 0.0
    assert report.pair_similarities == ()


def test_disjoint_document_scores_zero():
    report = coherence(make_document([[["a"]], [["b"]], [["c"]], [["d"]]]))
    assert report.coherence == 0.0
    assert not report.degenerate


def test_matches_exact_oracle():
    rng = random.Random(17)
    for _ in range(200):
        doc = random_document(rng, max_sentences=7, min_sentences=1)
        expected = oracle_coherence(doc)
        assert coherence(doc).coherence == pytest.approx(float(expected), abs=1e-12)


def test_score_follows_sentence_order():
    rng = random.Random(19)
    for _ in range(100):
        doc = random_document(rng, max_sentences=6)
        order = list(range(doc.m))
        rng.shuffle(order)
        expected = oracle_coherence(reorder(doc, order))
        assert coherence(permute_document(doc, order)).coherence == pytest.approx(
            float(expected), abs=1e-12
        )


def test_is_deterministic(three_sentence):
    assert coherence(three_sentence) == coherence(three_sentence)


def test_unannotated_sentence_warns(three_sentence, caplog):
    bare = three_sentence.sentences[1].with_phrases(())
    doc = three_sentence.with_sentences(
        (three_sentence.sentences[0], bare, three_sentence.sentences[2])
    )
    report = coherence(doc)
    assert report.similarity(0, 1) == 0.0
    assert report.similarity(0, 2) == 0.5
    assert "sentence 1 has no phrases" in caplog.text

    with pytest.raises(MissingAnnotationError):
        coherence(doc, strict=True)


def test_explain_agrees_with_coherence(three_sentence):
    bundle = explain(three_sentence)
    assert bundle.report == coherence(three_sentence)
    assert bundle.pairs == ((0, 1), (0, 2), (1, 2))
    assert explain(make_document([[["a"]]])).graphs == ()


def test_report_dict(two_sentence_coref):
    payload = json.loads(json.dumps(report_to_dict(coherence(two_sentence_coref))))
    assert payload == {
        "doc_id": "two_sentence_coref",
        "m": 2,
        "coherence": 0.3125,
        "pairs": [{"i": 0, "j": 1, "sim": 0.625}],
        "degenerate": False,
    }


def test_bundle_dict(three_sentence):
    payload = bundle_to_dict(explain(three_sentence))
    assert payload["report"]["coherence"] == 0.5
    assert [(g["left_sentence"], g["right_sentence"]) for g in payload["graphs"]] == [
        (0, 1),
        (0, 2),
        (1, 2),
    ]


def test_two_identical_sentences():
    report = coherence(make_document([[["a", "b"]], [["a", "b"]]]))
    assert report.similarity(0, 1) == 1.0
    assert report.coherence == 0.5


def test_explain_lists_every_pair():
    doc = make_document([[["a"]], [["b"]], [["c"]], [["d"]]])
    assert explain(doc).pairs == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert len(explain(make_document([[["a"]], [["b"]]])).graphs) == 1


def test_order_matters_for_a_chained_document():
    doc = make_document([[["a", "b"]], [["b", "c"]], [["c", "d"]], [["d", "e"]], [["e", "f"]]])
    swapped = [0, 3, 2, 1, 4]
    expected = oracle_coherence(reorder(doc, swapped))
    assert expected != oracle_coherence(doc)
    assert coherence(permute_document(doc, swapped)).coherence == pytest.approx(float(expected))
    assert coherence(permute_document(doc, swapped)).coherence != coherence(doc).coherence


def test_repeated_sentence_pattern():
    pair = make_document([[["a", "b"]], [["b", "c"]]])
    repeated = make_document([[["a", "b"]], [["b", "c"]], [["a", "b"]], [["b", "c"]]])
    # pairs: 1/3, 1/2, 1/9, 1/3, 1/2, 1/3 over 4 sentences
    assert float(oracle_coherence(repeated)) == pytest.approx((1 / 3 + 1 / 2 + 1 / 9 + 1 / 3 + 1 / 2 + 1 / 3) / 4)
    assert coherence(repeated).coherence == pytest.approx(float(oracle_coherence(repeated)))
    assert coherence(pair).coherence == pytest.approx(1 / 6)


def test_chain_ids_and_order_do_not_matter(three_sentence):
    relabeled = replace(
        three_sentence,
        chains=tuple(
            replace(chain, chain_id=f"renamed-{n}")
            for n, chain in enumerate(reversed(three_sentence.chains))
        ),
    )
    assert coherence(relabeled).coherence == coherence(three_sentence).coherence


def test_coherence_bounds():
    rng = random.Random(31)
    for _ in range(200):
        doc = random_document(rng, max_sentences=7, min_sentences=1)
        assert 0.0 <= coherence(doc).coherence <= (doc.m - 1) / 2


def test_chains_never_lower_coherence():
    rng = random.Random(37)
    for _ in range(100):
        doc = random_document(rng, max_sentences=5)
        i, j = rng.sample(range(doc.m), 2)
        a = rng.randrange(len(doc.sentences[i].tokens))
        b = rng.randrange(len(doc.sentences[j].tokens))
        linked = replace(doc, chains=(CorefChain("x", (Mention(i, a, a), Mention(j, b, b))),))
        assert coherence(linked).coherence >= coherence(doc).coherence
