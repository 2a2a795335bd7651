import os

import pytest

from src.errors import EmptyCorpusError, ValidationError
from src.evaluation.permutations import generate_permutations
from src.evaluation.prng import derive_seed
from src.evaluation.synthetic import synthesize_corpus
from src.evaluation.tasks import (
    DdtConfig,
    ItConfig,
    Task,
    TiePolicy,
    run_ddt,
    run_it,
    summarize_reports,
)
from tests.oracles import make_document


@pytest.fixture(scope="module")
def chained_corpus():
    return synthesize_corpus(num_docs=50, m=6, overlap=0.9, seed=7)


@pytest.fixture(scope="module")
def unrelated_corpus():
    return synthesize_corpus(num_docs=20, m=6, overlap=0.0, seed=7)


def test_tie_policy_aliases():
    assert TiePolicy.parse("fail") is TiePolicy.FAILURE
    assert TiePolicy.parse("tie-is-half") is TiePolicy.HALF
    assert TiePolicy.HALF.tie_credit == 0.5
    with pytest.raises(ValidationError):
        TiePolicy.parse("coin-flip")


@pytest.mark.parametrize(
    "kwargs",
    [{"permutations_per_doc": 0}, {"seed": -1}, {"seed": 1 << 64}, {"tie_policy": "never"}],
)
def test_ddt_config_validation(kwargs):
    with pytest.raises(ValidationError):
        DdtConfig(**kwargs)


def test_config_echo():
    assert DdtConfig(seed=42, tie_policy="half").echo() == {
        "permutations_per_doc": 20,
        "seed": 42,
        "tie_policy": "tie-is-half",
    }
    assert ItConfig().echo() == {"seed": 0, "tie_policy": "tie-is-failure"}


def test_ddt_on_a_chained_corpus(chained_corpus):
    report = run_ddt(chained_corpus, DdtConfig(permutations_per_doc=20, seed=42))
    assert report.task is Task.DDT
    assert report.accuracy >= 0.9
    assert len(report.per_doc) == 50
    assert all(outcome.trials == 20 for outcome in report.per_doc)
    assert report.config == {
        "task": "ddt",
        "permutations_per_doc": 20,
        "seed": 42,
        "tie_policy": "tie-is-failure",
    }


def test_it_on_a_chained_corpus(chained_corpus):
    report = run_it(chained_corpus, ItConfig())
    assert report.accuracy >= 0.9
    assert all(outcome.trials == 6 for outcome in report.per_doc)


def test_no_overlap_is_all_ties(unrelated_corpus):
    assert run_ddt(unrelated_corpus, DdtConfig(seed=1)).accuracy == 0.0
    assert run_it(unrelated_corpus, ItConfig()).accuracy == 0.0
    assert run_ddt(unrelated_corpus, DdtConfig(seed=1, tie_policy="half")).accuracy == 0.5
    assert run_it(unrelated_corpus, ItConfig(tie_policy="half")).accuracy == 0.5


def test_reports_do_not_depend_on_thread_count(chained_corpus):
    cfg = DdtConfig(permutations_per_doc=10, seed=3)
    single = run_ddt(chained_corpus[:10], cfg, threads=1)
    many = run_ddt(chained_corpus[:10], cfg, threads=os.cpu_count() or 4)
    assert single == many
    assert single.to_dict() == many.to_dict()


def test_same_seed_same_report(chained_corpus):
    docs = chained_corpus[:10]
    first = run_ddt(docs, DdtConfig(permutations_per_doc=5, seed=1))
    again = run_ddt(docs, DdtConfig(permutations_per_doc=5, seed=1))
    assert first == again


def test_two_sentence_documents():
    doc = make_document([[["a", "b"]], [["b", "c"]]])
    # the only permutation is the reversal, which scores the same
    assert run_ddt([doc], DdtConfig()).per_doc[0].trials == 1
    assert run_ddt([doc], DdtConfig()).accuracy == 0.0
    assert run_it([doc], ItConfig()).accuracy == 0.0


def test_it_rewards_the_unique_best_position():
    doc = make_document([[["a", "b"]], [["b", "c"]], [["c", "d"]], [["x", "y"]]])
    report = run_it([doc], ItConfig(tie_policy="half"))
    outcome = report.per_doc[0]
    assert outcome.trials == 4
    assert 0.0 < report.accuracy <= 1.0


def test_single_sentence_documents_are_skipped(caplog, chained_corpus):
    single = make_document([[["a"]]], doc_id="lonely")
    report = run_ddt([single] + chained_corpus[:3], DdtConfig(permutations_per_doc=5))
    assert report.skipped == ("lonely",)
    assert [o.doc_id for o in report.per_doc] == [d.doc_id for d in chained_corpus[:3]]
    assert "lonely" in caplog.text


def test_corpus_without_scorable_documents():
    with pytest.raises(EmptyCorpusError):
        run_ddt([make_document([[["a"]]])], DdtConfig())
    with pytest.raises(EmptyCorpusError):
        run_it([], ItConfig())


def test_report_frame(chained_corpus):
    report = run_it(chained_corpus[:4], ItConfig())
    frame = report.to_frame()
    assert list(frame.columns) == ["doc_id", "trials", "successes"]
    assert frame["trials"].sum() == 24
    assert report.to_dict()["per_doc"][0]["doc_id"] == chained_corpus[0].doc_id


def test_summary_table(chained_corpus, unrelated_corpus):
    reports = {
        "chained": [run_ddt(chained_corpus[:5], DdtConfig()), run_it(chained_corpus[:5], ItConfig())],
        "unrelated": [
            run_ddt(unrelated_corpus[:5], DdtConfig()),
            run_it(unrelated_corpus[:5], ItConfig()),
        ],
    }
    table = summarize_reports(reports)
    assert list(table.columns) == ["corpus", "ddt", "it"]
    assert list(table["corpus"]) == ["chained", "unrelated"]
    assert table.loc[1, "ddt"] == 0.0


def _chain_document(m, doc_id="chain"):
    letters = "abcdefghijklmnop"
    return make_document([[[letters[k], letters[k + 1]]] for k in range(m)], doc_id=doc_id)


def test_ddt_on_a_constructed_chain():
    doc = _chain_document(6)
    cfg = DdtConfig(permutations_per_doc=20, seed=9)
    perms = generate_permutations(6, 20, derive_seed(9, 0))
    reversals = sum(p == [5, 4, 3, 2, 1, 0] for p in perms)

    report = run_ddt([doc], cfg)
    # every order but the reversal breaks at least one adjacent pair
    assert report.per_doc[0].successes == 20 - reversals


def test_reversal_ties_with_the_original():
    doc = _chain_document(4)
    report = run_ddt([doc], DdtConfig(permutations_per_doc=23, tie_policy="half"))
    assert report.per_doc[0].trials == 23
    assert report.per_doc[0].successes == 22.5


def test_identical_sentences_always_tie():
    doc = make_document([[["a", "b"]]] * 4)
    assert run_ddt([doc], DdtConfig()).accuracy == 0.0
    assert run_it([doc], ItConfig()).accuracy == 0.0
    assert run_it([doc], ItConfig(tie_policy="half")).accuracy == 0.5


def test_it_trial_count_for_two_sentences():
    doc = make_document([[["a", "b"]], [["c", "d"]]])
    outcome = run_it([doc], ItConfig()).per_doc[0]
    assert outcome.trials == 2


def test_it_on_a_constructed_chain():
    assert run_it([_chain_document(5)], ItConfig()).accuracy == 1.0


def test_accuracy_is_the_ratio_of_totals(chained_corpus):
    report = run_ddt(chained_corpus[:8] + [_chain_document(3)], DdtConfig(permutations_per_doc=7))
    trials = sum(o.trials for o in report.per_doc)
    successes = sum(o.successes for o in report.per_doc)
    assert report.accuracy == successes / trials
    assert 0.0 <= report.accuracy <= 1.0
    assert report.per_doc[-1].trials == 5


@pytest.mark.parametrize("m", [4, 6, 8])
def test_overlap_beats_no_overlap(m):
    cfg = DdtConfig(permutations_per_doc=10, seed=5)
    high = run_ddt(synthesize_corpus(10, m, 0.8, seed=3), cfg)
    none = run_ddt(synthesize_corpus(10, m, 0.0, seed=3), cfg)
    assert high.accuracy > none.accuracy == 0.0
