import json

import networkx as nx
from networkx.algorithms import bipartite

from src.documents.document import Sentence, Token
from src.graph.export import LEFT, RIGHT, graph_to_dict, phrase_label, render_dot, to_networkx
from src.scoring.coherence import explain


def test_dot_matches_golden(two_sentence_coref, golden_dir):
    bundle = explain(two_sentence_coref)
    expected = (golden_dir / "two_sentence_coref.dot").read_text(encoding="utf-8")
    assert render_dot(bundle.graphs, two_sentence_coref) == expected


def test_dot_is_stable(three_sentence):
    bundle = explain(three_sentence)
    first = render_dot(bundle.graphs, three_sentence)
    assert first == render_dot(explain(three_sentence).graphs, three_sentence)
    assert first.count("subgraph cluster_") == 3
    assert 'label="s0 - s2 sim 0.5000"' in first


def test_dot_escapes_quotes(two_sentence_coref):
    sentence = two_sentence_coref.sentences[0]
    tokens = (Token.create(0, 0, 'Ma"ry'),) + sentence.tokens[1:]
    doc = two_sentence_coref.with_sentences(
        (Sentence(0, tokens, sentence.phrases),) + two_sentence_coref.sentences[1:]
    )
    assert 'Ma\\"ry' in render_dot(explain(doc).graphs, doc)


def test_phrase_label_marks_empty_roles(two_sentence_coref):
    sentence = two_sentence_coref.sentences[1]
    assert phrase_label(sentence, sentence.phrases[1]) == "John | laughed | -"


def test_networkx_graph_is_bipartite(two_sentence_coref):
    graph = explain(two_sentence_coref).graphs[0]
    g = to_networkx(graph, two_sentence_coref)

    assert bipartite.is_bipartite(g.to_undirected())
    left = {n for n, side in g.nodes(data="bipartite") if side == LEFT}
    assert left == {(LEFT, 0)}
    assert g.number_of_nodes() == 3
    assert g.edges[(LEFT, 0), (RIGHT, 0)]["coref_override"]
    assert g.edges[(LEFT, 0), (RIGHT, 1)]["weight"] == 0.25
    assert g.graph["left_sentence"] == 0


def test_networkx_keeps_nodes_without_edges(three_sentence):
    bare = three_sentence.sentences[2].with_phrases(())
    doc = three_sentence.with_sentences(three_sentence.sentences[:2] + (bare,))
    graph = explain(doc).graphs[1]
    g = to_networkx(graph, doc)
    assert isinstance(g, nx.DiGraph)
    assert g.number_of_nodes() == 1
    assert g.number_of_edges() == 0


def test_graph_dict_is_json(two_sentence_coref):
    graph = explain(two_sentence_coref).graphs[0]
    payload = json.loads(json.dumps(graph_to_dict(graph)))
    assert payload == {
        "left_sentence": 0,
        "right_sentence": 1,
        "edges": [
            {"l": 0, "m": 0, "weight": 1.0, "coref_override": True},
            {"l": 0, "m": 1, "weight": 0.25, "coref_override": False},
        ],
    }
