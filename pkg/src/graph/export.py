"""
    Explanation exports of cohesion graphs: networkx, JSON and Graphviz DOT.
"""

from typing import Any, Dict, Iterable, List

import networkx as nx

from src.documents.document import Document, PhraseTuple, Sentence
from src.graph.cohesion_graph import CohesionGraph, graph_similarity

LEFT, RIGHT = 0, 1


def phrase_label(sentence: Sentence, phrase: PhraseTuple) -> str:
    parts = [
        " ".join(sentence.tokens[i].surface for i in indices) or "-"
        for _, indices in phrase.roles
    ]
    return " | ".join(parts)


def to_networkx(graph: CohesionGraph, doc: Document) -> nx.DiGraph:
    left = doc.sentences[graph.left_sentence]
    right = doc.sentences[graph.right_sentence]

    g = nx.DiGraph(left_sentence=graph.left_sentence, right_sentence=graph.right_sentence)
    for l, phrase in enumerate(left.phrases):  # noqa: E741
        g.add_node((LEFT, l), bipartite=LEFT, label=phrase_label(left, phrase))
    for m, phrase in enumerate(right.phrases):
        g.add_node((RIGHT, m), bipartite=RIGHT, label=phrase_label(right, phrase))
    for edge in graph.edges:
        g.add_edge(
            (LEFT, edge.l),
            (RIGHT, edge.m),
            weight=edge.weight,
            coref_override=edge.coref_override,
        )
    return g


def graph_to_dict(graph: CohesionGraph) -> Dict[str, Any]:
    return {
        "left_sentence": graph.left_sentence,
        "right_sentence": graph.right_sentence,
        "edges": [
            {
                "l": edge.l,
                "m": edge.m,
                "weight": edge.weight,
                "coref_override": edge.coref_override,
            }
            for edge in graph.edges
        ],
    }


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(graphs: Iterable[CohesionGraph], doc: Document) -> str:
    lines: List[str] = ["digraph cohesion {", "  rankdir=LR;"]

    for graph in graphs:
        i, j = graph.left_sentence, graph.right_sentence
        g = to_networkx(graph, doc)
        side = {LEFT: f"s{i}", RIGHT: f"s{j}"}

        lines.append(f"  subgraph cluster_{i}_{j} {{")
        lines.append(f"    label={_quote(f's{i} - s{j} sim {graph_similarity(graph):.4f}')};")
        for (part, k), data in g.nodes(data=True):
            node_id = _quote(f"{i}_{j}_{side[part]}_p{k}")
            label = _quote(f"{side[part]}.p{k}: {data['label']}")
            lines.append(f"    {node_id} [label={label}];")
        for (_, l), (_, m), data in g.edges(data=True):  # noqa: E741
            attrs = f"label={_quote(format(data['weight'], '.4f'))}"
            if data["coref_override"]:
                attrs += ", style=bold"
            source = _quote(f"{i}_{j}_s{i}_p{l}")
            target = _quote(f"{i}_{j}_s{j}_p{m}")
            lines.append(f"    {source} -> {target} [{attrs}];")
        lines.append("  }")

    lines.append("}")
    return "\n".join(lines) + "\n"
