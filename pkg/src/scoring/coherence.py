import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

from src.documents.document import Document
from src.errors import MissingAnnotationError
from src.graph.cohesion_graph import (
    CohesionGraph,
    build_coref_index,
    build_graph,
    graph_similarity,
)
from src.graph.export import graph_to_dict

log = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class CoherenceReport:
    doc_id: str
    m: int
    coherence: float
    pair_similarities: Tuple[Tuple[Pair, float], ...]
    degenerate: bool

    def similarity(self, i: int, j: int) -> float:
        return dict(self.pair_similarities)[(min(i, j), max(i, j))]


@dataclass(frozen=True)
class ExplanationBundle:
    report: CoherenceReport
    graphs: Tuple[CohesionGraph, ...]

    @property
    def pairs(self) -> Tuple[Pair, ...]:
        return tuple((g.left_sentence, g.right_sentence) for g in self.graphs)


def _pair_graphs(doc: Document) -> Tuple[CohesionGraph, ...]:
    # i ascending, then j; the reduction below relies on this order
    index = build_coref_index(doc)
    return tuple(
        build_graph(doc, i, j, index)
        for i in range(doc.m)
        for j in range(i + 1, doc.m)
    )


def _report(doc: Document, graphs: Tuple[CohesionGraph, ...]) -> CoherenceReport:
    if doc.m == 1:
        return CoherenceReport(doc.doc_id, 1, 0.0, (), True)

    pairs = []
    total = 0.0
    for graph in graphs:
        sim = graph_similarity(graph)
        pairs.append(((graph.left_sentence, graph.right_sentence), sim))
        total += sim

    return CoherenceReport(doc.doc_id, doc.m, total / doc.m, tuple(pairs), False)


def _check_annotated(doc: Document, strict: bool) -> None:
    for sentence in doc.sentences:
        if not sentence.phrases:
            if strict:
                raise MissingAnnotationError(sentence.index, doc.doc_id)
            log.warning(
                f"Document {doc.doc_id!r}, sentence {sentence.index} has no phrases; "
                "its pairs score 0."
            )


def coherence(doc: Document, strict: bool = False) -> CoherenceReport:
    """Coh(T): sum of sim(s_i, s_j) over unordered pairs i < j, divided by M.

    With ``strict`` a sentence without phrases raises MissingAnnotationError
    instead of contributing zero-similarity pairs.
    """
    _check_annotated(doc, strict)
    return _report(doc, _pair_graphs(doc))


def explain(doc: Document, strict: bool = False) -> ExplanationBundle:
    _check_annotated(doc, strict)
    graphs = _pair_graphs(doc)
    return ExplanationBundle(_report(doc, graphs), graphs)


def report_to_dict(report: CoherenceReport) -> Dict[str, Any]:
    return {
        "doc_id": report.doc_id,
        "m": report.m,
        "coherence": report.coherence,
        "pairs": [{"i": i, "j": j, "sim": sim} for (i, j), sim in report.pair_similarities],
        "degenerate": report.degenerate,
    }


def bundle_to_dict(bundle: ExplanationBundle) -> Dict[str, Any]:
    return {
        "report": report_to_dict(bundle.report),
        "graphs": [graph_to_dict(graph) for graph in bundle.graphs],
    }
