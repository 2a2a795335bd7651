"""
    Bipartite cohesion graph between the phrase sets of two sentences.

    Edge weight between phrases l and m is |A ∩ B| / |A ∪ B| over their sets of
    normalized token keys, forced to 1 when a token of l and a token of m belong
    to the same coreference chain. Sentence similarity is the sum of the edge
    weights divided by |E| * |i - j|.
"""

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Mapping, Set, Tuple

from src.documents.document import Document, PhraseTuple, Sentence
from src.errors import InvalidPairError

Position = Tuple[int, int]
CorefIndex = Mapping[Position, FrozenSet[str]]


@dataclass(frozen=True)
class GraphEdge:
    l: int  # noqa: E741
    m: int
    weight: float
    coref_override: bool


@dataclass(frozen=True)
class CohesionGraph:
    left_sentence: int
    right_sentence: int
    edges: Tuple[GraphEdge, ...]

    @property
    def total_weight(self) -> float:
        # l-then-m order, the order edges are built in
        total = 0.0
        for edge in self.edges:
            total += edge.weight
        return total


def build_coref_index(doc: Document) -> CorefIndex:
    index: Dict[Position, Set[str]] = {}
    for chain in doc.chains:
        for mention in chain.mentions:
            for position in mention.positions():
                index.setdefault(position, set()).add(chain.chain_id)

    return MappingProxyType({pos: frozenset(ids) for pos, ids in index.items()})


def _phrase_chains(sentence: Sentence, phrase: PhraseTuple, index: CorefIndex) -> Set[str]:
    chains: Set[str] = set()
    for token_index in phrase.token_indices:
        chains |= index.get((sentence.index, token_index), frozenset())
    return chains


def edge_weight(
    left: Sentence,
    phrase_l: PhraseTuple,
    right: Sentence,
    phrase_m: PhraseTuple,
    index: CorefIndex,
) -> Tuple[float, bool]:
    if _phrase_chains(left, phrase_l, index) & _phrase_chains(right, phrase_m, index):
        return 1.0, True

    a = left.element_set(phrase_l)
    b = right.element_set(phrase_m)
    unique = len(a | b)
    if unique == 0:
        return 0.0, False
    return len(a & b) / unique, False


def build_graph(doc: Document, i: int, j: int, index: CorefIndex) -> CohesionGraph:
    if i == j:
        raise InvalidPairError(i, j)

    # Lower index on the left; the weight itself is symmetric.
    lo, hi = min(i, j), max(i, j)
    left, right = doc.sentences[lo], doc.sentences[hi]
    edges = []
    for l, phrase_l in enumerate(left.phrases):  # noqa: E741
        for m, phrase_m in enumerate(right.phrases):
            weight, override = edge_weight(left, phrase_l, right, phrase_m, index)
            edges.append(GraphEdge(l, m, weight, override))

    return CohesionGraph(lo, hi, tuple(edges))


def graph_similarity(graph: CohesionGraph) -> float:
    if not graph.edges:
        return 0.0
    distance = graph.right_sentence - graph.left_sentence
    return graph.total_weight / (len(graph.edges) * distance)


def similarity(doc: Document, i: int, j: int, index: CorefIndex) -> float:
    return graph_similarity(build_graph(doc, i, j, index))
