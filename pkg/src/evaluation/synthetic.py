"""
    Synthetic chained corpora for desk-scale runs of the evaluation protocols.

    Sentence i shares a block of words with sentence i-1 and another with
    sentence i+1, and fills the rest with words seen nowhere else in the document,
    so only adjacent sentences overlap lexically.
"""

import logging
from typing import List, Set, Tuple

from src.documents.document import (
    CorefChain,
    Document,
    Mention,
    PhraseTuple,
    Sentence,
    Token,
)
from src.errors import ValidationError
from src.evaluation.prng import Xoshiro256StarStar, derive_seed

log = logging.getLogger(__name__)

CONSONANTS = "bdfgklmnprstvz"
VOWELS = "aeiou"


class _WordSource:
    def __init__(self, rng: Xoshiro256StarStar) -> None:
        self.rng = rng
        self.used: Set[str] = set()

    def word(self) -> str:
        while True:
            word = "".join(
                CONSONANTS[self.rng.below(len(CONSONANTS))] + VOWELS[self.rng.below(len(VOWELS))]
                for _ in range(3)
            )
            if word not in self.used:
                self.used.add(word)
                return word

    def words(self, count: int) -> List[str]:
        return [self.word() for _ in range(count)]


def shared_block_size(overlap: float, elements_per_sentence: int) -> int:
    """Words shared across each sentence boundary: overlap * half a sentence, rounded half up."""
    return int(overlap * (elements_per_sentence // 2) + 0.5)


def _synthesize_document(
    doc_id: str, m: int, overlap: float, elements: int, coref: bool, seed: int
) -> Document:
    rng = Xoshiro256StarStar(seed)
    source = _WordSource(rng)
    shared = shared_block_size(overlap, elements)
    blocks = [source.words(shared) for _ in range(m - 1)]

    sentences = []
    fresh_spans = []
    for i in range(m):
        left = blocks[i - 1] if i > 0 else []
        right = blocks[i] if i < m - 1 else []
        fresh = source.words(elements - len(left) - len(right))
        fresh_spans.append((len(left), len(fresh)))

        words = left + fresh + right
        tokens = tuple(Token.create(i, t, word) for t, word in enumerate(words))
        half = len(words) // 2
        phrase = PhraseTuple(
            subject=tuple(range(half)), object=tuple(range(half, len(words)))
        )
        sentences.append(Sentence(i, tokens, (phrase,)))

    chains: Tuple[CorefChain, ...] = ()
    if coref:
        mentions = []
        for i in (0, m - 1):
            start, count = fresh_spans[i]
            position = start + rng.below(count)
            mentions.append(Mention(i, position, position))
        chains = (CorefChain("c0", tuple(mentions)),)

    return Document(doc_id, tuple(sentences), chains)


def synthesize_corpus(
    num_docs: int,
    m: int,
    overlap: float,
    seed: int,
    elements_per_sentence: int = 8,
    coref: bool = False,
) -> List[Document]:
    if num_docs < 1:
        raise ValidationError("num_docs", "at least one document must be generated")
    if m < 3:
        raise ValidationError("m", f"synthetic documents need at least 3 sentences, got {m}")
    if not 0.0 <= overlap <= 1.0:
        raise ValidationError("overlap", f"{overlap} is outside [0, 1]")
    if elements_per_sentence < 2:
        raise ValidationError("elements_per_sentence", "must be at least 2")

    log.info(
        f"Synthesizing {num_docs} document(s), M={m}, overlap={overlap}, "
        f"{shared_block_size(overlap, elements_per_sentence)} shared word(s) per boundary."
    )
    return [
        _synthesize_document(
            f"synthetic-{seed}-{n:04d}",
            m,
            overlap,
            elements_per_sentence,
            coref,
            derive_seed(seed, n),
        )
        for n in range(num_docs)
    ]
