"""
    Document model: sentences made of tokens, phrase tuples over those tokens
    and coreference chains across sentences. Every value is immutable.
"""

import unicodedata
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from src.errors import ValidationError


def normalize(raw: str) -> str:
    """Comparison key of a surface form or lemma.

    NFC, case-folded, with leading/trailing punctuation stripped. A token made of
    punctuation only keeps its folded form so that the key is never empty.
    """
    if not raw:
        raise ValidationError("", "cannot normalize an empty string")

    folded = unicodedata.normalize("NFC", unicodedata.normalize("NFC", raw).casefold())
    start, end = 0, len(folded)
    while start < end and unicodedata.category(folded[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(folded[end - 1]).startswith("P"):
        end -= 1

    return folded[start:end] or folded


@dataclass(frozen=True)
class Token:
    sentence_index: int
    token_index: int
    surface: str
    lemma: Optional[str]
    key: str

    @classmethod
    def create(
        cls,
        sentence_index: int,
        token_index: int,
        surface: str,
        lemma: Optional[str] = None,
    ) -> "Token":
        key = normalize(lemma if lemma is not None else surface)
        return cls(sentence_index, token_index, surface, lemma, key)


@dataclass(frozen=True)
class PhraseTuple:
    subject: Tuple[int, ...] = ()
    relation: Tuple[int, ...] = ()
    object: Tuple[int, ...] = ()

    @property
    def roles(self) -> Tuple[Tuple[str, Tuple[int, ...]], ...]:
        return (
            ("subject", self.subject),
            ("relation", self.relation),
            ("object", self.object),
        )

    @property
    def token_indices(self) -> Tuple[int, ...]:
        return self.subject + self.relation + self.object


@dataclass(frozen=True)
class Sentence:
    index: int
    tokens: Tuple[Token, ...]
    phrases: Tuple[PhraseTuple, ...] = ()

    def with_phrases(self, phrases: Sequence[PhraseTuple]) -> "Sentence":
        return replace(self, phrases=tuple(phrases))

    def element_set(self, phrase: PhraseTuple) -> FrozenSet[str]:
        """Union of the keys of every token the phrase references."""
        return frozenset(self.tokens[i].key for i in phrase.token_indices)

    @property
    def text(self) -> str:
        return " ".join(token.surface for token in self.tokens)


@dataclass(frozen=True)
class Mention:
    sentence_index: int
    start: int
    end: int

    def positions(self) -> Iterator[Tuple[int, int]]:
        for token_index in range(self.start, self.end + 1):
            yield self.sentence_index, token_index


@dataclass(frozen=True)
class CorefChain:
    chain_id: str
    mentions: Tuple[Mention, ...]


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: Tuple[Sentence, ...]
    chains: Tuple[CorefChain, ...] = ()
    language: Optional[str] = field(default=None)

    @property
    def m(self) -> int:
        return len(self.sentences)

    @property
    def is_annotated(self) -> bool:
        return all(sentence.phrases for sentence in self.sentences)

    def with_sentences(self, sentences: Sequence[Sentence]) -> "Document":
        return replace(self, sentences=tuple(sentences))


def validate_document(doc: Document) -> Document:
    """Raises ValidationError naming the first violated invariant, else returns doc."""
    if not doc.sentences:
        raise ValidationError("sentences", "a document needs at least one sentence")

    for position, sentence in enumerate(doc.sentences):
        _validate_sentence(sentence, position, f"sentences[{position}]")

    for c, chain in enumerate(doc.chains):
        path = f"chains[{c}]"
        if len(chain.mentions) < 2:
            raise ValidationError(f"{path}.mentions", "a chain needs at least two mentions")
        for k, mention in enumerate(chain.mentions):
            _validate_mention(doc, mention, f"{path}.mentions[{k}]")

    return doc


def _validate_sentence(sentence: Sentence, position: int, path: str) -> None:
    if sentence.index != position:
        raise ValidationError(
            f"{path}", f"sentence index {sentence.index} does not match its position"
        )
    if not sentence.tokens:
        raise ValidationError(f"{path}.tokens", "a sentence needs at least one token")

    for t, token in enumerate(sentence.tokens):
        token_path = f"{path}.tokens[{t}]"
        if token.sentence_index != position or token.token_index != t:
            raise ValidationError(token_path, "token position fields are inconsistent")
        if not token.surface:
            raise ValidationError(f"{token_path}.surface", "surface must be non-empty")
        if token.lemma is not None and not token.lemma:
            raise ValidationError(f"{token_path}.lemma", "lemma must be non-empty")
        if token.key != normalize(token.lemma if token.lemma is not None else token.surface):
            raise ValidationError(f"{token_path}.key", "key is not the normalized form")

    for p, phrase in enumerate(sentence.phrases):
        _validate_phrase(phrase, len(sentence.tokens), f"{path}.phrases[{p}]")


def _validate_phrase(phrase: PhraseTuple, token_count: int, path: str) -> None:
    claimed: Dict[int, str] = {}
    for role, indices in phrase.roles:
        for k, index in enumerate(indices):
            index_path = f"{path}.{role}[{k}]"
            if not 0 <= index < token_count:
                raise ValidationError(
                    index_path, f"token index {index} outside 0..{token_count - 1}"
                )
            owner = claimed.setdefault(index, role)
            if owner != role:
                raise ValidationError(
                    index_path, f"token {index} is already part of the {owner}"
                )

    if not claimed:
        raise ValidationError(path, "a phrase must reference at least one token")


def _validate_mention(doc: Document, mention: Mention, path: str) -> None:
    if not 0 <= mention.sentence_index < doc.m:
        raise ValidationError(
            f"{path}.sentence", f"sentence {mention.sentence_index} does not exist"
        )
    if mention.start < 0:
        raise ValidationError(f"{path}.start", "start must be non-negative")
    if mention.end < mention.start:
        raise ValidationError(f"{path}.end", "end precedes start")

    token_count = len(doc.sentences[mention.sentence_index].tokens)
    if mention.end >= token_count:
        raise ValidationError(
            f"{path}.end", f"end {mention.end} outside sentence of {token_count} tokens"
        )


def permute_document(doc: Document, order: Sequence[int]) -> Document:
    """New document whose sentence at position p is the old sentence order[p]."""
    m = doc.m
    if len(order) != m or sorted(order) != list(range(m)):
        raise ValidationError("order", f"{list(order)} is not a permutation of 0..{m - 1}")

    new_position: List[int] = [0] * m
    for position, old_index in enumerate(order):
        new_position[old_index] = position

    sentences = tuple(
        _reindex_sentence(doc.sentences[old_index], position)
        for position, old_index in enumerate(order)
    )
    chains = tuple(
        replace(
            chain,
            mentions=tuple(
                replace(mention, sentence_index=new_position[mention.sentence_index])
                for mention in chain.mentions
            ),
        )
        for chain in doc.chains
    )

    return replace(doc, sentences=sentences, chains=chains)


def _reindex_sentence(sentence: Sentence, index: int) -> Sentence:
    if sentence.index == index:
        return sentence
    tokens = tuple(replace(token, sentence_index=index) for token in sentence.tokens)
    return replace(sentence, index=index, tokens=tokens)
