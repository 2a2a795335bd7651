"""
    JSON wire format of documents and corpora.

    One document per `.json` file, one document per line in `.jsonl` corpora.
    Plain `.txt` files are read with the lossy whitespace tokenizer.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, TextIO, Tuple, Union

import pydantic
from pydantic import BaseModel, ConfigDict

from src.documents.document import (
    CorefChain,
    Document,
    Mention,
    PhraseTuple,
    Sentence,
    Token,
    validate_document,
)
from src.errors import DocumentParseError, DocumentReadError, ValidationError

log = logging.getLogger(__name__)


class _Schema(BaseModel):
    model_config = ConfigDict(strict=True, extra="ignore", frozen=True)


class TokenSchema(_Schema):
    surface: str
    lemma: Optional[str] = None


class PhraseSchema(_Schema):
    subject: List[int] = []
    relation: List[int] = []
    object: List[int] = []


class SentenceSchema(_Schema):
    tokens: List[TokenSchema]
    phrases: List[PhraseSchema] = []


class MentionSchema(_Schema):
    sentence: int
    start: int
    end: int


class ChainSchema(_Schema):
    chain_id: str
    mentions: List[MentionSchema]


class DocumentSchema(_Schema):
    doc_id: str
    language: Optional[str] = None
    sentences: List[SentenceSchema]
    chains: List[ChainSchema] = []


def _format_loc(loc: Tuple[Union[int, str], ...]) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else part
    return path


def document_from_dict(raw: Any, source: Optional[str] = None) -> Document:
    try:
        schema = DocumentSchema.model_validate(raw)
    except pydantic.ValidationError as exc:
        error = exc.errors()[0]
        raise ValidationError(_format_loc(error["loc"]), error["msg"], source) from exc

    sentences = []
    for s, sentence in enumerate(schema.sentences):
        tokens = []
        for t, token in enumerate(sentence.tokens):
            if not token.surface:
                raise ValidationError(
                    f"sentences[{s}].tokens[{t}].surface", "surface must be non-empty", source
                )
            if token.lemma is not None and not token.lemma:
                raise ValidationError(
                    f"sentences[{s}].tokens[{t}].lemma", "lemma must be non-empty", source
                )
            tokens.append(Token.create(s, t, token.surface, token.lemma))
        phrases = tuple(
            PhraseTuple(tuple(p.subject), tuple(p.relation), tuple(p.object))
            for p in sentence.phrases
        )
        sentences.append(Sentence(s, tuple(tokens), phrases))

    chains = tuple(
        CorefChain(
            chain.chain_id,
            tuple(Mention(m.sentence, m.start, m.end) for m in chain.mentions),
        )
        for chain in schema.chains
    )
    doc = Document(schema.doc_id, tuple(sentences), chains, schema.language)

    try:
        return validate_document(doc)
    except ValidationError as exc:
        raise ValidationError(exc.path, exc.message, source) from exc


def parse_document(data: bytes, source: Optional[str] = None) -> Document:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DocumentParseError("invalid UTF-8", exc.start, source) from exc

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise DocumentParseError(exc.msg, offset, source) from exc

    return document_from_dict(raw, source)


def document_to_dict(doc: Document) -> Dict[str, Any]:
    raw: Dict[str, Any] = {"doc_id": doc.doc_id}
    if doc.language is not None:
        raw["language"] = doc.language

    raw["sentences"] = [
        {
            "tokens": [
                {"surface": token.surface}
                if token.lemma is None
                else {"surface": token.surface, "lemma": token.lemma}
                for token in sentence.tokens
            ],
            "phrases": [
                {
                    "subject": list(phrase.subject),
                    "relation": list(phrase.relation),
                    "object": list(phrase.object),
                }
                for phrase in sentence.phrases
            ],
        }
        for sentence in doc.sentences
    ]
    raw["chains"] = [
        {
            "chain_id": chain.chain_id,
            "mentions": [
                {"sentence": m.sentence_index, "start": m.start, "end": m.end}
                for m in chain.mentions
            ],
        }
        for chain in doc.chains
    ]
    return raw


def serialize_document(doc: Document) -> bytes:
    return json.dumps(document_to_dict(doc), ensure_ascii=False).encode("utf-8")


def tokenize_whitespace(text: str, doc_id: str) -> Document:
    """Lossy convenience reader: one sentence per non-blank line, whitespace tokens.

    No lemmas, phrases or chains are produced; punctuation stays attached to words.
    """
    sentences = []
    for line in text.splitlines():
        words = line.split()
        if not words:
            continue
        index = len(sentences)
        tokens = tuple(Token.create(index, t, word) for t, word in enumerate(words))
        sentences.append(Sentence(index, tokens))

    if not sentences:
        raise ValidationError("sentences", "text contains no sentence", doc_id)
    return Document(doc_id, tuple(sentences))


def read_corpus(path: Union[str, Path]) -> List[Document]:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise DocumentReadError(str(path), exc.strerror or str(exc)) from exc

    if path.suffix == ".jsonl":
        docs = []
        for number, line in enumerate(data.splitlines(), start=1):
            if line.strip():
                docs.append(parse_document(line, source=f"{path}:{number}"))
    elif path.suffix == ".txt":
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentParseError("invalid UTF-8", exc.start, str(path)) from exc
        log.warning(f"Tokenizing {path} on whitespace; punctuation and lemmas are lost.")
        docs = [tokenize_whitespace(text, path.stem)]
    else:
        docs = [parse_document(data, source=str(path))]

    log.info(f"Read {len(docs)} document(s) from {path}.")
    return docs


def write_corpus(docs: Iterable[Document], stream: TextIO) -> None:
    for doc in docs:
        stream.write(serialize_document(doc).decode("utf-8"))
        stream.write("\n")
