"""
    Phrase tuples for sentences that carry no annotation.

    The heuristic is a positional subject/relation/object splitter driven by a
    verb lexicon: everything before the first lexicon verb is the subject, the
    contiguous run of lexicon verbs is the relation and the rest is the object.
    Nothing is removed from the sentence, stop words included.
"""

import logging
import os
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from pathlib import Path
from typing import FrozenSet, List, Optional, Union

from src.documents.document import Document, PhraseTuple, Sentence, normalize
from src.errors import MissingAnnotationError, ValidationError

log = logging.getLogger(__name__)

LEXICON_ENV_VAR = "COHESION_LEXICON"
DEFAULT_LEXICON = Path(__file__).parent / "resources" / "verbs.txt"


class ExtractionMode(str, Enum):
    ANNOTATED_ONLY = "annotated-only"
    HEURISTIC_FALLBACK = "heuristic-fallback"
    HEURISTIC_ALWAYS = "heuristic-always"


@lru_cache(maxsize=8)
def _read_lexicon(path: str) -> FrozenSet[str]:
    verbs = set()
    with open(path, encoding="utf-8") as f:
        for line in f:
            entry = line.split("#", 1)[0].strip()
            if entry:
                verbs.add(normalize(entry))
    log.info(f"Loaded {len(verbs)} verb forms from {path}.")
    return frozenset(verbs)


def resolve_lexicon_path(path: Optional[Union[str, Path]] = None) -> Path:
    """Explicit path first, then the environment variable, then the built-in list."""
    candidate = path or os.environ.get(LEXICON_ENV_VAR) or DEFAULT_LEXICON
    resolved = Path(candidate)
    if not resolved.is_file():
        raise ValidationError("extractor.verb_lexicon_path", f"no lexicon file at {resolved}")
    return resolved


def load_lexicon(path: Optional[Union[str, Path]] = None) -> FrozenSet[str]:
    return _read_lexicon(str(resolve_lexicon_path(path)))


@dataclass(frozen=True)
class ExtractorConfig:
    mode: ExtractionMode = ExtractionMode.HEURISTIC_FALLBACK
    verb_lexicon_path: Optional[str] = None

    def __post_init__(self) -> None:
        try:
            mode = ExtractionMode(self.mode)
        except ValueError as exc:
            choices = ", ".join(m.value for m in ExtractionMode)
            raise ValidationError(
                "extractor.mode", f"unknown mode {self.mode!r}, expected one of {choices}"
            ) from exc
        object.__setattr__(self, "mode", mode)

        if mode is not ExtractionMode.ANNOTATED_ONLY:
            resolve_lexicon_path(self.verb_lexicon_path)

    @cached_property
    def lexicon(self) -> FrozenSet[str]:
        return load_lexicon(self.verb_lexicon_path)


def heuristic_phrase(sentence: Sentence, lexicon: FrozenSet[str]) -> PhraseTuple:
    keys = [token.key for token in sentence.tokens]
    verb = next((i for i, key in enumerate(keys) if key in lexicon), None)
    if verb is None:
        return PhraseTuple(subject=tuple(range(len(keys))))

    end = verb
    while end < len(keys) and keys[end] in lexicon:
        end += 1

    return PhraseTuple(
        subject=tuple(range(verb)),
        relation=tuple(range(verb, end)),
        object=tuple(range(end, len(keys))),
    )


def extract_phrases(sentence: Sentence, config: ExtractorConfig) -> List[PhraseTuple]:
    if config.mode is ExtractionMode.ANNOTATED_ONLY:
        if not sentence.phrases:
            raise MissingAnnotationError(sentence.index)
        return list(sentence.phrases)

    if config.mode is ExtractionMode.HEURISTIC_FALLBACK and sentence.phrases:
        return list(sentence.phrases)

    return [heuristic_phrase(sentence, config.lexicon)]


def annotate_document(doc: Document, config: ExtractorConfig) -> Document:
    """Returns doc with every sentence carrying at least one phrase tuple."""
    sentences = []
    for sentence in doc.sentences:
        try:
            phrases = extract_phrases(sentence, config)
        except MissingAnnotationError as exc:
            raise MissingAnnotationError(exc.sentence_index, doc.doc_id) from exc
        sentences.append(
            sentence if tuple(phrases) == sentence.phrases else sentence.with_phrases(phrases)
        )

    return doc.with_sentences(sentences)
