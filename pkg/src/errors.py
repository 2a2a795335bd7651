from typing import Optional


class CohesionError(Exception):
    """Base class for every error raised by the scoring pipeline."""


class DocumentReadError(CohesionError):
    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"cannot read {path}: {reason}")
        self.path = path


class DocumentParseError(CohesionError):
    def __init__(self, message: str, offset: int, source: Optional[str] = None) -> None:
        where = f"{source}: " if source else ""
        super().__init__(f"{where}{message} (byte offset {offset})")
        self.offset = offset
        self.source = source


class ValidationError(CohesionError):
    def __init__(self, path: str, message: str, source: Optional[str] = None) -> None:
        where = f"{source}: " if source else ""
        located = f"{path}: {message}" if path else message
        super().__init__(f"{where}{located}")
        self.path = path
        self.message = message
        self.source = source


class MissingAnnotationError(CohesionError):
    def __init__(self, sentence_index: int, doc_id: Optional[str] = None) -> None:
        where = f"document {doc_id!r}, " if doc_id else ""
        super().__init__(
            f"{where}sentence {sentence_index} has no phrase annotation "
            "and the extractor runs in annotated-only mode"
        )
        self.sentence_index = sentence_index
        self.doc_id = doc_id


class InvalidPairError(CohesionError):
    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"sentence pair ({i}, {j}) is not a pair of distinct sentences")


class DegenerateDocumentError(CohesionError):
    pass


class EmptyCorpusError(CohesionError):
    pass


class UsageError(CohesionError):
    pass
