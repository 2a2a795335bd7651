"""
    Document discrimination (DDT) and insertion (IT) protocols.

    DDT: the original order must score strictly higher than each of a set of
    seeded random permutations. IT: every sentence is removed and re-inserted at
    every position; the original position must be the strict best.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.documents.document import Document, permute_document
from src.errors import EmptyCorpusError, ValidationError
from src.evaluation.permutations import generate_permutations, insertion_order
from src.evaluation.prng import MASK64, derive_seed
from src.scoring.coherence import coherence

log = logging.getLogger(__name__)


class Task(str, Enum):
    DDT = "ddt"
    IT = "it"


class TiePolicy(str, Enum):
    FAILURE = "tie-is-failure"
    HALF = "tie-is-half"

    @classmethod
    def parse(cls, value: Any) -> "TiePolicy":
        aliases = {"fail": cls.FAILURE, "half": cls.HALF}
        if isinstance(value, str) and value in aliases:
            return aliases[value]
        try:
            return cls(value)
        except ValueError as exc:
            raise ValidationError("tie_policy", f"unknown tie policy {value!r}") from exc

    @property
    def tie_credit(self) -> float:
        return 0.5 if self is TiePolicy.HALF else 0.0


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MASK64:
        raise ValidationError("seed", f"{seed!r} is not an unsigned 64-bit integer")
    return seed


@dataclass(frozen=True)
class DdtConfig:
    permutations_per_doc: int = 20
    seed: int = 0
    tie_policy: TiePolicy = TiePolicy.FAILURE

    def __post_init__(self) -> None:
        if self.permutations_per_doc < 1:
            raise ValidationError("permutations_per_doc", "must be at least 1")
        _check_seed(self.seed)
        object.__setattr__(self, "tie_policy", TiePolicy.parse(self.tie_policy))

    def echo(self) -> Dict[str, Any]:
        return {
            "permutations_per_doc": self.permutations_per_doc,
            "seed": self.seed,
            "tie_policy": self.tie_policy.value,
        }


@dataclass(frozen=True)
class ItConfig:
    seed: int = 0
    tie_policy: TiePolicy = TiePolicy.FAILURE

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        object.__setattr__(self, "tie_policy", TiePolicy.parse(self.tie_policy))

    def echo(self) -> Dict[str, Any]:
        return {"seed": self.seed, "tie_policy": self.tie_policy.value}


@dataclass(frozen=True)
class DocOutcome:
    doc_id: str
    trials: int
    successes: float


@dataclass(frozen=True)
class EvalReport:
    task: Task
    per_doc: Tuple[DocOutcome, ...]
    accuracy: float
    config: Dict[str, Any] = field(default_factory=dict)
    skipped: Tuple[str, ...] = ()

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(o.doc_id, o.trials, o.successes) for o in self.per_doc],
            columns=["doc_id", "trials", "successes"],
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "task": self.task.value,
            "accuracy": self.accuracy,
            "config": self.config,
            "per_doc": [
                {"doc_id": o.doc_id, "trials": o.trials, "successes": o.successes}
                for o in self.per_doc
            ],
            "skipped": list(self.skipped),
        }


# Two scores within these tolerances tie.
TIE_RTOL = 1e-12
TIE_ATOL = 1e-15


def _score(doc: Document) -> float:
    return coherence(doc).coherence


def _ties(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=TIE_RTOL, abs_tol=TIE_ATOL)


def _ddt_document(doc: Document, stream: int, cfg: DdtConfig) -> DocOutcome:
    perms = generate_permutations(
        doc.m, cfg.permutations_per_doc, derive_seed(cfg.seed, stream)
    )
    original = _score(doc)

    successes = 0.0
    for order in perms:
        permuted = _score(permute_document(doc, order))
        if _ties(original, permuted):
            successes += cfg.tie_policy.tie_credit
        elif original > permuted:
            successes += 1.0

    return DocOutcome(doc.doc_id, len(perms), successes)


def _it_document(doc: Document, stream: int, cfg: ItConfig) -> DocOutcome:
    successes = 0.0
    for removed in range(doc.m):
        scores = np.array(
            [
                _score(permute_document(doc, insertion_order(doc.m, removed, p)))
                for p in range(doc.m)
            ]
        )
        best = np.flatnonzero(np.isclose(scores, scores.max(), rtol=TIE_RTOL, atol=TIE_ATOL))
        if removed in best:
            successes += 1.0 if len(best) == 1 else cfg.tie_policy.tie_credit

    return DocOutcome(doc.doc_id, doc.m, successes)


def _run(
    task: Task,
    corpus: Sequence[Document],
    worker: Callable[[Document, int], DocOutcome],
    config_echo: Dict[str, Any],
    threads: Optional[int],
) -> EvalReport:
    # stream = corpus position, so seeds do not depend on which documents are skipped
    scorable = [(stream, doc) for stream, doc in enumerate(corpus) if doc.m >= 2]
    skipped = tuple(doc.doc_id for doc in corpus if doc.m < 2)
    for doc_id in skipped:
        log.warning(f"Skipping document {doc_id!r}: fewer than 2 sentences.")
    if not scorable:
        raise EmptyCorpusError(
            f"no document with at least 2 sentences among {len(corpus)} "
            f"({len(skipped)} skipped)"
        )

    log.info(f"Running {task.value} on {len(scorable)} document(s).")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        per_doc = tuple(pool.map(lambda item: worker(item[1], item[0]), scorable))

    trials = 0
    successes = 0.0
    for outcome in per_doc:
        trials += outcome.trials
        successes += outcome.successes

    return EvalReport(task, per_doc, successes / trials, config_echo, skipped)


def run_ddt(
    corpus: Sequence[Document], cfg: DdtConfig, threads: Optional[int] = None
) -> EvalReport:
    echo = {"task": Task.DDT.value, **cfg.echo()}
    return _run(
        Task.DDT, corpus, lambda doc, stream: _ddt_document(doc, stream, cfg), echo, threads
    )


def run_it(
    corpus: Sequence[Document], cfg: ItConfig, threads: Optional[int] = None
) -> EvalReport:
    echo = {"task": Task.IT.value, **cfg.echo()}
    return _run(
        Task.IT, corpus, lambda doc, stream: _it_document(doc, stream, cfg), echo, threads
    )


def summarize_reports(reports: Mapping[str, Sequence[EvalReport]]) -> pd.DataFrame:
    """One row per corpus, one accuracy column per task."""
    rows: List[Dict[str, Any]] = []
    for corpus, corpus_reports in reports.items():
        row: Dict[str, Any] = {"corpus": corpus}
        row.update({report.task.value: report.accuracy for report in corpus_reports})
        rows.append(row)
    return pd.DataFrame(rows, columns=["corpus"] + [task.value for task in Task])
