import io
import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from hydra.errors import InstantiationException
from hydra.utils import instantiate
from omegaconf import DictConfig

from src.documents.document import Document
from src.documents.io import read_corpus, write_corpus
from src.errors import CohesionError, UsageError
from src.evaluation.synthetic import synthesize_corpus
from src.evaluation.tasks import EvalReport, run_ddt, run_it, summarize_reports
from src.extraction.extractor import ExtractorConfig, annotate_document
from src.graph.export import render_dot
from src.scoring.coherence import bundle_to_dict, coherence, explain, report_to_dict

log = logging.getLogger(__name__)

FORMATS = {
    "score": ("json",),
    "explain": ("json", "dot"),
    "eval-ddt": ("json", "csv"),
    "eval-it": ("json", "csv"),
    "eval-table": ("json", "csv"),
    "gen-corpus": ("json",),
}


def _instantiate(node: DictConfig) -> Any:
    log.info(f"Instantiating <{node._target_}>.")
    try:
        return instantiate(node)
    except InstantiationException as exc:
        if isinstance(exc.__cause__, CohesionError):
            raise exc.__cause__
        raise


def _threads(config: DictConfig) -> int:
    return config.get("threads") or os.cpu_count() or 1


def _load(config: DictConfig, extractor: ExtractorConfig) -> Dict[str, List[Document]]:
    if not config.inputs:
        raise UsageError("no input file given")
    return {
        str(path): [annotate_document(doc, extractor) for doc in read_corpus(path)]
        for path in config.inputs
    }


def _dumps(payload: Any, indent: Optional[int] = None) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=indent)


def _extractor_echo(extractor: ExtractorConfig) -> Dict[str, Any]:
    return {
        "extractor": extractor.mode.value,
        "verb_lexicon_path": extractor.verb_lexicon_path,
    }


def _score(corpora: Dict[str, List[Document]]) -> str:
    lines = [
        _dumps(report_to_dict(coherence(doc)))
        for docs in corpora.values()
        for doc in docs
    ]
    return "\n".join(lines) + "\n"


def _explain(config: DictConfig, corpora: Dict[str, List[Document]]) -> str:
    chunks = []
    for docs in corpora.values():
        for doc in docs:
            bundle = explain(doc)
            if bundle.report.degenerate:
                log.warning(
                    f"Document {doc.doc_id!r} has a single sentence; "
                    "there is no sentence pair to explain."
                )
            if config.format == "dot":
                chunks.append(render_dot(bundle.graphs, doc))
            else:
                chunks.append(_dumps(bundle_to_dict(bundle)) + "\n")
    return "".join(chunks)


def _report_text(report: EvalReport, fmt: str) -> str:
    if fmt == "csv":
        return report.to_frame().to_csv(index=False)
    return _dumps(report.to_dict(), indent=2) + "\n"


def _evaluate(
    config: DictConfig, corpora: Dict[str, List[Document]], extractor: ExtractorConfig
) -> str:
    corpus = [doc for docs in corpora.values() for doc in docs]
    protocol = _instantiate(config.task.protocol)
    runner = run_ddt if config.task.name == "eval-ddt" else run_it

    report = runner(corpus, protocol, threads=_threads(config))
    report = replace(
        report,
        config={**report.config, **_extractor_echo(extractor), "inputs": list(corpora)},
    )
    log.info(f"{report.task.value} accuracy {report.accuracy:.4f}.")
    return _report_text(report, config.format)


def _table(
    config: DictConfig, corpora: Dict[str, List[Document]], extractor: ExtractorConfig
) -> str:
    ddt = _instantiate(config.task.ddt)
    it = _instantiate(config.task.it)
    threads = _threads(config)

    reports = {
        name: [run_ddt(docs, ddt, threads=threads), run_it(docs, it, threads=threads)]
        for name, docs in corpora.items()
    }
    table = summarize_reports(reports)
    if config.format == "csv":
        return table.to_csv(index=False)

    payload = {
        "config": {
            "ddt": ddt.echo(),
            "it": it.echo(),
            **_extractor_echo(extractor),
        },
        "accuracy": table.to_dict(orient="records"),
    }
    return _dumps(payload, indent=2) + "\n"


def _generate(config: DictConfig) -> str:
    params = config.task
    docs = synthesize_corpus(
        num_docs=params.num_docs,
        m=params.sentences,
        overlap=params.overlap,
        seed=config.seed,
        elements_per_sentence=params.elements_per_sentence,
        coref=params.coref,
    )

    buffer = io.StringIO()
    write_corpus(docs, buffer)
    return buffer.getvalue()


def run(config: DictConfig) -> str:
    """Runs the task selected in the config and returns the report text."""
    command = config.task.name
    if config.format not in FORMATS[command]:
        raise UsageError(f"--format {config.format} is not available for {command}")

    if command == "gen-corpus":
        return _generate(config)

    extractor = _instantiate(config.extractor)
    corpora = _load(config, extractor)

    if command == "score":
        return _score(corpora)
    if command == "explain":
        return _explain(config, corpora)
    if command == "eval-table":
        return _table(config, corpora, extractor)
    return _evaluate(config, corpora, extractor)


def write_output(text: str, output: Optional[str]) -> None:
    if output:
        path = Path(output)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise CohesionError(f"cannot write {path}: {exc.strerror or exc}") from exc
        log.info(f"Wrote {path}.")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()

