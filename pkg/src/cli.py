"""
    Command-line front end.

        python -m src.cli score doc.json
        python -m src.cli explain --format dot doc.json
        python -m src.cli eval-ddt --seed 42 --perms 20 corpus.jsonl
        python -m src.cli eval-it --tie half corpus.jsonl
        python -m src.cli eval-table en.jsonl zh.jsonl
        python -m src.cli gen-corpus --num-docs 50 --sentences 6 --overlap 0.9 --seed 7

    Flags are turned into Hydra overrides on the config tree in `configs/`, so a
    run can be repeated with `run.py` and the same overrides. Exit status is 0 on
    success, 1 on input or validation errors and 2 on usage errors.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

import dotenv
from hydra import compose, initialize_config_dir
from omegaconf import DictConfig, open_dict

from src import pipeline
from src.errors import CohesionError, UsageError
from src.evaluation.prng import MASK64
from src.extraction.extractor import ExtractionMode
from src.utils import template_utils

log = logging.getLogger(__name__)

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

TASK_CONFIGS = {
    "score": "score",
    "explain": "explain",
    "eval-ddt": "ddt",
    "eval-it": "it",
    "eval-table": "table",
    "gen-corpus": "gen_corpus",
}
TIE_POLICIES = {"fail": "tie-is-failure", "half": "tie-is-half"}

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


def _u64(value: str) -> int:
    try:
        seed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if not 0 <= seed <= MASK64:
        raise argparse.ArgumentTypeError(f"{value} is not an unsigned 64-bit integer")
    return seed


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} must be at least 1")
    return number


@dataclass
class CliConfig:
    command: str
    inputs: List[str] = field(default_factory=list)
    output: Optional[str] = None
    extractor: Optional[str] = None
    lexicon: Optional[str] = None
    seed: Optional[int] = None
    perms: Optional[int] = None
    tie: Optional[str] = None
    format: Optional[str] = None
    threads: Optional[int] = None
    num_docs: Optional[int] = None
    sentences: Optional[int] = None
    overlap: Optional[float] = None
    elements: Optional[int] = None
    coref: bool = False
    print_config: bool = False
    verbose: bool = False

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "CliConfig":
        known = cls.__dataclass_fields__
        return cls(**{k: v for k, v in vars(args).items() if k in known})

    def validate(self) -> "CliConfig":
        if self.format and self.format not in pipeline.FORMATS[self.command]:
            allowed = ", ".join(pipeline.FORMATS[self.command])
            raise UsageError(
                f"--format {self.format} is not valid for {self.command} (use {allowed})"
            )
        if self.perms is not None and self.command not in ("eval-ddt", "eval-table"):
            raise UsageError(f"--perms is not valid for {self.command}")
        if self.tie is not None and not self.command.startswith("eval-"):
            raise UsageError(f"--tie is not valid for {self.command}")
        if self.seed is not None and self.command in ("score", "explain"):
            raise UsageError(f"--seed is not valid for {self.command}")
        if self.command == "gen-corpus" and (self.extractor or self.lexicon):
            raise UsageError("--extractor and --lexicon are not valid for gen-corpus")
        return self

    def overrides(self) -> List[str]:
        overrides = [f"task={TASK_CONFIGS[self.command]}"]
        if self.extractor:
            overrides.append(f"extractor={self.extractor.replace('-', '_')}")
        if self.seed is not None:
            overrides.append(f"seed={self.seed}")
        if self.format:
            overrides.append(f"format={self.format}")
        if self.threads is not None:
            overrides.append(f"threads={self.threads}")
        if self.print_config:
            overrides.append("print_config=true")

        protocols = {
            "eval-ddt": ["task.protocol"],
            "eval-it": ["task.protocol"],
            "eval-table": ["task.ddt", "task.it"],
        }.get(self.command, [])
        for node in protocols:
            if self.perms is not None and node != "task.it":
                overrides.append(f"{node}.permutations_per_doc={self.perms}")
            if self.tie is not None:
                overrides.append(f"{node}.tie_policy={TIE_POLICIES[self.tie]}")

        if self.command == "gen-corpus":
            for key, value in (
                ("num_docs", self.num_docs),
                ("sentences", self.sentences),
                ("overlap", self.overlap),
                ("elements_per_sentence", self.elements),
            ):
                if value is not None:
                    overrides.append(f"task.{key}={value}")
            if self.coref:
                overrides.append("task.coref=true")

        return overrides


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--extractor", choices=[mode.value for mode in ExtractionMode])
    common.add_argument("--lexicon", metavar="PATH", help="verb lexicon, one form per line")
    common.add_argument("--seed", type=_u64, metavar="U64")
    common.add_argument("--perms", type=_positive, metavar="N", help="permutations per document")
    common.add_argument("--tie", choices=sorted(TIE_POLICIES))
    common.add_argument("--format", choices=["json", "csv", "dot"])
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--threads", type=_positive, metavar="N")
    common.add_argument("--print-config", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="cohesion", description="Cohesion-graph coherence scoring and evaluation."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    helps = {
        "score": "coherence report of every document",
        "explain": "coherence report plus every sentence-pair graph",
        "eval-ddt": "document discrimination accuracy",
        "eval-it": "insertion accuracy",
        "eval-table": "DDT and IT accuracy for each corpus",
    }
    for name, text in helps.items():
        command = commands.add_parser(name, parents=[common], help=text)
        command.add_argument("inputs", nargs="+", metavar="INPUT")

    gen = commands.add_parser("gen-corpus", parents=[common], help="synthetic chained corpus")
    gen.add_argument("--num-docs", type=_positive, metavar="N")
    gen.add_argument("--sentences", type=int, metavar="M")
    gen.add_argument("--overlap", type=float)
    gen.add_argument("--elements", type=int, metavar="N", help="words per sentence")
    gen.add_argument("--coref", action="store_true")

    return parser


def compose_config(cli: CliConfig) -> DictConfig:
    with initialize_config_dir(
        config_dir=str(CONFIG_DIR), job_name="cohesion", version_base=None
    ):
        config = compose(config_name="config", overrides=cli.overrides())

    with open_dict(config):
        config.inputs = list(cli.inputs)
        config.output = cli.output
        if cli.lexicon:
            config.extractor.verb_lexicon_path = cli.lexicon
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    dotenv.load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    template_utils.setup_logging(args.verbose)

    try:
        cli = CliConfig.from_namespace(args).validate()
        config = compose_config(cli)

        template_utils.extras(config)
        if config.get("print_config"):
            template_utils.print_config(config, resolve=True)

        pipeline.write_output(pipeline.run(config), config.output)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CohesionError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
