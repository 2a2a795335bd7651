"""
    Helps setting up configurations (e.g. disable warnings, printing the config tree, logging, ...)
"""

import logging
import warnings
from typing import Sequence

from omegaconf import DictConfig, OmegaConf
from rich.console import Console
from rich.logging import RichHandler
from rich.syntax import Syntax
from rich.tree import Tree

log = logging.getLogger(__name__)

# Standard output is reserved for reports.
console = Console(stderr=True)


def setup_logging(verbose: bool = False) -> None:
    """Rich logging on standard error, used when Hydra's job logging is not active."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
    )


def extras(config: DictConfig) -> None:
    """A couple of optional utilities, controlled by main config file.
        - disabling warnings
        - defaulting the worker count to the machine parallelism
    Args:
        config (DictConfig): composed run config
    """

    # enable adding new keys to config
    OmegaConf.set_struct(config, False)

    # disable python warnings if <config.disable_warnings=True>
    if config.get("disable_warnings"):
        log.info("Disabling python warnings! <config.disable_warnings=True>")
        warnings.filterwarnings("ignore")

    if config.get("threads") is not None and config.threads < 1:
        log.info("Ignoring non-positive thread count! <config.threads>")
        config.threads = None

    # disable adding new keys to config
    OmegaConf.set_struct(config, True)


def print_config(
    config: DictConfig,
    fields: Sequence[str] = (
        "task",
        "extractor",
        "inputs",
        "output",
        "format",
        "seed",
        "threads",
    ),
    resolve: bool = True,
) -> None:
    """Prints content of DictConfig using Rich library and its tree structure.

    Args:
        config (DictConfig): Config.
        fields (Sequence[str], optional): Determines which main fields from config will be printed
        and in what order.
        resolve (bool, optional): Whether to resolve reference fields of DictConfig.
    """

    style = "dim"
    tree = Tree(":gear: CONFIG", style=style, guide_style=style)

    for field in fields:
        branch = tree.add(field, style=style, guide_style=style)

        config_section = config.get(field)
        branch_content = str(config_section)
        if isinstance(config_section, DictConfig):
            branch_content = OmegaConf.to_yaml(config_section, resolve=resolve)

        branch.add(Syntax(branch_content, "yaml"))

    console.print(tree)
