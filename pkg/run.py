import logging
import sys

import dotenv
import hydra
from omegaconf import DictConfig

# Load environment variables from `.env`.
dotenv.load_dotenv(override=True)

log = logging.getLogger(__name__)


# Load hydra configs and run the selected task.
@hydra.main(config_path="configs/", config_name="config.yaml", version_base=None)
def main(config: DictConfig) -> None:

    # Imports should be nested to optimize hydra tab completion.
    from src import pipeline
    from src.errors import CohesionError
    from src.utils import template_utils

    # Setup utilities
    template_utils.extras(config)

    # Pretty print current configs in a tree
    if config.get("print_config"):
        template_utils.print_config(config, resolve=True)

    try:
        pipeline.write_output(pipeline.run(config), config.output)
    except CohesionError as exc:
        log.error(str(exc))
        sys.exit(1)


if __name__ == "__main__":
    main()
