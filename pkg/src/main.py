"""Main application entry point."""

import sys
from collections.abc import Sequence

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from src.cli import EXIT_ERROR, CommandRegistry
from src.errors import GeofiltError
from src.models.config import Settings, load_config
from src.utils.logging import get_logger, setup_logging

# Load environment variables early
load_dotenv()

logger = get_logger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse the command line, run one command and return its exit status."""
    parser = CommandRegistry.build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(Settings())
    except (ValidationError, yaml.YAMLError, OSError) as e:
        print(f"geofilt: invalid configuration: {e}", file=sys.stderr)
        return EXIT_ERROR
    setup_logging(config.logging.level, config.logging.format)

    handler = CommandRegistry.get_command(args.command)
    if handler is None:
        parser.error(f"unknown command '{args.command}'")
    try:
        return handler.run(args, config)
    except (GeofiltError, ValidationError, OSError, ValueError) as e:
        logger.error(
            "command_failed", command=args.command, error=str(e), exc_info=True
        )
        print(f"geofilt {args.command}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
