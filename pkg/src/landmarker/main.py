"""Command-line entry point.

Usage: ``python -m src.landmarker.main <command> [options]``. Exit codes: 0 on
success, 1 for invalid input or configuration, 2 for failures while running.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from src.landmarker import __version__
from src.landmarker.config import settings
from src.landmarker.exceptions import RuntimeFailure, ValidationFailure
from src.landmarker.features import ablation, audit, evaluate, predict, synth, train, visualize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landmarker",
        description="Multi-domain anatomical landmark detection",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for feature in (train, evaluate, predict, visualize, synth, audit, ablation):
        feature.register(subparsers)
    return parser


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.INFO)
    logging.basicConfig(level=level, format=settings.log_format, force=True)


def format_validation_error(error: ValidationError) -> str:
    """One ``loc: msg`` line per failed field."""
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or error.title
        lines.append(f"{location}: {item['msg']}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        return int(args.handler(args))
    except ValidationError as e:
        print(f"Invalid configuration:\n{format_validation_error(e)}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValidationFailure as e:
        logger.debug("Validation failure", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (RuntimeFailure, OSError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=args.verbose)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except (RuntimeError, ValueError) as e:
        # Raised by torch or numpy while running, e.g. batch statistics of a single value.
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
