"""Argument types shared by several subcommands."""

import argparse
from pathlib import Path


def float_list(value: str) -> list[float]:
    """Parse ``"2,2.5,3"`` into floats."""
    try:
        items = [float(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers, got '{value}'") from None
    if not items:
        raise argparse.ArgumentTypeError("list must not be empty")
    return items


def int_list(value: str) -> list[int]:
    """Parse ``"3,5"`` into integers."""
    try:
        items = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got '{value}'") from None
    if not items:
        raise argparse.ArgumentTypeError("list must not be empty")
    return items


def add_manifest_argument(parser: argparse.ArgumentParser, *, required: bool = False) -> None:
    parser.add_argument(
        "--manifest",
        dest="manifests",
        action="append",
        type=Path,
        required=required,
        help="Dataset directory or manifest.json; repeat once per domain",
    )
