"""``history.csv`` reading and writing."""

import csv
from pathlib import Path

from src.landmarker.services.training.schemas import HistoryRecord

HISTORY_COLUMNS = ["epoch", "domain", "train_loss", "val_loss", "lr"]
AGGREGATE_DOMAIN = "all"


def _format(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def write_history(path: Path, records: list[HistoryRecord]) -> None:
    """Rewrite the history file with all records so far."""
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(HISTORY_COLUMNS)
        for record in records:
            writer.writerow(
                [
                    record.epoch,
                    record.domain,
                    _format(record.train_loss),
                    _format(record.val_loss),
                    _format(record.lr),
                ]
            )


def read_history(path: Path) -> list[HistoryRecord]:
    """Parse a history file; empty cells become None."""
    with path.open(newline="", encoding="utf-8") as handle:
        return [
            HistoryRecord(
                epoch=int(row["epoch"]),
                domain=row["domain"],
                train_loss=float(row["train_loss"]) if row["train_loss"] else None,
                val_loss=float(row["val_loss"]) if row["val_loss"] else None,
                lr=float(row["lr"]),
            )
            for row in csv.DictReader(handle)
        ]


def mean_or_none(total: float, count: int) -> float | None:
    return total / count if count else None
