"""Training hyperparameters and run bookkeeping."""

from pathlib import Path

from pydantic import BaseModel, Field, model_validator

from src.landmarker.services.data.schemas import AugmentConfig


class TrainConfig(BaseModel):
    """Optimisation settings. Defaults follow the reference training recipe."""

    batch_size: int = Field(default=4, ge=1)
    lr_min: float = Field(default=1e-4, gt=0.0)
    lr_max: float = Field(default=1e-2, gt=0.0)
    epochs: int = Field(default=100, ge=1)
    cycle_length: int = Field(default=10, ge=1, description="Epochs per half-cycle of the lr triangle")
    seed: int = 0
    sigma: float = Field(default=3.0, gt=0.0)
    betas: tuple[float, float] = (0.9, 0.999)
    eps: float = Field(default=1e-8, gt=0.0)
    weight_decay: float = Field(default=0.0, ge=0.0)
    peak_normalized: bool = False
    augment: AugmentConfig | None = Field(default_factory=AugmentConfig)
    num_workers: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _lr_range(self) -> "TrainConfig":
        if self.lr_min >= self.lr_max:
            raise ValueError(f"lr_min ({self.lr_min}) must be below lr_max ({self.lr_max})")
        return self


class HistoryRecord(BaseModel):
    """One row of ``history.csv``; ``domain == "all"`` carries the selection loss."""

    epoch: int
    domain: str
    train_loss: float | None = None
    val_loss: float | None = None
    lr: float


class TrainResult(BaseModel):
    """Outcome of a training run."""

    run_dir: Path
    best_epoch: int
    best_val_loss: float
    history: list[HistoryRecord]
    best_checkpoint: Path
    last_checkpoint: Path

    @property
    def epochs_run(self) -> int:
        return max(record.epoch for record in self.history)
