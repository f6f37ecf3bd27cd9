"""Run configuration for ``train``."""

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

from src.landmarker.exceptions import ConfigError
from src.landmarker.services.data.manifest import manifest_exists
from src.landmarker.services.models.schemas import ArchitectureConfig, VariantKind
from src.landmarker.services.training.schemas import TrainConfig


class RunConfig(BaseModel):
    """
    Everything needed to reproduce a training run.

    Written verbatim to ``<out>/config.json`` once flags are merged in.
    """

    variant: VariantKind = VariantKind.GU2NET
    manifests: list[Path] = Field(min_length=1)
    out: Path = Path("runs/latest")
    model: ArchitectureConfig = Field(default_factory=ArchitectureConfig)
    train: TrainConfig = Field(default_factory=TrainConfig)

    @field_validator("manifests")
    @classmethod
    def _manifests_exist(cls, value: list[Path]) -> list[Path]:
        missing = [str(path) for path in value if not manifest_exists(path)]
        if missing:
            raise ValueError(f"manifest not found: {', '.join(missing)}")
        return value

    @model_validator(mode="after")
    def _sigma_consistent(self) -> "RunConfig":
        if self.model.sigma != self.train.sigma:
            raise ValueError(
                f"model.sigma ({self.model.sigma}) and train.sigma ({self.train.sigma}) must agree"
            )
        return self


def resolve_run_config(config_path: Path | None, overrides: dict[str, Any]) -> RunConfig:
    """
    Load a run config document and apply command-line overrides.

    Relative manifest paths in the document are taken relative to its directory.
    Overrides use dotted keys (``"train.epochs"``); None values are ignored.
    """
    data: dict[str, Any] = {}
    if config_path is not None:
        try:
            data = json.loads(config_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read run config {config_path}: {e}") from e
        base = config_path.parent
        data["manifests"] = [str((base / p).resolve()) for p in data.get("manifests", [])]

    for key, value in overrides.items():
        if value is None:
            continue
        target = data
        *parents, leaf = key.split(".")
        for parent in parents:
            target = target.setdefault(parent, {})
        target[leaf] = value

    # The target width is one setting even though both sections carry it.
    sigma = data.get("train", {}).get("sigma", data.get("model", {}).get("sigma"))
    if sigma is not None:
        data.setdefault("model", {}).setdefault("sigma", sigma)
        data.setdefault("train", {}).setdefault("sigma", sigma)
    return RunConfig.model_validate(data)
