"""BCE heatmap loss, cyclic learning rate and the mixed-domain training loop."""

from src.landmarker.services.training.loss import bce_heatmap_loss
from src.landmarker.services.training.schedule import cyclic_lr
from src.landmarker.services.training.schemas import HistoryRecord, TrainConfig, TrainResult
from src.landmarker.services.training.trainer import train

__all__ = ["HistoryRecord", "TrainConfig", "TrainResult", "bce_heatmap_loss", "cyclic_lr", "train"]
