"""
Mixed-domain training loop.

One epoch walks homogeneous batches from every domain in shuffled order. Each
step runs the model on the batch's domain, applies BCE to the fused heatmap and
takes an Adam step at the cyclic learning rate. After every epoch the mean
validation loss over all held-out images decides whether ``best.ckpt`` is
replaced; ``last.ckpt`` and ``history.csv`` are rewritten every epoch.
"""

import logging
import math
from collections.abc import Sequence
from pathlib import Path

import torch
from pydantic import BaseModel
from torch.utils.data import ConcatDataset, DataLoader

from src.landmarker.config import settings
from src.landmarker.services.data.dataset import LandmarkDataset
from src.landmarker.services.data.sampler import MixedBatchSampler
from src.landmarker.services.data.schemas import DatasetManifest, DatasetSplit
from src.landmarker.services.models.checkpoint import save_checkpoint
from src.landmarker.services.models.exceptions import DomainMismatchError
from src.landmarker.services.models.schemas import ModelConfig, VariantKind
from src.landmarker.services.models.variants import LandmarkModel
from src.landmarker.services.training.exceptions import NonFiniteLossError
from src.landmarker.services.training.history import AGGREGATE_DOMAIN, mean_or_none, write_history
from src.landmarker.services.training.loss import bce_heatmap_loss, per_image_loss
from src.landmarker.services.training.schedule import build_scheduler
from src.landmarker.services.training.schemas import HistoryRecord, TrainConfig, TrainResult

logger = logging.getLogger(__name__)


class ResolvedRun(BaseModel):
    """What ``config.json`` records when no richer run document is supplied."""

    variant: VariantKind
    model: ModelConfig
    train: TrainConfig


def check_domains(model: LandmarkModel, manifests: Sequence[DatasetManifest]) -> None:
    """Model and datasets must list the same domains, in the same order."""
    model_ids = model.config.domain_ids
    data_ids = [m.domain.domain_id for m in manifests]
    if model_ids != data_ids:
        raise DomainMismatchError(f"Model domains {model_ids} do not match dataset domains {data_ids}")
    for spec, manifest in zip(model.config.domains, manifests, strict=True):
        if spec.num_landmarks != manifest.domain.num_landmarks:
            raise DomainMismatchError(
                f"Domain '{spec.domain_id}': model expects {spec.num_landmarks} landmarks, "
                f"dataset has {manifest.domain.num_landmarks}"
            )


def build_datasets(
    manifests: Sequence[DatasetManifest], config: TrainConfig, split: DatasetSplit
) -> list[LandmarkDataset]:
    """One dataset per domain; only the training split is augmented."""
    return [
        LandmarkDataset(
            manifest,
            split,
            domain_index=index,
            sigma=config.sigma,
            peak_normalized=config.peak_normalized,
            augment_config=config.augment if split is DatasetSplit.TRAIN else None,
            seed=config.seed,
        )
        for index, manifest in enumerate(manifests)
    ]


@torch.no_grad()
def validation_losses(
    model: LandmarkModel,
    datasets: Sequence[LandmarkDataset],
    batch_size: int,
    device: torch.device,
) -> tuple[list[tuple[float, int]], float | None]:
    """
    Sum and count of per-image losses per domain, plus the pooled mean.

    Returns:
        ``[(loss_sum, n_images), ...]`` per domain and the mean over every image,
        or None if no domain has validation images
    """
    was_training = model.training
    model.eval()
    per_domain: list[tuple[float, int]] = []
    for dataset in datasets:
        total, count = 0.0, 0
        if len(dataset):
            for batch in DataLoader(dataset, batch_size=batch_size, shuffle=False):
                predicted = model(batch["image"].to(device), dataset.domain_index)
                losses = per_image_loss(predicted, batch["target"].to(device))
                total += float(losses.sum())
                count += int(losses.numel())
        per_domain.append((total, count))
    model.train(was_training)

    pooled_total = sum(total for total, _ in per_domain)
    pooled_count = sum(count for _, count in per_domain)
    return per_domain, mean_or_none(pooled_total, pooled_count)


def train(
    model: LandmarkModel,
    manifests: Sequence[DatasetManifest],
    config: TrainConfig,
    run_dir: Path,
    *,
    run_document: BaseModel | None = None,
) -> TrainResult:
    """
    Train ``model`` on the training splits of ``manifests``.

    Args:
        model: Freshly built variant; its domain list must match ``manifests``
        manifests: One loaded manifest per domain, in model order
        config: Optimisation settings
        run_dir: Output directory for ``config.json``, ``history.csv`` and checkpoints
        run_document: Document written to ``config.json``; defaults to the
            resolved variant, model and train configs

    Returns:
        TrainResult with the best epoch and the full history

    Raises:
        DomainMismatchError: If model and datasets list different domains
        NonFiniteLossError: If a step produces a NaN/inf loss
        CheckpointError: If a checkpoint cannot be written
    """
    check_domains(model, manifests)
    if settings.deterministic:
        torch.use_deterministic_algorithms(True, warn_only=True)
    if config.peak_normalized:
        logger.warning("Training with peak-normalised targets (peak value 1)")

    run_dir.mkdir(parents=True, exist_ok=True)
    document = run_document or ResolvedRun(variant=model.variant, model=model.config, train=config)
    (run_dir / settings.config_file).write_text(document.model_dump_json(indent=2), encoding="utf-8")

    device = torch.device(settings.device)
    model.to(device)
    domain_ids = model.config.domain_ids

    train_sets = build_datasets(manifests, config, DatasetSplit.TRAIN)
    val_sets = build_datasets(manifests, config, DatasetSplit.VAL)
    if not any(len(v) for v in val_sets):
        logger.warning("No validation images in any domain; selecting checkpoints by training loss")

    sampler = MixedBatchSampler([len(d) for d in train_sets], config.batch_size, seed=config.seed)
    num_workers = settings.num_workers if config.num_workers is None else config.num_workers
    loader = DataLoader(ConcatDataset(train_sets), batch_sampler=sampler, num_workers=num_workers)

    optimizer = torch.optim.Adam(
        model.parameters(),
        lr=config.lr_max,
        betas=config.betas,
        eps=config.eps,
        weight_decay=config.weight_decay,
    )
    scheduler = build_scheduler(optimizer, config, steps_per_epoch=len(sampler))

    history: list[HistoryRecord] = []
    best_epoch, best_loss = 0, math.inf
    best_path = run_dir / settings.checkpoint_name_best
    last_path = run_dir / settings.checkpoint_name_last
    step = 0

    logger.info(
        f"Training {model.variant.value} for {config.epochs} epochs",
        extra={"domains": domain_ids, "steps_per_epoch": len(sampler), "run_dir": str(run_dir)},
    )
    for epoch in range(1, config.epochs + 1):
        sampler.set_epoch(epoch)
        for dataset in train_sets:
            dataset.set_epoch(epoch)
        lr = optimizer.param_groups[0]["lr"]

        model.train()
        train_sums = [0.0] * len(domain_ids)
        train_batches = [0] * len(domain_ids)
        for batch in loader:
            domain_index = int(batch["domain_index"][0])
            optimizer.zero_grad()
            predicted = model(batch["image"].to(device), domain_index)
            loss = bce_heatmap_loss(predicted, batch["target"].to(device))
            value = float(loss.detach())
            if not math.isfinite(value):
                logger.error(
                    "Non-finite training loss",
                    extra={"step": step, "epoch": epoch, "domain": domain_ids[domain_index]},
                )
                raise NonFiniteLossError(step, domain_ids[domain_index], value)

            loss.backward()
            optimizer.step()
            scheduler.step()
            train_sums[domain_index] += value
            train_batches[domain_index] += 1
            step += 1

        per_domain_val, pooled_val = validation_losses(model, val_sets, config.batch_size, device)
        pooled_train = mean_or_none(sum(train_sums), sum(train_batches))
        for index, domain_id in enumerate(domain_ids):
            val_sum, val_count = per_domain_val[index]
            history.append(
                HistoryRecord(
                    epoch=epoch,
                    domain=domain_id,
                    train_loss=mean_or_none(train_sums[index], train_batches[index]),
                    val_loss=mean_or_none(val_sum, val_count),
                    lr=lr,
                )
            )
        history.append(
            HistoryRecord(
                epoch=epoch, domain=AGGREGATE_DOMAIN, train_loss=pooled_train, val_loss=pooled_val, lr=lr
            )
        )

        selection = pooled_val if pooled_val is not None else pooled_train
        assert selection is not None
        if selection < best_loss:
            best_epoch, best_loss = epoch, selection
            save_checkpoint(best_path, model, epoch=epoch, val_loss=selection)
        save_checkpoint(last_path, model, epoch=epoch, val_loss=selection)
        write_history(run_dir / settings.history_file, history)

        logger.info(
            f"Epoch {epoch}/{config.epochs}",
            extra={"epoch": epoch, "lr": lr, "train_loss": pooled_train, "val_loss": pooled_val},
        )

    model.eval()
    return TrainResult(
        run_dir=run_dir,
        best_epoch=best_epoch,
        best_val_loss=best_loss,
        history=history,
        best_checkpoint=best_path,
        last_checkpoint=last_path,
    )
