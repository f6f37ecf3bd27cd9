"""Homogeneous-batch sampler over several domains' training sets."""

import logging
import math
from collections.abc import Iterator, Sequence

import numpy as np
from torch.utils.data import Sampler

from src.landmarker.services.data.exceptions import DataError, EmptyDatasetError
from src.landmarker.services.seeding import make_rng

logger = logging.getLogger(__name__)


class MixedBatchSampler(Sampler[list[int]]):
    """
    Batch sampler over the concatenation of per-domain datasets.

    Every batch holds samples of exactly one domain, since domains differ in
    landmark count. Each epoch, every domain's indices are reshuffled and cut
    into batches (the last one may be short); the batches of all domains are then
    shuffled together. A domain's share of batches is therefore proportional to
    its size and each sample is visited once per epoch.

    Yields lists of indices into ``ConcatDataset(datasets)``.
    """

    def __init__(self, domain_sizes: Sequence[int], batch_size: int, seed: int = 0, shuffle: bool = True):
        if batch_size < 1:
            raise DataError(f"batch_size must be >= 1, got {batch_size}")
        if not domain_sizes:
            raise EmptyDatasetError("No domains to sample from")
        empty = [index for index, size in enumerate(domain_sizes) if size == 0]
        if empty:
            raise EmptyDatasetError(f"Domains {empty} have no training samples")

        self.domain_sizes = list(domain_sizes)
        self.batch_size = batch_size
        self.seed = seed
        self.shuffle = shuffle
        self.epoch = 0
        self.offsets = np.concatenate([[0], np.cumsum(self.domain_sizes)[:-1]]).astype(int)

    def set_epoch(self, epoch: int) -> None:
        """Reseed the shuffle for an epoch."""
        self.epoch = epoch

    def domain_batches(self) -> list[tuple[int, list[int]]]:
        """Batches of the current epoch as (domain_index, per-domain indices)."""
        rng = make_rng(self.seed, "sampler", self.epoch)
        batches: list[tuple[int, list[int]]] = []
        for domain_index, size in enumerate(self.domain_sizes):
            order = rng.permutation(size) if self.shuffle else np.arange(size)
            for start in range(0, size, self.batch_size):
                chunk = order[start : start + self.batch_size]
                batches.append((domain_index, [int(i) for i in chunk]))
        if self.shuffle:
            batches = [batches[i] for i in rng.permutation(len(batches))]
        logger.debug(
            "Planned mixed batches", extra={"epoch": self.epoch, "steps_per_epoch": len(batches)}
        )
        return batches

    def __iter__(self) -> Iterator[list[int]]:
        for domain_index, indices in self.domain_batches():
            offset = int(self.offsets[domain_index])
            yield [offset + i for i in indices]

    def __len__(self) -> int:
        return sum(math.ceil(size / self.batch_size) for size in self.domain_sizes)
