"""Tests for the homogeneous mixed-domain batch sampler."""

from collections import Counter

import pytest

from src.landmarker.services.data.exceptions import DataError, EmptyDatasetError
from src.landmarker.services.data.sampler import MixedBatchSampler


def _domain_of(index: int, sizes: list[int]) -> int:
    for domain, size in enumerate(sizes):
        if index < size:
            return domain
        index -= size
    raise IndexError(index)


class TestMixedBatchSampler:
    """Test batch composition and epoch coverage."""

    def test_batches_are_homogeneous(self):
        """Test every batch holds one domain only."""
        sizes = [7, 5, 12]
        sampler = MixedBatchSampler(sizes, batch_size=3, seed=1)

        for batch in sampler:
            assert len({_domain_of(i, sizes) for i in batch}) == 1
            assert 1 <= len(batch) <= 3

    def test_each_sample_once_per_epoch(self):
        """Test an epoch visits every index exactly once."""
        sizes = [7, 5, 12]
        sampler = MixedBatchSampler(sizes, batch_size=4, seed=1)

        for epoch in range(3):
            sampler.set_epoch(epoch)
            seen = [i for batch in sampler for i in batch]
            assert sorted(seen) == list(range(sum(sizes)))

    def test_batch_share_proportional_to_size(self):
        """Test each domain contributes ceil(n / batch_size) batches."""
        sizes = [150, 609, 229]
        sampler = MixedBatchSampler(sizes, batch_size=4)

        counts = Counter(domain for domain, _ in sampler.domain_batches())

        assert counts == {0: 38, 1: 153, 2: 58}
        assert len(sampler) == 38 + 153 + 58

    def test_domains_interleaved(self):
        """Test batches of different domains are mixed rather than grouped."""
        sampler = MixedBatchSampler([40, 40], batch_size=2, seed=0)

        order = [domain for domain, _ in sampler.domain_batches()]

        assert order != sorted(order)

    def test_deterministic(self):
        """Test a seed and epoch fix the batch order."""
        first = MixedBatchSampler([9, 4], batch_size=2, seed=5)
        second = MixedBatchSampler([9, 4], batch_size=2, seed=5)
        first.set_epoch(2)
        second.set_epoch(2)

        assert list(first) == list(second)

    def test_epochs_differ(self):
        """Test a new epoch reshuffles."""
        sampler = MixedBatchSampler([30, 30], batch_size=2, seed=5)
        sampler.set_epoch(1)
        first = list(sampler)
        sampler.set_epoch(2)

        assert list(sampler) != first

    def test_no_shuffle(self):
        """Test the unshuffled order walks domains in sequence."""
        sampler = MixedBatchSampler([3, 2], batch_size=2, shuffle=False)

        assert list(sampler) == [[0, 1], [2], [3, 4]]

    def test_rejects_empty_domain(self):
        """Test a domain with no samples is refused."""
        with pytest.raises(EmptyDatasetError, match=r"\[1\]"):
            MixedBatchSampler([3, 0], batch_size=2)

    def test_rejects_no_domains(self):
        """Test an empty domain list is refused."""
        with pytest.raises(EmptyDatasetError):
            MixedBatchSampler([], batch_size=2)

    def test_rejects_bad_batch_size(self):
        """Test batch_size must be positive."""
        with pytest.raises(DataError):
            MixedBatchSampler([3], batch_size=0)


def test_batch_frequencies_follow_domain_sizes():
    """Batch-domain frequencies approach 0.152 / 0.616 / 0.232 for sizes 150 / 609 / 229."""
    sampler = MixedBatchSampler([150, 609, 229], batch_size=1, seed=0)

    counts = Counter(domain for domain, _ in sampler.domain_batches())
    total = sum(counts.values())

    assert counts[0] / total == pytest.approx(0.152, abs=1e-3)
    assert counts[1] / total == pytest.approx(0.616, abs=1e-3)
    assert counts[2] / total == pytest.approx(0.232, abs=1e-3)
