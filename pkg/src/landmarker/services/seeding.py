"""Fan one ``--seed`` out into independent named random streams."""

import zlib

import numpy as np
import torch

# Substreams used across the package. Keep names stable: changing one changes results.
SUBSTREAMS = ("augment", "sampler", "init", "synth")


def derive_seed(seed: int, stream: str, *extra: int) -> int:
    """
    Derive a 32-bit seed for a named substream.

    Args:
        seed: Root seed given on the command line
        stream: Substream name (see ``SUBSTREAMS``)
        *extra: Further integers mixed in (epoch, sample index, worker id)

    Returns:
        Deterministic seed in [0, 2**32)
    """
    entropy = [seed, zlib.crc32(stream.encode("utf-8")), *extra]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def make_rng(seed: int, stream: str, *extra: int) -> np.random.Generator:
    """Return a numpy Generator for a named substream."""
    return np.random.default_rng(derive_seed(seed, stream, *extra))


def seed_torch(seed: int) -> None:
    """Seed torch's global generator from the ``init`` substream."""
    torch.manual_seed(derive_seed(seed, "init"))
