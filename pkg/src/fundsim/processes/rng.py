from __future__ import annotations

import numpy as np

from fundsim.exceptions import DomainError

MAX_SEED = 2**64 - 1


def stream_for(master_seed: int, block: int, stock: int) -> np.random.Generator:
    """
    Counter-based substream for one block of paths of one stock. The stream
    depends only on (master_seed, block, stock), never on which worker draws it.
    """

    if not 0 <= master_seed <= MAX_SEED:
        raise DomainError(f"master_seed must be a 64-bit unsigned integer, got {master_seed}")
    seed_sequence = np.random.SeedSequence(master_seed, spawn_key=(block, stock))
    return np.random.Generator(np.random.Philox(seed_sequence))
