"""Stable per-cell seed derivation for sweeps and trials."""
from __future__ import annotations

import zlib

import numpy as np


def cell_seed(seed: int, tag: str, cell: int, trial: int) -> int:
    """64-bit seed for ``(seed, tag, cell, trial)``, independent of run order."""
    ss = np.random.SeedSequence([int(seed), zlib.crc32(tag.encode()), int(cell), int(trial)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
