"""Counter-based random streams with per-index substreams.

Philox is a named counter-based generator: fixing the key to the run seed and
giving every sample index its own counter block makes draws replayable in any
order, so parallel evaluation and the single-threaded reference path produce
bit-identical results.
"""

from __future__ import annotations

import numpy as np

_KEY_MASK = (1 << 128) - 1

# One substream owns 2^64 Philox blocks; a single draw consumes only a handful.
_BLOCKS_PER_SUBSTREAM_LOG2 = 64


def master_stream(seed: int) -> np.random.Generator:
    """Generator for flows that consume one sequential stream."""
    return np.random.Generator(np.random.Philox(key=seed & _KEY_MASK))


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample `index` of the run seeded with `seed`."""
    if index < 0:
        raise ValueError("index must be >= 0")
    counter = index << _BLOCKS_PER_SUBSTREAM_LOG2
    return np.random.Generator(np.random.Philox(key=seed & _KEY_MASK, counter=counter))
