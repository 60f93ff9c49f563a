"""Derivation of independent, reproducible random streams.

Every random draw in a simulation run comes from a counter-based Philox
stream keyed by the run's master seed plus a small integer path (stream
purpose, generation number, ...).  Distinct paths give statistically
independent streams, and the draws for a given path never depend on how the
consuming computation is split across threads, which is what makes runs
bit-reproducible at any thread count.
"""

import numpy as np

# Stream purposes.  Values are part of the reproducibility contract: changing
# them changes every run's random numbers.
STREAM_INIT = 0
STREAM_TRAIN = 1
STREAM_TEST = 2
STREAM_GUESS = 3
STREAM_REPRO = 4
STREAM_LEARN = 5


def substream(master_seed, *path):
    """Return a fresh Generator for (master_seed, *path).

    The same arguments always produce the same stream.  `path` elements must
    be non-negative integers below 2**32 (generation numbers, purpose tags,
    individual indices, ...).
    """
    seed = int(master_seed)
    if seed < 0:
        raise ValueError("master seed must be non-negative")
    key = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(key))
