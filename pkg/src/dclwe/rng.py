"""Deterministic RNG derivation for sweep points, trials, and coordinates.

Streams are derived by mixing a master seed with an index path through
a splittable seed sequence, so any task's stream is independent of
scheduling order and of how many workers run concurrently. A plain XOR
of seed and index would collide across axes; spawn keys do not.
"""

from __future__ import annotations

import numpy as np


def derive_rng(seed: int, *path: int) -> np.random.Generator:
    """Independent generator for the task addressed by `path`."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.default_rng(ss)
