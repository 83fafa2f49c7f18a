"""Counter-based keyed randomness built on the SplitMix64 finalizer.

Every random decision is a pure function of ``(seed, stream, key)``, so a
sample never depends on iteration order or on how work is split across
processes.  Uniforms are the top 53 bits of the mixed word scaled to [0, 1).
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# stream tags keep edge, vertex and trial-seed draws independent
STREAM_EDGE = 0x45444745  # "EDGE"
STREAM_VERTEX = 0x56455254  # "VERT"
STREAM_TRIAL = 0x54524C53  # "TRLS"


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def _splitmix64_array(x: np.ndarray) -> np.ndarray:
    x = x + np.uint64(_GOLDEN)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def stream_key(seed: int, stream: int) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return splitmix64(splitmix64(seed) ^ stream)


def keyed_uniforms(seed: int, stream: int, keys: np.ndarray) -> np.ndarray:
    """Uniform [0, 1) variates, one per 64-bit key."""
    base = np.uint64(stream_key(seed, stream))
    with np.errstate(over="ignore"):
        words = _splitmix64_array(np.asarray(keys, dtype=np.uint64) ^ base)
    return (words >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def pair_keys(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All pairs u < v in row-major order, with key ``(u << 32) | v``."""
    us, vs = np.triu_indices(n, k=1)
    keys = (us.astype(np.uint64) << np.uint64(32)) | vs.astype(np.uint64)
    return us, vs, keys


def derive_seed(master_seed: int, index: int) -> int:
    """Per-trial seed: SplitMix64 of the trial index under the master seed's stream key."""
    return splitmix64(stream_key(master_seed, STREAM_TRIAL) ^ (index & MASK64))
