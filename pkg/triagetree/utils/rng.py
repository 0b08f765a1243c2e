"""Deterministic, splittable random streams.

Algorithm: philox4x64-10 (Random123 Philox, four 64-bit words, ten rounds)
through ``numpy.random.Philox``. A stream is keyed by the two 64-bit words
``(seed, stream_id)`` with the counter starting at zero, so any two
``(seed, stream_id)`` pairs are independent and a stream's draws never
depend on what happened in another stream.
"""

import numpy as np

ALGORITHM = "philox4x64-10"

UINT64_MAX = 2**64 - 1

# Stream ids at or above this value are reserved for non-tree consumers.
RESERVED_STREAM_BASE = 2**63
SMOTE_STREAM = RESERVED_STREAM_BASE + 1


def _check_word(value: int, name: str) -> int:
    value = int(value)
    if not 0 <= value <= UINT64_MAX:
        raise ValueError(f"{name} must be in [0, 2**64), got {value}")
    return value


class DeterministicRng:
    """A single-owner random stream identified by (seed, stream_id)."""

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = _check_word(seed, "seed")
        self.stream_id = _check_word(stream_id, "stream_id")
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._bit_generator = np.random.Philox(key=key)
        self._generator = np.random.Generator(self._bit_generator)

    def __repr__(self) -> str:
        return f"<DeterministicRng(seed={self.seed}, stream_id={self.stream_id})>"

    def child(self, stream_id: int) -> "DeterministicRng":
        """A fresh stream on the same seed; independent of this stream's position."""
        return DeterministicRng(self.seed, stream_id)

    def raw(self, n: int) -> np.ndarray:
        """The next ``n`` raw 64-bit words of the stream."""
        return np.asarray(self._bit_generator.random_raw(n), dtype=np.uint64)

    def random(self, size=None):
        """Uniform floats in [0, 1)."""
        return self._generator.random(size)

    def integers(self, low: int, high: int, size=None):
        """Uniform integers in [low, high)."""
        return self._generator.integers(low, high, size=size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self._generator.normal(loc, scale, size)

    def permutation(self, n_or_array):
        return self._generator.permutation(n_or_array)

    def choice(self, values, size: int, replace: bool = False) -> np.ndarray:
        return self._generator.choice(values, size=size, replace=replace)


def derive_seed(seed: int, *path: int) -> int:
    """
    Map a seed and an integer path to a new 64-bit seed.

    Uses ``numpy.random.SeedSequence(seed, spawn_key=path)``, whose hashing is
    fixed across numpy releases and platforms.

    Args:
        seed: Parent seed
        *path: Non-negative integers naming the child (e.g. repeat, fold)

    Returns:
        Derived seed in [0, 2**64)
    """
    sequence = np.random.SeedSequence(_check_word(seed, "seed"), spawn_key=tuple(path))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
