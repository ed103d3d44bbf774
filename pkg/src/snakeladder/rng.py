"""Counter-based die rolls built on SplitMix64.

Every simulated game owns a stream identified by a tuple of non-negative
integers (a tag, the start square, the game number, ...). The stream key is

    key = mix64(seed)
    for part in parts:
        key = mix64(key + GOLDEN + part)          (all arithmetic mod 2**64)

and roll ``n`` (``n = 0, 1, ...``) of the stream is

    x    = mix64(key + (n + 1) * GOLDEN)
    roll = 1 + (((x >> 32) * 6) >> 32)

which is exactly the SplitMix64 output sequence seeded with ``key`` followed
by a multiply-shift map of the top 32 bits onto 1..6 (no rejection; the bias
is below 2**-29). ``mix64`` is the SplitMix64 finaliser:

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

Rolls depend only on (seed, stream parts, n), so any partitioning of games
across workers reproduces the same paths.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

_U64 = np.uint64


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, *parts: int) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    key = mix64(seed)
    for part in parts:
        key = mix64(key + GOLDEN + part)
    return key


def roll_from_bits(x: int, faces: int = 6) -> int:
    return 1 + (((x >> 32) * faces) >> 32)


class DieStream:
    """Scalar reference generator: the rolls of one stream, in order."""

    def __init__(self, seed: int, *parts: int):
        self.key = stream_key(seed, *parts)
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def roll(self) -> int:
        return roll_from_bits(self.next_u64())


# Vectorised versions; numpy uint64 arithmetic wraps mod 2**64.

def mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> _U64(30))
    z = z * _U64(MIX1)
    z = z ^ (z >> _U64(27))
    z = z * _U64(MIX2)
    return z ^ (z >> _U64(31))


def stream_keys(seed: int, prefix: tuple[int, ...], last: np.ndarray) -> np.ndarray:
    """Keys for streams ``(*prefix, last[g])`` for each element of ``last``."""
    base = stream_key(seed, *prefix)
    z = np.full(len(last), base, dtype=_U64)
    z = z + _U64(GOLDEN) + np.asarray(last, dtype=_U64)
    return mix64_array(z)


def rolls_array(keys: np.ndarray, counter: int, faces: int = 6) -> np.ndarray:
    """Roll number ``counter`` (0-based) of every stream in ``keys``."""
    x = mix64_array(keys + _U64(((counter + 1) * GOLDEN) & MASK64))
    return (((x >> _U64(32)) * _U64(faces)) >> _U64(32)).astype(np.intp) + 1
