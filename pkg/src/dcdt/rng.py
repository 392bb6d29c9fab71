"""Pinned deterministic pseudo-random stream.

The generator is splitmix64 (Steele/Lea/Vigna; Vigna's public-domain C
reference) used in counter mode: the i-th value of the stream for seed s
equals the (i+1)-th output of sequential splitmix64 started from state s,

    out(s, i) = mix64(s + (i+1) * 0x9E3779B97F4A7C15)  (mod 2**64),

which makes the stream a pure function of (seed, index) and therefore
vectorizable and platform independent.  Uniform doubles in [0, 1) are
derived as (out >> 11) * 2**-53.

Test vectors (sequential outputs for seed 0):
    0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F
"""

import numpy as np

_GAMMA = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_TO_UNIT = 2.0 ** -53


def mix64(z: int) -> int:
    """Finalizing mixer of splitmix64 (scalar, Python ints)."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def raw_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """`count` consecutive 64-bit stream values starting at `offset`."""
    if count < 0:
        raise ValueError("count must be non-negative")
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK) + idx * np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def uniform_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """`count` uniform doubles in [0, 1) from the pinned stream."""
    bits = raw_stream(seed, count, offset)
    return (bits >> np.uint64(11)).astype(np.float64) * _TO_UNIT


def child_seed(seed: int, k: int) -> int:
    """Sub-stream seed for stage `k`: the k-th value of the seed's stream.

    Stages of a pipeline (e.g. trial and secondary embedding) draw from
    disjoint, individually reproducible streams.
    """
    return mix64((seed + (k + 1) * _GAMMA) & _MASK)
