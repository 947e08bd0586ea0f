"""Seed-keyed deterministic permutations of flattened latent values.

The M-bit seed, zero-extended, becomes the 128-bit PCG64 state (default
stream); a descending Fisher-Yates pass with j = next_u64 mod (i+1) yields
the forward permutation. Verification recomputes the same permutation from
the recovered seed and applies its exact inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConfigError, DimensionError
from .rng import DEFAULT_INCREMENT
from .seedcraft import Seed


@dataclass(frozen=True)
class Permutation:
    """A bijection on [0, size); applying it sends input i to slot forward[i]."""

    forward: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.forward, dtype=np.int64)
        if arr.ndim != 1 or arr.size < 1:
            raise ConfigError("forward must be a non-empty 1-d index array")
        counts = np.bincount(arr, minlength=arr.size)
        if arr.min() < 0 or arr.max() >= arr.size or (counts != 1).any():
            raise ConfigError("forward is not a permutation")
        arr.flags.writeable = False
        object.__setattr__(self, "forward", arr)

    @property
    def size(self) -> int:
        return self.forward.size


def keyed_permutation(seed: Seed, length: int) -> Permutation:
    """Fisher-Yates permutation of [0, length) keyed by the seed."""
    if length < 1:
        raise ConfigError("length must be >= 1")
    forward, _ = _kernels.fisher_yates(seed.as_integer(), DEFAULT_INCREMENT, length)
    return Permutation(forward)


def shuffle(values: np.ndarray, perm: Permutation) -> np.ndarray:
    """Return out with out[perm.forward[i]] = values[i]."""
    values = np.asarray(values)
    if values.ndim != 1 or values.size != perm.size:
        raise DimensionError(f"expected {perm.size} flat values, got shape {values.shape}")
    out = np.empty_like(values)
    out[perm.forward] = values
    return out


def unshuffle(values: np.ndarray, perm: Permutation) -> np.ndarray:
    """Exact inverse of shuffle: unshuffle(shuffle(x, p), p) == x."""
    values = np.asarray(values)
    if values.ndim != 1 or values.size != perm.size:
        raise DimensionError(f"expected {perm.size} flat values, got shape {values.shape}")
    return values[perm.forward]
