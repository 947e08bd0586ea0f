"""Deterministic randomness: a PCG64 (XSL-RR 128/64) stream with explicit
state, plus hierarchical derivation of independent streams from a master seed.

All randomness in the package flows through RngState so every experiment is
reproducible from (config, master seed). Normal deviates use the polar
Box-Muller transform with a fixed consumption order (see _kernels); fills
never carry a spare value across calls, so each call is a pure function of
the state it starts from.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ConfigError

MASK128 = (1 << 128) - 1

# Default PCG64 stream constant (pcg_variants.h PCG_DEFAULT_INCREMENT_128).
DEFAULT_INCREMENT = 0x5851F42D4C957F2D14057B7EF767814F

_DERIVE_TAG = b"latentmark.rng.v1"


@dataclass
class RngState:
    """Explicit PCG64 generator state: 128-bit state and odd 128-bit increment.

    Identical (state, increment) always reproduces identical output streams.
    Methods advance the state in place; use clone() to branch.
    """

    state: int
    increment: int = DEFAULT_INCREMENT
    generator_id: str = field(default="pcg64", repr=False)

    def __post_init__(self):
        if self.generator_id != "pcg64":
            raise ConfigError(f"unknown generator_id: {self.generator_id!r}")
        if not 0 <= self.state <= MASK128:
            raise ConfigError("state must fit in 128 bits")
        if not 0 <= self.increment <= MASK128 or self.increment % 2 == 0:
            raise ConfigError("increment must be an odd 128-bit integer")

    def clone(self) -> "RngState":
        return RngState(self.state, self.increment)

    def next_u64(self) -> int:
        out, self.state = _kernels.fill_uint64(self.state, self.increment, 1)
        return int(out[0])

    def uint64s(self, n: int) -> np.ndarray:
        out, self.state = _kernels.fill_uint64(self.state, self.increment, n)
        return out

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles in [0, 1)."""
        out, self.state = _kernels.fill_uniform(self.state, self.increment, n)
        return out

    def normals(self, n: int) -> np.ndarray:
        """n standard-normal doubles (polar Box-Muller)."""
        out, self.state = _kernels.fill_normal(self.state, self.increment, n)
        return out

    def integers_below(self, bound: int, n: int) -> np.ndarray:
        """n integers in [0, bound) via next_u64 mod bound.

        Modulo bias is negligible for the bounds used here (< 2^32) and keeps
        the draw count independent of the values, which trace tests rely on.
        """
        if bound <= 0:
            raise ConfigError("bound must be positive")
        return (self.uint64s(n) % np.uint64(bound)).astype(np.int64)


def derive_rngstate(master_seed: int, *path: int) -> RngState:
    """Derive an independent RngState from a master seed and an index path.

    Hashes (tag, master_seed, path) with BLAKE2b into a fresh 128-bit state
    and an odd 128-bit increment, so sibling streams are statistically
    independent and stable across runs and platforms.
    """
    h = hashlib.blake2b(digest_size=32)
    h.update(_DERIVE_TAG)
    h.update(int(master_seed).to_bytes(16, "little", signed=False))
    for part in path:
        h.update(int(part).to_bytes(16, "little", signed=False))
    digest = h.digest()
    state = int.from_bytes(digest[:16], "little")
    increment = int.from_bytes(digest[16:], "little") | 1
    return RngState(state, increment)
