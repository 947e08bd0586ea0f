"""Per-image seed handling: sign-derived construction, redundant enhancement
of the seed channel, and majority-vote extraction.

The seed is an M-bit value read from the signs of the first M seed-channel
elements (strictly positive -> 1, otherwise 0). Enhancement writes R extra
sign-coded copies into the following R*M positions using value swaps only, so
the channel keeps its exact value multiset and stays Gaussian. Extraction
majority-votes each bit over its R+1 copies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CapacityError, ConfigError, EnhancementExhaustedError
from .latent import LatentTensor


@dataclass(frozen=True)
class Seed:
    """An M-bit seed; bits[0] is the most significant bit of as_integer()."""

    bits: tuple

    def __post_init__(self):
        if len(self.bits) < 1 or any(b not in (0, 1) for b in self.bits):
            raise ConfigError("seed bits must be a non-empty 0/1 sequence")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))

    @property
    def bit_length(self) -> int:
        return len(self.bits)

    def as_integer(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def to_hex(self) -> str:
        n_bytes = (self.bit_length + 7) // 8
        return self.as_integer().to_bytes(n_bytes, "big").hex()

    @classmethod
    def from_integer(cls, value: int, bit_length: int) -> "Seed":
        if value < 0 or value >= (1 << bit_length):
            raise ConfigError(f"{value} does not fit in {bit_length} bits")
        return cls(tuple((value >> (bit_length - 1 - i)) & 1 for i in range(bit_length)))

    @classmethod
    def from_hex(cls, hex_string: str, bit_length: int) -> "Seed":
        return cls.from_integer(int(hex_string, 16), bit_length)


@dataclass(frozen=True)
class SequentialMapping:
    """Bit index -> seed-channel position, by linear unfolding.

    Index n (0-based) maps to flat position n, i.e. channel n // (h*w),
    row (n % (h*w)) // w, col n % w.
    """

    channels: int
    height: int
    width: int

    @property
    def capacity(self) -> int:
        return self.channels * self.height * self.width

    def position(self, index: int):
        if not 0 <= index < self.capacity:
            raise CapacityError(f"index {index} outside capacity {self.capacity}")
        hw = self.height * self.width
        return index // hw, (index % hw) // self.width, index % self.width

    @classmethod
    def for_tensor(cls, z: LatentTensor) -> "SequentialMapping":
        return cls(z.channels, z.height, z.width)


@dataclass(frozen=True)
class RedundancyConfig:
    """Redundancy count R (R+1 total copies, forced odd so votes cannot tie)."""

    redundancy_count: int
    bit_length: int

    def __post_init__(self):
        if self.bit_length < 1:
            raise ConfigError("bit_length must be >= 1")
        if self.redundancy_count < 0 or (self.redundancy_count + 1) % 2 == 0:
            raise ConfigError("R+1 must be odd (R even) so majority votes cannot tie")


def _check_mapping(seed_channel: LatentTensor, mapping: SequentialMapping):
    if mapping.capacity != seed_channel.data.size:
        raise CapacityError(
            f"mapping capacity {mapping.capacity} != channel size {seed_channel.data.size}"
        )


def construct_seed(seed_channel: LatentTensor, bit_length: int, mapping: SequentialMapping) -> Seed:
    """Read the M-bit seed from element signs: bit = 1 iff value > 0."""
    _check_mapping(seed_channel, mapping)
    if bit_length > mapping.capacity:
        raise CapacityError(f"{bit_length} bits exceed capacity {mapping.capacity}")
    values = seed_channel.flat()[:bit_length]
    return Seed(tuple(int(v > 0.0) for v in values))


def construct_seed_raw(seed_channel: LatentTensor, bit_length: int, mapping: SequentialMapping) -> Seed:
    """Ablation variant: bits from the raw stored values, not their signs.

    Takes the least-significant mantissa bit of each float32, which any
    channel perturbation scrambles. Used to measure what sign-derived
    construction buys.
    """
    _check_mapping(seed_channel, mapping)
    if bit_length > mapping.capacity:
        raise CapacityError(f"{bit_length} bits exceed capacity {mapping.capacity}")
    raw = seed_channel.flat()[:bit_length].view(np.uint32)
    return Seed(tuple(int(b) for b in (raw & 1)))


def enhance_seed_channel(
    seed_channel: LatentTensor, seed: Seed, redundancy: int, mapping: SequentialMapping
) -> LatentTensor:
    """Write R redundant sign-coded copies of the seed into the channel.

    Swap-only edits: the output is a permutation of the input values. Base
    positions 0..M-1 are never touched; copy r lives at positions
    [r*M, (r+1)*M). A mismatched position is fixed by swapping in the nearest
    later element with the wanted sign; the search may run past the block and
    raises EnhancementExhaustedError if it falls off the channel end.
    """
    _check_mapping(seed_channel, mapping)
    m = seed.bit_length
    RedundancyConfig(redundancy, m)
    if (redundancy + 1) * m > mapping.capacity:
        raise CapacityError(
            f"(R+1)*M = {(redundancy + 1) * m} exceeds capacity {mapping.capacity}"
        )
    values = seed_channel.flat().copy()
    bits = np.asarray(seed.bits, dtype=np.uint8)
    swaps = _kernels.enhance_inplace(values, bits, redundancy)
    if swaps < 0:
        raise EnhancementExhaustedError(
            "no matching-sign element left between a mismatched position and the channel end"
        )
    return seed_channel.with_data(values)


def extract_seed(
    seed_channel: LatentTensor, bit_length: int, redundancy: int, mapping: SequentialMapping
) -> Seed:
    """Majority-vote the seed from its R+1 sign-coded copies.

    Bit m's votes sit at positions {m} + {r*M + m : r in 1..R}. With R+1 odd
    no tie can occur; if a caller forces an even vote count, ties go to 1.
    """
    _check_mapping(seed_channel, mapping)
    votes = redundancy + 1
    if votes * bit_length > mapping.capacity:
        raise CapacityError(
            f"(R+1)*M = {votes * bit_length} exceeds capacity {mapping.capacity}"
        )
    region = seed_channel.flat()[: votes * bit_length].reshape(votes, bit_length)
    ones = (region > 0.0).sum(axis=0)
    bits = (2 * ones >= votes).astype(int)
    return Seed(tuple(int(b) for b in bits))
