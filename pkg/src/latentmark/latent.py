"""Latent tensors: Gaussian sampling, channel splitting/merging, and the
bit-exact LTN1 on-disk format.

Element order is row-major over (channel, row, col) everywhere; values are
stored as IEEE-754 binary32 little-endian. Tensors are immutable values:
every operation returns a fresh tensor and the wrapped array is read-only.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import BadMagicError, ConfigError, DimensionError, TruncatedFileError
from .rng import RngState

MAGIC = b"LTN1"
_HEADER = struct.Struct("<4sIII")
_MAX_ELEMENTS = 1 << 31  # guards against absurd headers before allocating


@dataclass(frozen=True)
class LatentTensor:
    """A c*h*w array of finite float32 values (a latent-noise stand-in).

    Parts produced by split() may have zero channels; h and w are always >= 1.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float32)
        if arr.ndim != 3:
            raise DimensionError(f"expected 3 dimensions (c,h,w), got {arr.ndim}")
        if arr.shape[1] < 1 or arr.shape[2] < 1:
            raise DimensionError(f"height/width must be >= 1, got {arr.shape}")
        if arr.size and not np.isfinite(arr).all():
            raise ConfigError("latent values must be finite")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def channels(self) -> int:
        return self.data.shape[0]

    @property
    def height(self) -> int:
        return self.data.shape[1]

    @property
    def width(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self):
        return self.data.shape

    def flat(self) -> np.ndarray:
        """Read-only flat view in (channel, row, col) order."""
        return self.data.reshape(-1)

    def with_data(self, arr: np.ndarray) -> "LatentTensor":
        return LatentTensor(np.asarray(arr, dtype=np.float32).reshape(self.shape))


@dataclass(frozen=True)
class ChannelSplit:
    """Contiguous channel partition: seed | watermark | remaining."""

    seed_channels: int
    watermark_channels: int
    remaining_channels: int

    def __post_init__(self):
        if self.seed_channels < 1 or self.watermark_channels < 1:
            raise ConfigError("seed and watermark parts need at least one channel")
        if self.remaining_channels < 0:
            raise ConfigError("remaining channel count cannot be negative")

    @property
    def total(self) -> int:
        return self.seed_channels + self.watermark_channels + self.remaining_channels


def sample_gaussian_latent(c: int, h: int, w: int, rng: RngState) -> LatentTensor:
    """Sample a c*h*w tensor of i.i.d. standard-normal values, advancing rng."""
    if c < 1 or h < 1 or w < 1:
        raise DimensionError("c, h, w must all be >= 1")
    values = rng.normals(c * h * w)
    return LatentTensor(values.astype(np.float32).reshape(c, h, w))


def split(z: LatentTensor, cfg: ChannelSplit):
    """Slice z into (seed, watermark, remaining) contiguous channel groups."""
    if cfg.total != z.channels:
        raise DimensionError(
            f"split {cfg.seed_channels}+{cfg.watermark_channels}+{cfg.remaining_channels} "
            f"!= {z.channels} channels"
        )
    c_k, c_w = cfg.seed_channels, cfg.watermark_channels
    seed = LatentTensor(z.data[:c_k].copy())
    wm = LatentTensor(z.data[c_k : c_k + c_w].copy())
    rest = LatentTensor(z.data[c_k + c_w :].copy())
    return seed, wm, rest


def merge(seed_part: LatentTensor, wm_part: LatentTensor, rest_part: LatentTensor) -> LatentTensor:
    """Concatenate parts along the channel axis; exact inverse of split."""
    shapes = {(p.height, p.width) for p in (seed_part, wm_part, rest_part)}
    if len(shapes) > 1:
        raise DimensionError(f"spatial dimensions differ across parts: {sorted(shapes)}")
    return LatentTensor(np.concatenate([seed_part.data, wm_part.data, rest_part.data], axis=0))


def write_latent(z: LatentTensor, path) -> None:
    """Write z in LTN1 format: magic 'LTN1' | c,h,w u32 LE | float32 LE payload."""
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, z.channels, z.height, z.width))
        fh.write(z.data.astype("<f4").tobytes())


def read_latent(path) -> LatentTensor:
    """Read an LTN1 file back into a tensor, bit-exactly."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise TruncatedFileError(f"{path}: header truncated")
        magic, c, h, w = _HEADER.unpack(header)
        if magic != MAGIC:
            raise BadMagicError(f"{path}: bad magic {magic!r}")
        if c < 1 or h < 1 or w < 1 or c * h * w > _MAX_ELEMENTS:
            raise DimensionError(f"{path}: implausible dimensions {c}x{h}x{w}")
        payload = fh.read(4 * c * h * w + 1)
    if len(payload) != 4 * c * h * w:
        raise TruncatedFileError(
            f"{path}: payload has {len(payload)} bytes, header promises {4 * c * h * w}"
        )
    values = np.frombuffer(payload, dtype="<f4").reshape(c, h, w)
    return LatentTensor(values.astype(np.float32))
