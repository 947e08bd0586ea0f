"""Exception types shared across the package."""


class LatentMarkError(Exception):
    """Base class for all package errors."""


class ConfigError(LatentMarkError):
    """Invalid or inconsistent configuration."""


class DimensionError(LatentMarkError):
    """Shape or channel-count mismatch between tensors or configs."""


class BadMagicError(LatentMarkError):
    """Latent file does not start with the expected magic bytes."""


class TruncatedFileError(LatentMarkError):
    """Latent file payload shorter or longer than the header promises."""


class CapacityError(LatentMarkError):
    """Requested bits/redundancy exceed the seed-channel capacity."""


class EnhancementExhaustedError(LatentMarkError):
    """Seed enhancement ran out of matching-sign elements to swap in."""


class TrainingDivergedError(LatentMarkError):
    """Probe training produced a non-finite loss."""

    def __init__(self, message, loss_trace=None):
        super().__init__(message)
        self.loss_trace = loss_trace or []


class SingleClassError(LatentMarkError):
    """A ranking metric needs at least one positive and one negative."""
