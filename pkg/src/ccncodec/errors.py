"""Exception hierarchy shared across the codec."""


class CodecError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(CodecError):
    """Malformed, truncated, or otherwise unreadable file/stream."""


class DigestError(FormatError):
    """Checksum or model-digest mismatch."""


class ModeMismatchError(CodecError):
    """A model of one kind (bernoulli/mog) was used where the other is required."""


class TrainingDivergedError(CodecError):
    """Training produced a non-finite loss or gradient."""
