"""Exception hierarchy shared across the package."""


class PixelPilotError(Exception):
    """Base class for all package errors."""


class ShapeError(PixelPilotError):
    """Tensor shapes incompatible with the requested operation."""


class ConfigError(PixelPilotError):
    """Invalid configuration value or inconsistent config combination."""


class MaskError(PixelPilotError):
    """Attention mask violates a hard precondition (e.g. fully-masked row)."""


class VocabularyError(PixelPilotError):
    """Instruction text contains a word outside the closed vocabulary."""


class FormatError(PixelPilotError):
    """Corrupt or unrecognized on-disk blob (checkpoint, container, manifest)."""


class ValidationError(PixelPilotError):
    """Domain object violates its invariants (e.g. action with 5 keys)."""


class ProtocolError(PixelPilotError):
    """Malformed realtime-protocol message."""


class NumericsError(PixelPilotError):
    """Non-finite values appeared where finite math is required."""
