"""Exception hierarchy shared by all toolkit modules.

Exit-code mapping used by the CLI:
  usage errors        -> 1
  input/format errors -> 2
  validation errors   -> 3
"""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class AudioFormatError(ToolkitError):
    """File is not a WAV we support (codec, bit depth, channel count...)."""


class TruncatedFileError(ToolkitError, IOError):
    """File ended before the declared chunk sizes were satisfied."""


class EmptyAudioError(ToolkitError):
    """Audio stream contains zero samples."""


class ConfigurationError(ToolkitError):
    """Spectral / analysis configuration is internally inconsistent."""


class SchemaError(ToolkitError):
    """A JSON document does not match its declared schema."""


class DegenerateEmbeddingError(ToolkitError):
    """Embedding vector has zero norm and cannot be normalized."""


class ValidationError(ToolkitError):
    """Dataset or cross-file consistency check failed."""


class InsufficientDataError(ToolkitError):
    """Too few observations for the requested statistic."""


class EmptyReportError(ToolkitError):
    """Aggregation requested over an empty record set."""
