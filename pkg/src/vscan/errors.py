"""Exception hierarchy shared by every stage of the pipeline."""


class VscanError(Exception):
    """Base class for all errors raised by this package."""

    #: exit code used by the command-line front end
    exit_code = 1


class BadInput(VscanError):
    exit_code = 2


class NoFrames(BadInput):
    pass


class DecodeError(BadInput):
    pass


class DecoderUnavailable(BadInput):
    pass


class InvalidRate(BadInput):
    pass


class ManifestError(BadInput):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IoError(BadInput):
    pass


class ShapeError(VscanError, ValueError):
    pass


class NormalizationError(VscanError, ValueError):
    pass


class UnknownFrame(VscanError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CacheVersionError(VscanError):
    pass
