"""Exception hierarchy for heterocut.

Every error derives from HeterocutError and from the closest builtin, so
callers may catch either.
"""


class HeterocutError(Exception):
    """Base class for all heterocut errors."""


class DegeneratePair(HeterocutError, ValueError):
    """Two viewing directions coincide; no unique common line exists."""


class DimensionMismatch(HeterocutError, ValueError):
    """Inputs disagree on the number of images or vertices."""


class InstanceTooLarge(HeterocutError, ValueError):
    """The requested exact or SDP solve exceeds its size gate."""


class TooFewImages(HeterocutError, ValueError):
    """Rotation synchronization needs at least three images."""


class DisconnectedPairs(HeterocutError, ValueError):
    """The valid-pair graph is disconnected, so synchronization is underdetermined."""


class SolverFailure(HeterocutError, RuntimeError):
    """An iterative solver did not reach its tolerance within the iteration cap."""


class DataFormatError(HeterocutError, ValueError):
    """A graph or dataset file is malformed."""
