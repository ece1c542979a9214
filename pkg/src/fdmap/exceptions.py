"""Exception hierarchy."""


class FdmapError(Exception):
    """Base class for all errors raised by fdmap."""


class InvalidGridError(FdmapError, ValueError):
    pass


class BasisError(FdmapError, ValueError):
    pass


class RepresentationMismatchError(FdmapError, ValueError):
    """Two curves or datasets do not share a grid or a basis."""


class SingularFitError(FdmapError, ValueError):
    pass


class InvalidBandwidthError(FdmapError, ValueError):
    pass


class DisconnectedGraphError(FdmapError, ValueError):
    pass


class NonInvertibleMetricError(FdmapError, ValueError):
    pass


class DimensionError(FdmapError, ValueError):
    pass


class NumericFailureError(FdmapError, ArithmeticError):
    pass


class ScorerError(FdmapError, ValueError):
    pass


class DataFormatError(FdmapError, ValueError):
    """A data file could not be parsed."""
