"""Exception types shared across the package."""


class QRadiusError(ValueError):
    """Base class for all errors raised by qradius."""


class MatrixFormatError(QRadiusError):
    """Malformed matrix input: wrong shape, ragged blocks, non-finite entries."""


class DimensionMismatch(QRadiusError):
    pass


class InvalidRequest(QRadiusError):
    """The request is well formed but mathematically meaningless.

    Raised for a 1x1 operator with |q| < 1 (no admissible pair x, y exists)
    and for bound evaluation at q = 0 (the inflation factor is unbounded).
    """
