"""Exception types raised by the ditherfeat pipeline.

File-system problems use the builtin ``OSError`` family; everything below is
a data or usage problem specific to this package.
"""


class DitherFeatError(Exception):
    """Base class for all ditherfeat-specific errors."""


class FormatError(DitherFeatError):
    """Malformed or unsupported image file content."""


class ImageTooSmall(DitherFeatError):
    """Image cannot host the requested block/pattern geometry."""


class OutOfBounds(DitherFeatError, IndexError):
    """Grid coordinate outside the valid pattern range."""


class DomainError(DitherFeatError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class DegenerateOutput(DitherFeatError, ValueError):
    """Requested transform would produce an empty image."""


class EmptyPointSet(DitherFeatError, ValueError):
    """Centroid of zero points is undefined."""


class DegenerateSpread(DitherFeatError, ValueError):
    """All squared centroid distances are zero; bins cannot be formed."""


class OutOfRange(DitherFeatError, ValueError):
    """Squared distance exceeds the largest bin edge."""


class ShapeMismatch(DitherFeatError, ValueError):
    """Histograms or vectors with incompatible shapes."""


class EmptyClass(DitherFeatError, ValueError):
    """A training class has no examples."""


class DimensionMismatch(DitherFeatError, ValueError):
    """Vector length does not match the model or the other vectors."""


class InsufficientData(DitherFeatError, ValueError):
    """Not enough images or categories to run the requested protocol."""
