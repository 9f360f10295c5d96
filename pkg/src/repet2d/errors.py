"""Exception taxonomy shared by every module.

All library errors derive from Repet2dError so callers can catch one type.
The CLI maps subclasses to exit codes: ParseError -> 4, ShapeTooLarge -> 3,
everything else -> 2.
"""


class Repet2dError(Exception):
    """Base class for all errors raised by this package."""


class BadParam(Repet2dError):
    """A parameter is outside its documented range."""


class TooLarge(Repet2dError):
    """Requested object would exceed the documented size caps."""


class ShapeTooLarge(Repet2dError):
    """A work budget (area budget, solver work limit, cell limit) was exceeded."""


class ParseError(Repet2dError):
    """A text file (matrix / grammar / scheme / nd) failed to parse."""


class OutOfBounds(Repet2dError):
    """A 1-based coordinate or rectangle is outside the object."""


class RowMismatch(Repet2dError):
    """Horizontal concatenation of operands with different row counts."""


class ColMismatch(Repet2dError):
    """Vertical concatenation of operands with different column counts."""


class AxisMismatch(Repet2dError):
    """d-dimensional concatenation of operands that disagree off the glued axis."""


class CycleDetected(Repet2dError):
    """Grammar variables reference each other cyclically."""


class DimMismatch(Repet2dError):
    """Grammar rule operands have incompatible expansion dimensions."""


class DuplicateRHS(Repet2dError):
    """Two distinct grammar variables share the same right-hand side."""


class DanglingVariable(Repet2dError):
    """A grammar references a variable that has no rule."""


class NotPartition(Repet2dError):
    """Macro scheme phrases do not tile the grid exactly."""


class CyclicMap(Repet2dError):
    """Macro scheme copy map never reaches an explicit cell from some position."""


class OutOfBoundsSource(Repet2dError):
    """Macro scheme phrase source rectangle leaves the grid."""


class NotPowerOfTwoSquare(Repet2dError):
    """Peano-Hilbert scans are defined only on 2^i x 2^i inputs."""
