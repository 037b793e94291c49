"""Exception types shared across the package.

Every error raised on purpose by this library derives from QuiverEdError,
so callers can catch one base class at API boundaries.  Resource-limit
errors (search caps, enumeration caps) are grouped under ResourceLimitError
because the command line maps them to a dedicated exit code.
"""

from __future__ import annotations


class QuiverEdError(Exception):
    """Base class for all errors raised by quiver_ed."""


class InvalidArrowError(QuiverEdError):
    """An arrow references a vertex outside 1..n."""


class EmptyQuiverError(QuiverEdError):
    """A quiver needs at least one vertex."""


class SizeMismatchError(QuiverEdError):
    """A dimension vector has the wrong length for the quiver."""


class NegativeEntryError(QuiverEdError):
    """A dimension vector entry is negative where nonnegative is required."""


class ZeroVectorError(QuiverEdError):
    """The zero vector is not allowed here."""


class LoopedVertexError(QuiverEdError):
    """A reflection was requested at a vertex carrying a loop."""


class NotTameError(QuiverEdError):
    """An isotropic radical vector only exists on tame connected quivers."""


class RadicalRankUnexpectedError(QuiverEdError):
    """The radical of the symmetrized form has unexpected dimension."""


class NotARootError(QuiverEdError):
    """The vector is not a root of the quiver."""


class NotSchurRootError(QuiverEdError):
    """The vector is not a Schur root of the quiver."""


class HypothesisViolatedError(QuiverEdError):
    """The quiver does not satisfy the hypothesis a construction needs."""


class UnsupportedRError(QuiverEdError):
    """No closed form is implemented for this arrow multiplicity."""


class FieldNotPrimeError(QuiverEdError):
    """Finite-field routines work over prime fields only."""


class ShapeMismatchError(QuiverEdError):
    """Representation matrices do not match the dimension vector."""


class QuiverFileError(QuiverEdError):
    """A quiver file could not be parsed."""


class ResourceLimitError(QuiverEdError):
    """Base class for errors caused by hitting a configured cap."""


class SearchExhaustedError(ResourceLimitError):
    """An orbit search hit its node cap before finding the target."""


class BoundTooLargeError(ResourceLimitError):
    """An enumeration request would scan more points than the cap allows."""


class SpaceTooLargeError(ResourceLimitError):
    """The representation space is too large to enumerate exhaustively."""


class EndAlgebraTooLargeError(ResourceLimitError):
    """An endomorphism algebra is too large to enumerate element by element."""
