"""Exception types shared across the package."""

from __future__ import annotations


class TorsorError(Exception):
    """Base class for all package-specific errors."""


class EmptyMatrix(TorsorError):
    pass


class NotTotallyUnimodular(TorsorError):
    """Raised with a witness square submatrix whose determinant is bad.

    Attributes: rows (row indices), cols (element names), value (the det).
    """

    def __init__(self, rows, cols, value):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.value = value
        super().__init__(
            "submatrix rows=%r cols=%r has determinant %r" % (self.rows, self.cols, value)
        )


class NotABasis(TorsorError):
    pass


class WrongSide(TorsorError):
    """Element is on the wrong side of the basis for this fundamental chain."""


class IsLoop(TorsorError):
    pass


class IsColoop(TorsorError):
    pass


class NotInSpace(TorsorError):
    """Chain does not lie in the requested kernel / row space."""


class PreconditionViolated(TorsorError):
    pass


class NotTriangulating(TorsorError):
    """Signature pair is not triangulating; unique representatives may fail."""


class NotCompatibleOrientation(TorsorError):
    pass


class BudgetExceeded(TorsorError):
    pass


class NotPlanarEmbedding(TorsorError):
    pass


class Disconnected(TorsorError):
    pass


class InputFormatError(TorsorError):
    """Malformed input file; carries a line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
