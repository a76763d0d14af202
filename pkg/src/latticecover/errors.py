"""Exception hierarchy shared by every module."""


class LatticeError(ValueError):
    """Base class for all errors raised by latticecover."""


class DegeneratePairError(LatticeError):
    pass


class InsufficientVerticesError(LatticeError):
    pass


class OutOfRangeError(LatticeError):
    pass


class InvalidInputError(LatticeError):
    """A precondition on the input solution (usually: must be a cover) failed."""


class PreconditionError(LatticeError):
    pass


class MismatchedLatticeError(LatticeError):
    pass


class CapacityError(LatticeError):
    pass


class ParseError(LatticeError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        parts = []
        if line is not None:
            parts.append(f"line {line}")
        if column is not None:
            parts.append(f"column {column}")
        where = ", ".join(parts) + ": " if parts else ""
        super().__init__(where + message)
