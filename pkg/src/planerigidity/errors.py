"""Exception types shared across the library."""


class ConductorError(ValueError):
    """Conductor outside the supported range, or an illegal embedding."""


class SingularMatrixError(ZeroDivisionError):
    """Inversion of a singular matrix."""


class NotFiniteOrderError(ValueError):
    """A matrix whose order exceeds the search cap."""


class GroupTooLargeError(ValueError):
    """Group closure exceeded its element cap."""


class OrbitTooLargeError(ValueError):
    """Orbit enumeration exceeded its cap."""


class NotInvariantError(ValueError):
    """A point set that is not stable under the requested group element."""


class MethodInapplicableError(ValueError):
    """An element violates the preconditions of the eigenvector method."""


class ParseError(ValueError):
    """Syntax or semantic error in a group file or expression."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
