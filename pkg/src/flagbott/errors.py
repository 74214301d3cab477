"""Exception hierarchy. Each class carries the CLI exit code for its error class."""

from __future__ import annotations


class FlagBottError(Exception):
    exit_code = 1


class SpecError(FlagBottError):
    """Malformed tower description: parse errors, bad dimensions, invalid connections."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class UnsupportedCentralizer(FlagBottError):
    exit_code = 3


class InadmissibleCoefficients(FlagBottError):
    exit_code = 4


class RingMismatch(FlagBottError, ValueError):
    pass


class InhomogeneousSubstitution(FlagBottError, ValueError):
    pass


class NotInvariant(FlagBottError, ValueError):
    """A polynomial that was required to be invariant under a reflection group is not."""


class RankBoundExceeded(FlagBottError, ValueError):
    pass


class BudgetExceeded(FlagBottError):
    """Gröbner computation ran past its S-pair or degree budget."""


class EliminationFailed(FlagBottError):
    pass


class InternalConsistencyError(FlagBottError):
    """Two routes that must agree did not (e.g. non-exact Poincaré division)."""
