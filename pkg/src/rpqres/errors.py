"""Exception types shared across the package.

Each maps to one CLI exit code so scripts can distinguish bad input from
blown resource caps from a solver declining an instance it cannot handle.
"""


class InputError(ValueError):
    """Malformed input: regex syntax, file format, or failed validation."""

    exit_code = 2


class ResourceCapError(RuntimeError):
    """A configurable size cap was exceeded before an answer was reached."""

    exit_code = 3


class SolverRefusal(RuntimeError):
    """The instance falls outside the class a specialised solver handles."""

    exit_code = 4
