"""Error taxonomy shared by the library and the CLI exit codes."""


class PreconditionError(ValueError):
    """An argument violates a documented precondition (gcd/domain/range)."""

    exit_code = 2


class BudgetError(RuntimeError):
    """A scan or enumeration would exceed the configured work budget."""

    exit_code = 3


class InternalCheckError(RuntimeError):
    """A built-in consistency check failed; indicates a bug or bad input."""

    exit_code = 4
