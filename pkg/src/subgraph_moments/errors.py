"""Exception hierarchy shared by all modules.

The CLI maps these to exit codes: validation and parse problems exit 2,
budget refusals exit 3, formula/enumeration mismatches exit 4.
"""


class SubgraphMomentsError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 2


class ValidationError(SubgraphMomentsError, ValueError):
    """Invalid graph, parameter or argument."""


class ParseError(ValidationError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OutOfRangeError(ValidationError):
    """A bound was requested outside the window where it is asserted."""


class UndefinedBoundError(ValidationError):
    """The bound has a zero denominator (e.g. S1 = 0)."""


class InconsistentBoundsError(ValidationError):
    """Caller-supplied support bounds contradict the computed moments."""


class BudgetExceededError(SubgraphMomentsError):
    """Exhaustive enumeration would exceed the configured subset budget."""

    exit_code = 3

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} subsets but the budget is {budget}; "
            f"rerun with --budget {required} or larger"
        )


class MismatchError(SubgraphMomentsError):
    """Closed-form moments disagree with exhaustive enumeration."""

    exit_code = 4
