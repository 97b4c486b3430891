"""Exception hierarchy shared by all covercount modules."""


class CoverCountError(Exception):
    """Base class; ``code`` is the machine-readable name used in JSON output."""

    code = "error"
    exit_code = 1


class NonPositivePart(CoverCountError, ValueError):
    code = "non_positive_part"


class ProfileDegreeMismatch(CoverCountError, ValueError):
    code = "profile_degree_mismatch"


class OverRamified(CoverCountError, ValueError):
    code = "over_ramified"


class DegreeTooSmall(CoverCountError, ValueError):
    code = "degree_too_small"


class BadArguments(CoverCountError, ValueError):
    code = "bad_arguments"


class InvalidKey(CoverCountError, ValueError):
    code = "invalid_key"


class BudgetExceeded(CoverCountError, RuntimeError):
    code = "budget_exceeded"
    exit_code = 3


class UnreachableCase(CoverCountError, RuntimeError):
    code = "unreachable_case"


class InternalError(CoverCountError, RuntimeError):
    code = "internal_error"
