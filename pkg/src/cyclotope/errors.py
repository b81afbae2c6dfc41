"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class ParseError(InvalidInputError):
    """A textual argument could not be parsed.

    ``position`` is the 0-based index of the offending comma-separated field,
    or ``None`` when the whole string is at fault.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured budget.

    ``stats`` carries whatever progress information was available when the
    budget was hit, so callers can report it.
    """

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = dict(stats or {})
