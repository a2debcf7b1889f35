"""Exception types shared by all modules."""


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class ValidationError(ValueError):
    """Inputs that are well formed but mutually incompatible.

    ``field`` points at the offending input field when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
