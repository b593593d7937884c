"""Exception types shared across the package."""


class DomainError(ValueError):
    """A mathematical precondition was violated (wrong field, singular
    matrix, reducible modulus, value out of range, ...)."""


class ParseError(ValueError):
    """A text input (polynomial, matrix, code file, report) is malformed."""
