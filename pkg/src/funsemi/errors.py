"""Exception types shared by every module."""


class AlgebraError(ValueError):
    """Invalid argument: an object does not have the algebraic property an operation needs."""


class ResourceLimitError(RuntimeError):
    """A configured size bound would be exceeded."""

    def __init__(self, message, required=None, bound=None):
        super().__init__(message)
        self.required = required
        self.bound = bound


class ParseError(ValueError):
    """Malformed input text. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
