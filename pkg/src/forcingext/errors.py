"""Exception types shared across the package."""


class ForcingError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(ForcingError, ValueError):
    """An operation was called outside its documented domain."""


class InvalidCondition(ForcingError, ValueError):
    """A pair of sets is not a condition of the forcing poset."""


class OracleError(ForcingError, RuntimeError):
    """A maximality oracle could not produce a verified answer."""


class ParseError(ForcingError, ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
        self.text = text


class SessionError(ForcingError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TowerAborted(ForcingError, RuntimeError):
    """An experimental tower stage hit an undecided membership question."""
