"""Exception types shared across the package."""


class ReesError(Exception):
    """Base class for every error raised by reeskit."""


class FieldError(ReesError):
    pass


class RingMismatch(ReesError):
    pass


class NotDivisible(ReesError):
    """Exact division failed: a term has too small an exponent.

    Raised by the transform of a generator through a non-permissible center.
    """


class ParseError(ReesError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")


class UnknownVariable(ParseError):
    pass


class InvalidDivisor(ReesError):
    pass


class NotSingularPoint(ReesError):
    pass


class UnsupportedCone(ReesError):
    pass


class NotMonic(ReesError):
    pass


class DegreeMismatch(ReesError):
    pass


class NotPePower(ReesError):
    pass


class NotPermissible(ReesError):
    pass


class NonTerminating(ReesError):
    pass


class NotMonomialCase(ReesError):
    pass


class StepError(ReesError):
    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"step {index}: {type(cause).__name__}: {cause}")
