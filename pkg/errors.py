"""Exception hierarchy for germforge."""


class GermforgeError(Exception):
    """Base class for every error raised by the library."""


class BackendMismatch(GermforgeError):
    pass


class NotValidated(GermforgeError):
    """A backend was used before validate_left_cancellative accepted it."""


class InvalidTable(GermforgeError):
    pass


class NotRightLcm(GermforgeError):
    pass


class NoNormalForm(GermforgeError):
    pass


class WordTooLong(GermforgeError):
    pass


class SizeLimit(GermforgeError):
    pass


class NotComposable(GermforgeError):
    pass


class OutsideBisection(GermforgeError):
    pass


class OracleDisagreement(GermforgeError):
    pass


class BadRelation(GermforgeError):
    """A join relation f = e_1 ∨ ... ∨ e_k whose domains do not match."""


class ParseError(GermforgeError):
    def __init__(self, message: str, position: int = 0, expected: str = ""):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
