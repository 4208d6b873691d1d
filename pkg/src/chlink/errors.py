"""Exception hierarchy shared by every module."""


class ChlinkError(ValueError):
    """Base class for all user-facing errors raised by chlink."""


class MismatchedContext(ChlinkError):
    """Operands live in different ambient algebras (generator count or truncation)."""


class NonzeroConstantTerm(ChlinkError):
    pass


class ConstantTermNotOne(ChlinkError):
    pass


class NotALieElement(ChlinkError):
    pass


class IndexOutOfRange(ChlinkError):
    pass


class WordSyntaxError(ChlinkError):
    """A token of a word or input file could not be parsed.

    ``token`` and ``line`` (1-based, when known) locate the offending input.
    """

    def __init__(self, message, token=None, line=None):
        super().__init__(message)
        self.token = token
        self.line = line


class PositionOutOfRange(WordSyntaxError):
    pass


class NotPure(ChlinkError):
    pass


class HasDoublePoints(ChlinkError):
    pass


class NoDoublePoints(ChlinkError):
    pass


class WrongDoubleCount(ChlinkError):
    pass
