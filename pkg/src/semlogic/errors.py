"""Exception hierarchy shared by all semlogic modules."""
from __future__ import annotations


class SemlogicError(Exception):
    pass


class StatementSyntaxError(SemlogicError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class VarOutOfRange(SemlogicError, ValueError):
    pass


class CapExceeded(SemlogicError, ValueError):
    pass


class MixedM(SemlogicError, ValueError):
    pass


class NotSubset(SemlogicError, ValueError):
    pass


class InvalidParams(SemlogicError, ValueError):
    pass


class DomainError(SemlogicError, ValueError):
    pass


class TruncatedStream(SemlogicError, EOFError):
    pass


class CorruptStream(SemlogicError, ValueError):
    pass


class RankOverflow(SemlogicError, ValueError):
    pass


class DimMismatch(SemlogicError, ValueError):
    pass


class PreconditionViolated(SemlogicError, ValueError):
    pass


class CodebookTooLarge(SemlogicError, ValueError):
    pass


class DecodeBudgetExceeded(SemlogicError, RuntimeError):
    pass


class EntailmentViolation(SemlogicError, ValueError):
    pass
