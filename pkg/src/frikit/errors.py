"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so that the CLI and the
benchmark can report failures as data instead of tracebacks.
"""
from __future__ import annotations


class FriError(Exception):
    code = "FriError"

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.code)
        self.detail = detail

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self), **self.detail}


class FuzzySetError(FriError, ValueError):
    code = "FuzzySetError"


class EmptySet(FuzzySetError):
    code = "EmptySet"


class UnorderedAbscissae(FuzzySetError):
    code = "UnorderedAbscissae"


class MembershipOutOfRange(FuzzySetError):
    code = "MembershipOutOfRange"


class NotConvex(FuzzySetError):
    code = "NotConvex"


class NotCnf(FuzzySetError):
    code = "NotCnf"


class AlphaOutOfRange(FuzzySetError):
    code = "AlphaOutOfRange"


class DegenerateArea(FuzzySetError):
    code = "DegenerateArea"


class RuleBaseError(FriError, ValueError):
    code = "RuleBaseError"


class DimensionMismatch(RuleBaseError):
    code = "DimensionMismatch"


class NoFlankingRules(RuleBaseError):
    code = "NoFlankingRules"


class InvalidRuleBase(RuleBaseError):
    code = "InvalidRuleBase"


class InterpolationError(FriError, ArithmeticError):
    code = "InterpolationError"


class DegenerateGeometry(InterpolationError):
    code = "DegenerateGeometry"


class MethodInapplicable(InterpolationError):
    code = "MethodInapplicable"


class FisError(FriError, ValueError):
    """Base class for file-format problems; ``line``/``col`` are 1-based."""

    code = "FisError"

    def __init__(self, message: str = "", line: int | None = None, col: int | None = None, **detail):
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message, line=line, col=col, **detail)
        self.line = line
        self.col = col


class FisSyntaxError(FisError):
    code = "SyntaxError"


class ParamsyLengthMismatch(FisError):
    code = "ParamsyLengthMismatch"


class ParamsyShapeMismatch(FisError):
    code = "ParamsyShapeMismatch"


class UnknownShapeCode(FisError):
    code = "UnknownShapeCode"


class MissingSection(FisError):
    code = "MissingSection"


class DimensionGap(FisError):
    code = "DimensionGap"
