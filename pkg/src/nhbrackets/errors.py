"""Exception hierarchy shared across the package."""

from __future__ import annotations


class NHError(Exception):
    """Base class for all package errors."""


class NonFiniteEntries(NHError, ValueError):
    pass


class DimMismatch(NHError, ValueError):
    """Operands disagree in dimension.

    ``span`` is set when the mismatch comes from an expression node.
    """

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.span = span


class NormOverflow(NHError, ValueError):
    pass


class Singular(NHError, ArithmeticError):
    pass


class IllConditioned(NHError, ArithmeticError):
    def __init__(self, message: str, cond: float = float("inf")):
        super().__init__(message)
        self.cond = cond


class SingularHermitianPart(Singular):
    pass


class NonFiniteState(NHError, FloatingPointError):
    pass


class VanishingTrace(NHError, ZeroDivisionError):
    pass


class NonHermitianGenerator(NHError, ValueError):
    pass


class ExprError(NHError, ValueError):
    """Expression-language error carrying a ``(start, end)`` source span."""

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        self.span = span
        if span is not None:
            message = f"{message} (column {span[0] + 1})"
        super().__init__(message)

    @property
    def column(self) -> int | None:
        return None if self.span is None else self.span[0] + 1


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, span: tuple[int, int] | None = None,
                 expected: tuple[str, ...] = ()):
        if expected:
            message = f"{message}; expected one of: {', '.join(expected)}"
        super().__init__(message, span)
        self.expected = expected


class UnknownSymbol(ExprError):
    pass


class UnknownModel(NHError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown model"


class ParamOutOfRange(NHError, ValueError):
    pass


class SchemaError(NHError, ValueError):
    pass
