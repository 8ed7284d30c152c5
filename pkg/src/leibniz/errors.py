"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LeibnizError(Exception):
    """Base class for all errors raised by :mod:`leibniz`."""


class PolynomialEntries(LeibnizError):
    """An operation that needs rank decisions received polynomial coefficients.

    Instantiate the free parameters (``Algebra.instantiate``) first.
    """


class DimensionMismatch(LeibnizError, ValueError):
    pass


class SingularMap(LeibnizError):
    pass


class NotInvariant(LeibnizError):
    pass


class UnknownPattern(LeibnizError, KeyError):
    pass


class CapExceeded(LeibnizError):
    pass


class UnknownSymbol(LeibnizError, KeyError):
    pass


class CyclicSubstitution(LeibnizError):
    pass


class BudgetExceeded(LeibnizError):
    pass


class BadDim(LeibnizError, ValueError):
    pass


class BadParam(LeibnizError, ValueError):
    pass


class ParseError(LeibnizError, ValueError):
    """Malformed scalar text or algebra file.

    ``line`` and ``column`` are 1-based and may be ``None`` when the position
    is not meaningful (for instance a structurally invalid JSON document).
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})" if column is not None else f" (line {line})"
        super().__init__(message + where)
