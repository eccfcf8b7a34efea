"""Exception hierarchy shared by every module."""


class FactorBreakError(Exception):
    """Base class for all errors raised by factorbreak."""


class ZeroInverse(FactorBreakError, ZeroDivisionError):
    pass


class DimensionMismatch(FactorBreakError, ValueError):
    pass


class ModulusMismatch(FactorBreakError, ValueError):
    pass


class SingularMatrix(FactorBreakError, ArithmeticError):
    pass


class NotInSpan(FactorBreakError, ArithmeticError):
    pass


class EmptySolutionSpace(FactorBreakError, ArithmeticError):
    """The commutation system had no nonzero solution (a bug for honest keys)."""


class NoInvertibleCombination(FactorBreakError, ArithmeticError):
    pass


class CommutingGenerators(FactorBreakError, ValueError):
    pass


class GenerationExhausted(FactorBreakError, RuntimeError):
    pass


class InvalidSpec(FactorBreakError, ValueError):
    pass


class ParseError(FactorBreakError, ValueError):
    """Malformed wire data; carries the offending field and/or line when known."""

    def __init__(self, message, *, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
