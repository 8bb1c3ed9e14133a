"""Exception hierarchy shared by every module of the package."""


class VarSampleError(Exception):
    """Base class for all package errors."""


class ConfigError(VarSampleError):
    """Invalid construction parameters or configuration."""


class CompositeModulus(ConfigError):
    pass


class EvenModulus(ConfigError):
    pass


class MixedFields(VarSampleError):
    pass


class DivisionByZero(VarSampleError, ZeroDivisionError):
    pass


class DimensionMismatch(VarSampleError, ValueError):
    pass


class ZeroPolynomial(VarSampleError, ValueError):
    pass


class BothZero(VarSampleError, ValueError):
    pass


class SplitStall(VarSampleError):
    """Equal-degree splitting failed to separate roots within the redraw cap."""


class NotZeroDimensional(VarSampleError):
    pass


class EliminationBudgetExceeded(VarSampleError):
    """Buchberger ran past its S-pair reduction budget."""


class BadDimensions(ConfigError):
    pass


class TooLarge(VarSampleError):
    """A brute-force operation would exceed its evaluation cap."""


class TooManyPolys(ConfigError):
    pass


class ConfigRejected(ConfigError):
    pass


class BudgetExhausted(VarSampleError):
    pass


class VarietyLikelyEmpty(BudgetExhausted):
    pass


class EmptySample(VarSampleError, ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UndeclaredVariable(ParseError):
    pass
