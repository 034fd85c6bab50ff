"""Exception hierarchy.

Every library error carries a stable ``code`` string; the command-line
front end prints it and exits with status 2.
"""


class WkError(Exception):
    code = "E_GENERIC"


class DivisionByZero(WkError, ZeroDivisionError):
    code = "E_DIVISION_BY_ZERO"


class PrecisionExhausted(WkError, ArithmeticError):
    code = "E_PRECISION_EXHAUSTED"


class NoRoot(WkError, ValueError):
    code = "E_NO_ROOT"


class BadBranch(WkError, ValueError):
    code = "E_BAD_BRANCH"


class RamifiedIndex(WkError, ValueError):
    code = "E_RAMIFIED_INDEX"


class VariableCountMismatch(WkError, ValueError):
    code = "E_VARIABLE_COUNT_MISMATCH"


class NotAUnit(WkError, ArithmeticError):
    code = "E_NOT_A_UNIT"


class NotRegular(WkError, ValueError):
    code = "E_NOT_REGULAR"


class RegularizationFailed(WkError, ValueError):
    code = "E_REGULARIZATION_FAILED"


class NonInfinitesimalArgument(WkError, ValueError):
    code = "E_NON_INFINITESIMAL_ARGUMENT"


class NoConstantRoot(WkError, ValueError):
    code = "E_NO_CONSTANT_ROOT"


class SingularJacobian(WkError, ArithmeticError):
    code = "E_SINGULAR_JACOBIAN"


class WrongArity(WkError, ValueError):
    code = "E_WRONG_ARITY"


class ZeroInput(WkError, ValueError):
    code = "E_ZERO_INPUT"


class DegreeTooHigh(WkError, ValueError):
    code = "E_DEGREE_TOO_HIGH"


class OutOfDomain(WkError, ValueError):
    code = "E_OUT_OF_DOMAIN"


class NotAOneUnitTimesPower(WkError, ValueError):
    code = "E_NOT_A_ONE_UNIT_TIMES_POWER"


class BudgetExhausted(WkError, RuntimeError):
    code = "E_BUDGET_EXHAUSTED"


class WindowUnderflow(WkError, ArithmeticError):
    code = "E_WINDOW_UNDERFLOW"


class ZeroOperandAmbiguity(WkError, ValueError):
    code = "E_ZERO_OPERAND_AMBIGUITY"


class NotInfinitesimal(WkError, ValueError):
    code = "E_NOT_INFINITESIMAL"


class GammaPole(WkError, ArithmeticError):
    code = "E_GAMMA_POLE"


class ZeroDenominator(WkError, ZeroDivisionError):
    code = "E_ZERO_DENOMINATOR"


class NormViolation(WkError, ValueError):
    code = "E_NORM_VIOLATION"


class ExprSyntaxError(WkError, ValueError):
    """Parse failure with a 1-based position and the set of expected tokens."""

    code = "E_SYNTAX"

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        where = f"line {line}, column {column}"
        if self.expected:
            message = f"{message} at {where}; expected one of: {' '.join(self.expected)}"
        else:
            message = f"{message} at {where}"
        super().__init__(message)


class ArityError(WkError, ValueError):
    code = "E_ARITY"


class CertificateFormatError(WkError, ValueError):
    code = "E_CERTIFICATE_FORMAT"


class UnsupportedNode(WkError, ValueError):
    """An expression uses something the target ring cannot interpret."""

    code = "E_UNSUPPORTED"
