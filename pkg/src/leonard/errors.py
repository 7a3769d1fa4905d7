"""Exception hierarchy.

Everything raised on purpose by the package derives from LeonardError, so the
CLI can tell domain rejections apart from programming errors.
"""

from __future__ import annotations


class LeonardError(Exception):
    """Base class for all package errors."""


class ZeroDenominator(LeonardError, ZeroDivisionError):
    pass


class PoleAtPoint(LeonardError, ZeroDivisionError):
    pass


class NotASquare(LeonardError, ValueError):
    """Raised by sqrt_exact when the argument has no square root in Q(q)."""


class DegreeLimitExceeded(LeonardError, OverflowError):
    pass


class ParseError(LeonardError, ValueError):
    pass


# matrices

class NotSquare(LeonardError, ValueError):
    pass


class SizeMismatch(LeonardError, ValueError):
    pass


class SingularMatrix(LeonardError, ArithmeticError):
    pass


class NotAnEigenvalue(LeonardError, ValueError):
    pass


class DegenerateEigenvalue(LeonardError, ValueError):
    pass


# parameter arrays and recurrences

class NoFit(LeonardError, ValueError):
    pass


class NotRecurrent(LeonardError, ValueError):
    pass


class MissingXi(LeonardError, ValueError):
    pass


class MissingC(LeonardError, ValueError):
    pass


class ZeroC(LeonardError, ValueError):
    pass


class Underdetermined(LeonardError, ValueError):
    pass


class NoNonzeroRoot(LeonardError, ValueError):
    pass


# LB-TD pairs

class ConditionsViolated(LeonardError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NotALeonardPair(LeonardError, ValueError):
    def __init__(self, reason: str, axiom: str | None = None):
        self.reason = reason
        self.axiom = axiom
        super().__init__(reason)


class EigenvalueMismatch(LeonardError, ValueError):
    pass


class NotInFamily(LeonardError, ValueError):
    def __init__(self, reason: str, step: int | None = None):
        self.reason = reason
        self.step = step
        super().__init__(reason if step is None else f"step {step}: {reason}")


class DegenerateZ(NotInFamily):
    pass


class CaseHypothesisViolated(LeonardError, ValueError):
    pass


# Askey-Wilson

class InconsistentScalars(LeonardError, ValueError):
    pass


class NonzeroAlpha(LeonardError, ValueError):
    pass
