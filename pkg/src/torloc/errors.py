"""Exception hierarchy shared by all torloc modules.

The CLI maps each family onto an exit code, so new exceptions should
subclass one of the three families below rather than ``TorlocError``
directly.
"""


class TorlocError(Exception):
    """Base class for all library errors."""


class ValidationError(TorlocError, ValueError):
    """Malformed or inconsistent input data (exit code 2)."""


class MathematicalIncompatibility(TorlocError):
    """A mathematical claim about the input failed (exit code 3)."""


class InvariantBreach(TorlocError):
    """An internal invariant that theory guarantees was violated (exit code 4)."""


class NotAFan(ValidationError):
    pass


class NotDivisible(MathematicalIncompatibility):
    pass


class NotPolynomial(MathematicalIncompatibility):
    pass


class PoleAtPoint(MathematicalIncompatibility, ZeroDivisionError):
    pass


class ZeroFunction(MathematicalIncompatibility):
    pass


class OrderBudgetExceeded(TorlocError):
    """Truncation order too small to see the leading form; retry with larger order."""


class IncompatibleFiltrations(MathematicalIncompatibility):
    pass


class RankTooLarge(ValidationError):
    pass
