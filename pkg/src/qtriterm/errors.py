class QTriTermError(Exception):
    """Base class for all library errors."""


class PoleError(QTriTermError, ZeroDivisionError):
    """A denominator factor vanishes (within the pole margin)."""


class ConvergenceError(QTriTermError, ArithmeticError):
    """A series or product did not meet its stopping rule within max_terms."""


class DomainError(QTriTermError, ValueError):
    """An argument lies outside the real positive verification domain."""


class SizeError(QTriTermError, RuntimeError):
    """Group closure grew beyond its cap."""


class SearchExhausted(QTriTermError, RuntimeError):
    """No admissible point was found within the attempt budget."""
