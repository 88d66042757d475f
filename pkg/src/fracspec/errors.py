"""Exception and warning types raised across the package."""


class FracSpecError(Exception):
    """Base class for all package errors."""


class DomainError(FracSpecError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class PoleError(FracSpecError, ArithmeticError):
    """A gamma argument sits within the pole guard of a non-positive integer."""


class ConvergenceError(FracSpecError, ArithmeticError):
    """A truncated series did not reach its tolerance within the term budget."""


class NonConvergence(FracSpecError, ArithmeticError):
    """Adaptive quadrature exhausted its subdivision budget."""


class SingularityError(FracSpecError, ArithmeticError):
    """A closed-form factor is singular at the requested parameters."""


class NoRootError(FracSpecError, ArithmeticError):
    """A root scan found no admissible sign change."""


class DivisionByZero(FracSpecError, ZeroDivisionError):
    """A quantization denominator vanished."""


class OverflowGuard(FracSpecError, OverflowError):
    """Sampled wavefunction magnitude exceeded the representable guard."""


class ConfigError(FracSpecError, ValueError):
    """A run configuration is malformed or inconsistent."""


class TruncationWarning(UserWarning):
    """A truncated fractional-difference sum still carried a significant tail."""
