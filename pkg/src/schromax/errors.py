"""Exception taxonomy shared by every module.

Domain violations (bad arguments, poles, coincident points) subclass
ValueError; runtime numerical failures (quadrature budget exhausted, ODE
solver breakdown) subclass RuntimeError. The CLI maps the first family to
exit code 1 and the second to exit code 2.
"""


class SchromaxError(Exception):
    """Base class for everything raised deliberately by this package."""


class DomainError(SchromaxError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation was requested exactly on (or too close to) a pole."""


class DivergentIntegralError(DomainError):
    """The requested integral does not converge (e.g. coincident points)."""


class ConfigError(SchromaxError, ValueError):
    """A CLI/experiment configuration is malformed or inconsistent."""


class AccuracyError(SchromaxError, RuntimeError):
    """A tolerance could not be certified within the allowed budget."""


class NumericalError(SchromaxError, RuntimeError):
    """An underlying numerical routine failed to converge."""
