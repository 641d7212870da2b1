"""
Exception hierarchy for the DLO simulator
"""
from typing import Optional


class DloError(Exception):
    """Base class for all simulator errors"""


class InvalidArgumentError(DloError, ValueError):
    """An argument violates an operation precondition"""


class OutOfDomainError(DloError, ValueError):
    """A spline parameter lies outside [0, L]"""


class DimensionError(DloError, ValueError):
    """Array shapes do not match the basis or model"""


class ConfigError(DloError, ValueError):
    """Invalid run configuration"""


class ModelAssemblyError(DloError, RuntimeError):
    """The mass operator could not be assembled or factorized"""


class DegenerateCurveError(DloError, RuntimeError):
    """The curve has a cusp (zero tangent) at a sample point"""


class BootstrapRequiredError(DloError, RuntimeError):
    """A multistep stepper was called without its acceleration history"""


class InsufficientDataError(DloError, ValueError):
    """Too few records for a diagnostic"""


class HarnessError(DloError, RuntimeError):
    """A harness pipeline finished with an error"""


class IntegrationInstability(DloError, ArithmeticError):
    """The integrated state left the finite / bounded region"""

    def __init__(self, step: int, time: float, reason: Optional[str] = None):
        self.step = step
        self.time = time
        self.reason = reason or "non-finite state"
        super().__init__(f"unstable step={step} t={time!r} ({self.reason})")
