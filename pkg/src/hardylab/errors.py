"""Exception taxonomy shared across the package.

Every anticipated numerical or usage failure raises one of these, so callers
(and the command line runner) can distinguish bad configuration from a
numerical method giving up.
"""


class HardyLabError(Exception):
    """Base class for all failures raised by this package."""


class ConfigError(HardyLabError):
    """A configuration value is missing, malformed or inconsistent.

    Carries the offending field name so the message points at the fix.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ZeroEnergyOnSheetII(HardyLabError):
    """E = 0 has no representative on the second sheet."""


class SingularMatching(HardyLabError):
    """A matching linear system is singular (momentum vanished at an interface)."""


class PoleAtRequestedPoint(HardyLabError):
    """Evaluation was requested where a denominator function vanishes."""


class ZeroOnContour(HardyLabError):
    """A zero of the analyzed function lies on (or hugs) the counting contour."""


class NonIntegerWinding(HardyLabError):
    """The contour quadrature did not resolve an integer winding number."""


class ConvergenceFailure(HardyLabError):
    """Iterative refinement failed to converge within its budget."""


class PoleInLowerHalfPlane(HardyLabError):
    """A pole parameter that must lie in the upper half plane does not."""


class DivergentIntegrand(HardyLabError):
    """No decay certificate can dominate the kernel growth; integral diverges."""


class MissingRadius(HardyLabError):
    """A bound evaluation needs a radius argument that was not supplied."""


class IllConditionedFit(HardyLabError):
    """Least-squares growth fit residual is too large to trust the coefficients."""


class TailNotControlled(HardyLabError):
    """The discarded integration tail is not provably below tolerance."""


class PoleOnRealAxis(HardyLabError):
    """A pole sits on the integration axis; the integral is not defined."""


class ExperimentError(HardyLabError):
    """An experiment could not produce its outputs."""


class IoError(HardyLabError):
    """Reading or writing an artifact file failed."""
