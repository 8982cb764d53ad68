"""Exception hierarchy shared across the package.

Numerical failures are always raised as explicit exception classes; no
operation returns NaN or Inf silently.
"""


class ZetaSweepError(Exception):
    """Base class for all package-specific errors."""


class KernelError(ZetaSweepError):
    """Base class for failures inside the analytic kernels."""


class PoleError(KernelError):
    """Evaluation point is (numerically) on the pole s = 1."""


class PrecisionError(KernelError):
    """Internal error estimate exceeds the requested tolerance, or the
    evaluation left the supported range."""


class ZeroProximityError(KernelError):
    """Branch tracking of log zeta passed too close to a zero; the branch
    choice is numerically meaningless there."""


class GeometryError(ZetaSweepError):
    """A compact patch violates its strip containment or is degenerate."""


class ConditioningError(ZetaSweepError):
    """A least-squares system is numerically singular."""


class NoValidSampleError(ZetaSweepError):
    """A profile contains no ok samples to select from."""


class EmptyProfileError(ZetaSweepError):
    """A plot was requested for a profile without ok samples."""


class ConfigError(ZetaSweepError):
    """Configuration text failed to parse or validate."""
