"""Exception types shared across the package."""


class DomainError(ValueError):
    """An evaluation point or probe interval left the function's domain."""


class ScheduleUnderflowError(ValueError):
    """Too few usable increments survive the round-off floor."""


class PreconditionError(RuntimeError):
    """A hypothesis required by the requested analysis does not hold."""


class QuadratureError(RuntimeError):
    """Node doubling failed to stabilize a quadrature result."""


class LocallyConstantError(ValueError):
    """The regression target vanished identically; no exponent is defined."""
