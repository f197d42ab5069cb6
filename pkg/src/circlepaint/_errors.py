"""Exception types raised across the package."""


class CirclePaintError(Exception):
    """Base class for all errors raised by circlepaint."""


class DuplicateEndpoint(CirclePaintError, ValueError):
    pass


class DegenerateInterval(CirclePaintError, ValueError):
    pass


class DuplicatePillarGap(CirclePaintError, ValueError):
    pass


class ColourSetTooSmall(CirclePaintError, ValueError):
    pass


class PillarInsideJ(CirclePaintError, ValueError):
    pass


class GapOutsideArch(CirclePaintError, ValueError):
    pass


class NoUncolouredIntervalInArch(CirclePaintError, ValueError):
    pass


class OmegaTooSmall(CirclePaintError, ValueError):
    pass


class NTooSmall(CirclePaintError, ValueError):
    pass


class PreconditionViolated(CirclePaintError, ValueError):
    pass


class InvariantViolation(CirclePaintError, RuntimeError):
    """A proven invariant failed at runtime.

    This always indicates a bug. ``report`` carries a structured diagnostic
    (arch, measured degrees, bounds, a digest of the pillar state).
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = dict(report or {})
