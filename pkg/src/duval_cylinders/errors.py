class DuValError(Exception):
    """Base class for every error raised by this package."""


class RankMismatchError(DuValError, ValueError):
    pass


class InvalidRootsError(DuValError, ValueError):
    """The supplied (-2)-classes do not form a Du Val configuration."""


class OutOfScopeError(DuValError, ValueError):
    """Surface outside the supported family (degree range, Picard rank one, ...)."""


class FibrationError(DuValError):
    pass


class HypothesisError(DuValError, ValueError):
    """A construction was invoked on data that does not meet its hypotheses."""


class NotAmpleError(DuValError, ValueError):
    pass


class PositivityError(DuValError, AssertionError):
    """A positivity fact that must follow from ampleness failed; this is a bug."""
