"""Exception types shared across the package."""


class LTVError(Exception):
    """Base class for all errors raised by ltvbounds."""


class GridTooSmall(LTVError):
    """A signal does not decay enough inside its time grid."""


class GridMismatch(LTVError):
    """Two signals live on different time grids."""


class ShapeMismatch(LTVError):
    """A sampled surface does not line up with the expected grid."""


class OracleMismatch(LTVError):
    """Two independent evaluation routes disagree beyond tolerance."""


class DomainError(LTVError):
    """Inputs are outside the validity region of a formula."""


class PreconditionFailed(LTVError):
    """A stated precondition of a bound does not hold for these inputs."""


class NoSolution(LTVError):
    """A solver could not find a root in its admissible interval."""
