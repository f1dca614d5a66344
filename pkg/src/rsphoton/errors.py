"""Exception types raised across the package."""


class RSPhotonError(Exception):
    """Base class for all package errors."""


class GridMismatchError(RSPhotonError, ValueError):
    """Two fields live on different grids."""


class MissingTimeDerivativeError(RSPhotonError, ValueError):
    """The field backing cannot supply the requested time derivative."""


class OffLatticeError(RSPhotonError, ValueError):
    """A wave vector is not on the reciprocal lattice of the grid."""


class NonTransverseError(RSPhotonError, ValueError):
    """Field content is not a free transverse configuration."""


class UnresolvedFrequencyError(RSPhotonError, ValueError):
    """An operation needs the frequency sign of every contribution."""


class ExcludedPointError(RSPhotonError, ValueError):
    """A state has weight on an excluded lattice point (k = 0)."""


class LatticeBoundaryError(RSPhotonError, ValueError):
    """A test state reaches the edge of the stencil lattice."""


class TruncationError(RSPhotonError, ValueError):
    """The light cone left the periodic box."""
