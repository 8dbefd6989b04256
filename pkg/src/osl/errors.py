"""Exception types raised across the package."""


class OSLError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(OSLError, ValueError):
    """Malformed points, labels or parameters."""


class NoValidRadiusError(OSLError):
    """No dendrogram level satisfies the selection rule."""


class DegenerateModelError(OSLError):
    """Rejection sampling could not place a point outside the group supports."""


class InfeasibleModelError(OSLError):
    """Model constants violate the weight/outlier-proportion condition."""
