"""Exception types shared across the package."""


class SteklovError(Exception):
    """Base class for all package errors."""


class InvalidMode(SteklovError):
    """A mode index is outside its valid range (e.g. n < 1, or k = n for coupled constants)."""


class NonStarShaped(SteklovError):
    """The perturbed boundary radius 1 + eps*rho(theta) is not positive everywhere."""


class FirstOrderSplit(SteklovError):
    """Second-order quantities requested while the eigenvalue pair splits at first order."""


class IllConditioned(SteklovError):
    """The discretized mass matrix is too ill-conditioned to solve reliably."""


class InsufficientGrid(SteklovError):
    """Not enough (or not symmetric) sample points for a derivative fit."""
