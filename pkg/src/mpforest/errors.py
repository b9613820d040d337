"""Exceptions shared across the package."""


class OutOfDomainError(ValueError):
    """A query or data point lies outside the region a model is defined on."""


class DegenerateRegionError(ValueError):
    """A volume that must be positive is zero (collapsed box side or region)."""


class PointNotFoundError(KeyError):
    """A point id is not stored in the tree it was asked to be removed from."""
