"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Matrix shape or subsystem dimensions do not fit the operation."""


class SymmetryError(ValueError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""


class DomainError(ValueError):
    """A scalar parameter lies outside its admissible range."""


class BracketError(ValueError):
    """No sign change across the search interval."""
