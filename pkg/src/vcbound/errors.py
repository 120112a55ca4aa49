"""Exception types shared across the package."""


class VCBoundError(Exception):
    """Base class for all errors raised by vcbound."""


class DimensionError(VCBoundError, ValueError):
    """Operands disagree on number of variables, block sizes or list lengths."""


class DomainError(VCBoundError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(VCBoundError, RuntimeError):
    """A configured size cap would be exceeded."""


class GuardViolation(VCBoundError, ValueError):
    """A bound that needs every k_i >= 2 was requested for a layer with k_i < 2."""


class UndefinedEntropyError(DomainError):
    """Relative entropy is infinite: some v_i > 0 where u_i = 0."""
