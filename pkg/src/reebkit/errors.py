"""Exception types shared across the package."""


class ReebkitError(Exception):
    """Base class for all errors raised by reebkit."""


class PreconditionViolation(ReebkitError):
    """An input failed a documented precondition (off the sphere, non-tangent, ...)."""


class DegenerateInput(ReebkitError):
    """The requested computation is only defined for nondegenerate data."""


class IntegrationFailure(ReebkitError):
    """The adaptive integrator could not meet its tolerance (step underflow, det drift)."""


class GridTooCoarse(ReebkitError):
    """Sampled data is too coarse for reliable phase unwrapping; refine and retry."""


class IllConditioned(ReebkitError):
    """A numerical quantity fell below its conditioning threshold."""


class ResolutionFailure(ReebkitError):
    """Two catalogued periods are numerically indistinguishable."""


class StructuralError(ReebkitError):
    """A combinatorial object (tree, catalog) is malformed."""
