"""Exception taxonomy shared by all modules."""


class DZetaError(Exception):
    """Base class for all toolkit errors."""


class SingularityError(DZetaError):
    """Evaluation requested on or too close to a singular locus."""

    def __init__(self, message, locus=None):
        super().__init__(message)
        self.locus = locus


class PoleError(SingularityError):
    """Evaluation inside the guard disk of a pole."""


class IndeterminateError(SingularityError):
    """Evaluation at a point of indeterminacy; the limit is a central value."""


class PrecisionError(DZetaError):
    """Cancellation exceeded the working-precision budget; result would be noise."""


class DomainError(DZetaError):
    """Argument outside the mathematical domain of the operation."""


class NoConvergence(DZetaError):
    """Iterative refinement exhausted its budget without converging."""


class BoundaryNearZero(DZetaError):
    """Contour passes too close to a zero or pole; perturb the rectangle."""


class CoverageError(DZetaError):
    """Query rectangle extends beyond the region covered by the catalog."""


class TooFewEntries(DZetaError):
    """Operation needs more catalog entries than are present."""


class DuplicateError(DZetaError):
    """Two catalog entries coincide within the dedupe radius."""
