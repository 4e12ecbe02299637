"""Exceptions raised by the geometric and enumerative routines."""


class SimplexBallError(Exception):
    """Base class for all domain errors in this package."""


class DimensionMismatch(SimplexBallError):
    """Operands live in Euclidean spaces of different dimensions."""


class DegenerateSimplex(SimplexBallError):
    """Vertex set is affinely dependent (volume numerically zero)."""


class WeightSumViolation(SimplexBallError):
    """Barycentric weights do not sum to one within tolerance."""


class SingularMap(SimplexBallError):
    """Affine map has a numerically singular linear part."""


class DegenerateEllipsoid(SimplexBallError):
    """Shape matrix is not symmetric positive definite."""


class SimplexNotContained(SimplexBallError):
    """A vertex lies outside the requested domain body."""


class DimensionTooLarge(SimplexBallError):
    """Exact sign enumeration is not feasible at this dimension."""


class DomainError(SimplexBallError):
    """Scalar argument outside the mathematical domain of the function."""


class EmptySubset(SimplexBallError):
    """A vertex subset operation received no indices."""


class DegeneratePoints(SimplexBallError):
    """Two points expected to be distinct numerically coincide."""


class SubsetCountTooLarge(SimplexBallError):
    """Subset enumeration would exceed the configured budget."""


class CoincidentCentroids(SimplexBallError):
    """Internal error: face centroid pair collapsed to one point."""


class NoIntersection(SimplexBallError):
    """Internal error: ray failed to meet the boundary of the body."""
