"""Where the Lagrange sum attains the projector norm, and related bodies.

For a simplex inscribed into a ball, each maximizer of the Lagrange sum
arises from a split of the vertices into a subset and its complement:
with g and h the centroids of the two faces, the point y where the ray
from g through h leaves the ball realizes the norm when the subset size
is the maximizing split k.  The segment [g, h] is a maximal segment of
the simplex (it cannot be extended inside), which is what places y as
far from the opposite face as the geometry allows.

The minimal-volume enclosing ellipsoid of a simplex is the preimage of
the unit ball under the affine map carrying the simplex onto the
regular simplex inscribed into that ball; its volume exceeds the
simplex volume by the dimensional constant ratio = kappa_n / sigma_n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoincidentCentroids,
    DomainError,
    EmptySubset,
    DegeneratePoints,
    NoIntersection,
    SimplexNotContained,
)
from .geometry import (
    Ball,
    Ellipsoid,
    Simplex,
    affine_from_vertices,
    apply_affine,
    barycentric_of,
    unit_ball_volume,
)
from .norm import lambda_sum
from .regular import k_of, regular_in_ball

__all__ = [
    "MaxPointResult",
    "VolumeConstants",
    "face_centroid",
    "max_point",
    "own_ellipsoid_point",
    "all_max_points",
    "is_maximal_segment",
    "minimal_ellipsoid",
    "volume_constants",
]


@dataclass(frozen=True, eq=False)
class MaxPointResult:
    """One norm-attaining boundary point and its generating split.

    subset: sorted vertex indices (0-based) of the chosen face.
    g, h:   centroids of the face and of the complementary face.
    y:      boundary point on the ray from g through h.
    lambda_sum_at_y: Lagrange sum at y.
    """

    subset: tuple[int, ...]
    g: np.ndarray
    h: np.ndarray
    y: np.ndarray
    lambda_sum_at_y: float

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "g": self.g.tolist(),
            "h": self.h.tolist(),
            "y": self.y.tolist(),
            "lambdaSum": self.lambda_sum_at_y,
        }


@dataclass(frozen=True)
class VolumeConstants:
    """kappa: unit ball volume; sigma: volume of the regular simplex
    inscribed into the unit ball; ratio = kappa / sigma."""

    n: int
    kappa: float
    sigma: float
    ratio: float


def _validated_subset(simplex: Simplex, subset) -> tuple[int, ...]:
    indices = tuple(int(i) for i in subset)
    if not indices:
        raise EmptySubset("vertex subset is empty")
    if len(set(indices)) != len(indices):
        raise DomainError(f"subset {indices} has repeated indices")
    if min(indices) < 0 or max(indices) > simplex.n:
        raise DomainError(
            f"subset {indices} out of range 0..{simplex.n}")
    return tuple(sorted(indices))


def face_centroid(simplex: Simplex, subset) -> np.ndarray:
    """Centroid of the face spanned by the given vertex indices."""
    indices = _validated_subset(simplex, subset)
    return simplex.vertices[list(indices)].mean(axis=0)


def _positive_ray_root(a: float, b: float, c: float) -> float:
    """Positive root of a t^2 + b t + c = 0 with a > 0 and c <= 0.

    Written to avoid cancellation when the ray starts near the boundary
    (c close to 0 with b > 0).
    """
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise NoIntersection("ray does not meet the boundary")
    root = math.sqrt(disc)
    if b <= 0.0:
        return (-b + root) / (2.0 * a)
    return -2.0 * c / (b + root)


def _exit_point(body, start: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Where the ray start + t*direction (t > 0) leaves the body."""
    if isinstance(body, Ball):
        w = start - body.center
        a = float(direction @ direction)
        b = 2.0 * float(w @ direction)
        c = float(w @ w) - body.radius**2
    else:
        w = start - body.center
        solved = np.linalg.solve(body.shape, np.column_stack([direction, w]))
        a = float(direction @ solved[:, 0])
        b = 2.0 * float(direction @ solved[:, 1])
        c = float(w @ solved[:, 1]) - 1.0
    t = _positive_ray_root(a, b, min(c, 0.0))
    return start + t * direction


def _ray_result(simplex: Simplex, body, subset) -> MaxPointResult:
    """Face-centroid ray construction, assuming containment holds."""
    indices = _validated_subset(simplex, subset)
    complement = tuple(i for i in range(simplex.n + 1) if i not in indices)
    if not complement:
        raise EmptySubset("subset must leave a nonempty complement")
    g = face_centroid(simplex, indices)
    h = face_centroid(simplex, complement)
    direction = h - g
    scale = max(1.0, float(np.linalg.norm(g)), float(np.linalg.norm(h)))
    if np.linalg.norm(direction) <= 1e-12 * scale:
        raise CoincidentCentroids(
            "face centroids coincide; simplex must be degenerate")
    y = _exit_point(body, g, direction)
    return MaxPointResult(indices, g, h, y, lambda_sum(simplex, y))


def own_ellipsoid_point(simplex: Simplex, ellipsoid, subset) -> MaxPointResult:
    """Ray construction against the simplex's own minimal ellipsoid.

    Skips the containment guard of max_point: the minimal ellipsoid
    passes through every vertex by construction, and re-checking that
    numerically rejects thin simplices whose membership rounding error
    exceeds any fixed tolerance.
    """
    return _ray_result(simplex, ellipsoid, subset)


def max_point(simplex: Simplex, body, subset) -> MaxPointResult:
    """Norm-attaining construction for one vertex subset.

    g is the centroid of the subset face, h the centroid of the
    complementary face, and y the point where the ray from g through h
    meets the boundary of the body (a Ball or an Ellipsoid containing
    the simplex).  When the subset size equals the maximizing split of
    a regular inscribed simplex, the Lagrange sum at y equals the norm.
    """
    for j, vertex in enumerate(simplex.vertices):
        if isinstance(body, Ball):
            inside = body.contains(vertex)
        else:
            inside = body.membership(vertex) <= 1.0 + 1e-9
        if not inside:
            raise SimplexNotContained(f"vertex {j} lies outside the body")
    return _ray_result(simplex, body, subset)


def all_max_points(n: int) -> list[MaxPointResult]:
    """All norm-attaining points of the regular inscribed configuration.

    Uses the regular simplex inscribed into the unit ball and the
    maximizing split size k(n); returns one result per k-subset, sorted
    by subset indices, each with Lagrange sum equal to the closed-form
    norm.  Requires n >= 2 (both splits of a segment give the same pair
    of boundary points, so the count statement starts at n = 2).
    """
    if n < 2:
        raise DomainError(f"attainment enumeration requires n >= 2, got {n}")
    ball = Ball(np.zeros(n), 1.0)
    simplex = regular_in_ball(ball)
    k = k_of(n)
    return [max_point(simplex, ball, subset)
            for subset in itertools.combinations(range(n + 1), k)]


def is_maximal_segment(simplex: Simplex, p, q, tol: float = 1e-9) -> bool:
    """Whether [p, q] is a maximal segment of the simplex.

    A segment inside the simplex is maximal exactly when every facet
    contains one of its endpoints: for every vertex index j, at least
    one of the two barycentric coordinate vectors vanishes at j (within
    tol), with all coordinates nonnegative (within tol).
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    scale = max(1.0, float(np.linalg.norm(p)), float(np.linalg.norm(q)))
    if np.linalg.norm(p - q) <= 1e-12 * scale:
        raise DegeneratePoints("segment endpoints coincide")
    bp = barycentric_of(simplex, p)
    bq = barycentric_of(simplex, q)
    if bp.min() < -tol or bq.min() < -tol:
        return False
    return bool(np.all((np.abs(bp) <= tol) | (np.abs(bq) <= tol)))


def minimal_ellipsoid(simplex: Simplex) -> Ellipsoid:
    """Minimal-volume ellipsoid containing the simplex, in closed form.

    The affine map F carrying the simplex onto the regular simplex
    inscribed into the unit ball pulls the ball back to the minimal
    ellipsoid.  The result is centered at the centroid, touches all
    vertices, and has volume ratio * simplex_volume.
    """
    target = regular_in_ball(Ball(np.zeros(simplex.n), 1.0))
    to_regular = affine_from_vertices(simplex, target.vertices)
    return apply_affine(to_regular.inverse(), Ball(np.zeros(simplex.n), 1.0))


def volume_constants(n: int) -> VolumeConstants:
    """Unit ball volume, inscribed regular simplex volume, and ratio.

    kappa = pi^(n/2) / Gamma(n/2 + 1)
    sigma = (1/n!) sqrt(n+1) ((n+1)/n)^(n/2)
    ratio = kappa / sigma
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    kappa = unit_ball_volume(n)
    sigma = math.sqrt(n + 1.0) * ((n + 1.0) / n) ** (n / 2.0) / math.factorial(n)
    return VolumeConstants(n, kappa, sigma, kappa / sigma)


def _kappa_parity(n: int) -> float:
    """Even/odd closed forms for the unit ball volume (cross-check)."""
    m, odd = divmod(n, 2)
    if odd:
        double_fact = math.factorial(2 * m + 1) / (2.0**m * math.factorial(m))
        return 2.0 ** (m + 1) * math.pi**m / double_fact
    return math.pi**m / math.factorial(m)


def _ratio_parity(n: int) -> float:
    """Even/odd closed forms for the volume ratio (cross-check)."""
    m, odd = divmod(n, 2)
    if odd:
        return (2.0**m * (2.0 - 1.0 / (m + 1)) ** (m + 0.5)
                * math.pi**m * math.factorial(m) / math.sqrt(m + 1.0))
    return (math.factorial(2 * m) * (2.0 * math.pi * m) ** m
            / (math.factorial(m) * (2.0 * m + 1) ** (m + 0.5)))
