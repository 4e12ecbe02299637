"""Core geometric types: simplices, balls, ellipsoids, affine maps.

A nondegenerate simplex in R^n is stored together with its (n+1)x(n+1)
vertex matrix S (rows are vertex coordinates followed by a trailing 1)
and the inverse of that matrix.  Column j of the inverse holds the
coefficients of the j-th basic Lagrange polynomial

    lambda_j(x) = l_{1j} x_1 + ... + l_{nj} x_n + l_{n+1,j},

which is also the j-th barycentric coordinate of x.  Everything else in
the package is built on these coefficients.

File I/O lives in the command line module; this module only fixes the
canonical field names used by the JSON representations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateEllipsoid,
    DegenerateSimplex,
    DimensionMismatch,
    DomainError,
    SingularMap,
    WeightSumViolation,
)

__all__ = [
    "Simplex",
    "Ball",
    "Ellipsoid",
    "AffineMap",
    "build_simplex",
    "barycentric_of",
    "point_of",
    "simplex_volume",
    "affine_from_vertices",
    "apply_affine",
    "unit_ball_volume",
    "simplex_to_dict",
    "simplex_from_dict",
    "ball_to_dict",
    "ball_from_dict",
    "ellipsoid_to_dict",
    "ellipsoid_from_dict",
]

# Relative threshold for |det S| below which a vertex set is rejected.
DEGENERACY_RTOL = 1e-12
# Componentwise tolerance for the S @ inv(S) = I sanity check.
INVERSE_CHECK_ATOL = 1e-10
# Allowed deviation of barycentric weight sums from 1 in point_of.
WEIGHT_SUM_ATOL = 1e-9


def _as_matrix(rows, name: str) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be a 2-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    return arr


def _as_vector(x, n: int, name: str = "point") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape != (n,):
        raise DimensionMismatch(f"{name} must have shape ({n},), got {arr.shape}")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Simplex:
    """Nondegenerate simplex with cached Lagrange coefficient matrix.

    vertices: (n+1, n) array, one vertex per row.
    matrix:   (n+1, n+1) vertex matrix S, row j = (vertex_j, 1).
    inverse:  inv(S); column j holds the coefficients of lambda_j.
    """

    vertices: np.ndarray
    matrix: np.ndarray
    inverse: np.ndarray

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def lambda_at(self, x) -> np.ndarray:
        """Values of all n+1 basic Lagrange polynomials at x.

        Accepts a single point of shape (n,) or a batch of shape (m, n);
        returns shape (n+1,) or (m, n+1) accordingly.
        """
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            if x.shape != (self.n,):
                raise DimensionMismatch(
                    f"point has shape {x.shape}, expected ({self.n},)")
            return x @ self.inverse[:-1] + self.inverse[-1]
        if x.ndim == 2 and x.shape[1] == self.n:
            return x @ self.inverse[:-1] + self.inverse[-1]
        raise DimensionMismatch(
            f"points have shape {x.shape}, expected (m, {self.n})")

    def contains(self, x, tol: float = 1e-9) -> bool:
        """True when all barycentric coordinates of x are >= -tol."""
        return bool(np.all(self.lambda_at(x) >= -tol))


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed Euclidean ball with positive radius."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        center = _freeze(_as_vector(self.center, np.asarray(self.center).shape[0],
                                    "center"))
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DomainError(f"ball radius must be positive, got {self.radius}")

    @property
    def n(self) -> int:
        return self.center.shape[0]

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = _as_vector(x, self.n)
        return bool(np.linalg.norm(x - self.center) <= self.radius + tol)

    def boundary_point(self, direction) -> np.ndarray:
        """Intersection of the ray from the center along direction."""
        d = _as_vector(direction, self.n, "direction")
        norm = np.linalg.norm(d)
        if norm == 0.0:
            raise DomainError("direction must be nonzero")
        return self.center + self.radius * d / norm


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    """Solid ellipsoid {x : (x - center)^T shape^{-1} (x - center) <= 1}.

    The shape matrix must be symmetric positive definite.  Its volume is
    unit_ball_volume(n) * sqrt(det(shape)).
    """

    center: np.ndarray
    shape: np.ndarray

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        shape = _as_matrix(self.shape, "shape")
        n = center.shape[0]
        if center.ndim != 1 or shape.shape != (n, n):
            raise DimensionMismatch(
                f"center {center.shape} and shape {shape.shape} are inconsistent")
        scale = max(1.0, float(np.abs(shape).max()))
        if np.abs(shape - shape.T).max() > 1e-10 * scale:
            raise DegenerateEllipsoid("shape matrix is not symmetric")
        try:
            np.linalg.cholesky(shape)
        except np.linalg.LinAlgError:
            raise DegenerateEllipsoid("shape matrix is not positive definite")
        object.__setattr__(self, "center", _freeze(center))
        object.__setattr__(self, "shape", _freeze(0.5 * (shape + shape.T)))

    @property
    def n(self) -> int:
        return self.center.shape[0]

    def membership(self, x) -> float:
        """Quadratic form value; <= 1 means x is inside."""
        x = _as_vector(x, self.n)
        w = x - self.center
        return float(w @ np.linalg.solve(self.shape, w))

    def contains(self, x, tol: float = 1e-9) -> bool:
        return self.membership(x) <= 1.0 + tol

    def volume(self) -> float:
        sign, logdet = np.linalg.slogdet(self.shape)
        return unit_ball_volume(self.n) * math.exp(0.5 * logdet)

    def to_ball(self, tol: float = 1e-9):
        """Down-convert to a Ball when the shape is a scalar matrix.

        Returns None when the ellipsoid is not a ball within tol.
        """
        r2 = float(np.trace(self.shape)) / self.n
        if np.abs(self.shape - r2 * np.eye(self.n)).max() <= tol * max(1.0, r2):
            return Ball(self.center, math.sqrt(r2))
        return None


@dataclass(frozen=True, eq=False)
class AffineMap:
    """Affine map x -> linear @ x + translation on R^n."""

    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        a = _as_matrix(self.linear, "linear part")
        b = np.asarray(self.translation, dtype=float)
        if a.shape[0] != a.shape[1] or b.shape != (a.shape[0],):
            raise DimensionMismatch(
                f"linear part {a.shape} and translation {b.shape} are inconsistent")
        object.__setattr__(self, "linear", _freeze(a))
        object.__setattr__(self, "translation", _freeze(b))

    @property
    def n(self) -> int:
        return self.translation.shape[0]

    @property
    def extended(self) -> np.ndarray:
        """The n x (n+1) block [linear | translation]."""
        return np.hstack([self.linear, self.translation[:, None]])

    def inverse(self) -> "AffineMap":
        if _is_singular(self.linear):
            raise SingularMap("linear part is numerically singular")
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.translation)


def _is_singular(a: np.ndarray) -> bool:
    # Reciprocal condition number near machine epsilon; a det-based
    # test would misjudge maps with very unequal row scales.
    s = np.linalg.svd(a, compute_uv=False)
    return s[-1] <= 1e-14 * max(s[0], 1e-300)


def build_simplex(vertices) -> Simplex:
    """Construct a simplex from n+1 vertices in R^n.

    Raises DegenerateSimplex when |det S| < 1e-12 * (max row norm)^n,
    where S is the vertex matrix with a trailing column of ones, or when
    the computed inverse fails S @ inv(S) = I componentwise at 1e-10.
    """
    v = _as_matrix(vertices, "vertices")
    m, n = v.shape
    if m != n + 1 or n < 1:
        raise DimensionMismatch(
            f"expected n+1 vertices in R^n, got {m} vertices in R^{n}")
    s = np.hstack([v, np.ones((m, 1))])
    scale = float(np.linalg.norm(s, axis=1).max())
    det = float(np.linalg.det(s))
    if abs(det) < DEGENERACY_RTOL * scale**n:
        raise DegenerateSimplex(
            f"|det S| = {abs(det):.3e} below threshold for scale {scale:.3e}")
    inv = np.linalg.inv(s)
    if np.abs(s @ inv - np.eye(m)).max() > INVERSE_CHECK_ATOL:
        raise DegenerateSimplex("vertex matrix is numerically singular")
    return Simplex(_freeze(v), _freeze(s), _freeze(inv))


def barycentric_of(simplex: Simplex, x) -> np.ndarray:
    """Barycentric coordinates of x, summing to 1 up to rounding."""
    return simplex.lambda_at(x)


def point_of(simplex: Simplex, weights) -> np.ndarray:
    """Cartesian point with the given barycentric weights.

    The weights must sum to 1 within 1e-9; WeightSumViolation otherwise.
    """
    w = np.asarray(weights, dtype=float)
    if w.shape != (simplex.n + 1,):
        raise DimensionMismatch(
            f"weights must have shape ({simplex.n + 1},), got {w.shape}")
    total = float(w.sum())
    if abs(total - 1.0) > WEIGHT_SUM_ATOL:
        raise WeightSumViolation(f"weights sum to {total!r}, expected 1")
    return w @ simplex.vertices


def simplex_volume(simplex: Simplex) -> float:
    """n-dimensional volume, |det S| / n!."""
    return abs(float(np.linalg.det(simplex.matrix))) / math.factorial(simplex.n)


def affine_from_vertices(simplex: Simplex, images) -> AffineMap:
    """The unique affine map sending vertex j to images[j].

    With Y the n x (n+1) matrix of image columns, the extended matrix of
    the map is Y @ inv(S)^T; its last column is the translation.
    """
    y = _as_matrix(images, "images")
    if y.shape != simplex.vertices.shape:
        raise DimensionMismatch(
            f"expected images of shape {simplex.vertices.shape}, got {y.shape}")
    ext = y.T @ simplex.inverse.T
    return AffineMap(ext[:, :-1], ext[:, -1])


def apply_affine(mapping: AffineMap, target):
    """Apply an affine map to a point, Simplex, Ball, or Ellipsoid.

    Balls map to Ellipsoids (shape r^2 A A^T); use Ellipsoid.to_ball to
    down-convert when the image is spherical.  Mapping a ball or an
    ellipsoid by a singular map raises SingularMap; mapping a simplex by
    one raises DegenerateSimplex.
    """
    a, b = mapping.linear, mapping.translation
    if isinstance(target, Simplex):
        if target.n != mapping.n:
            raise DimensionMismatch("map and simplex dimensions differ")
        return build_simplex(target.vertices @ a.T + b)
    if isinstance(target, Ball):
        if target.n != mapping.n:
            raise DimensionMismatch("map and ball dimensions differ")
        if _is_singular(a):
            raise SingularMap("cannot map a ball by a singular map")
        return Ellipsoid(a @ target.center + b, target.radius**2 * (a @ a.T))
    if isinstance(target, Ellipsoid):
        if target.n != mapping.n:
            raise DimensionMismatch("map and ellipsoid dimensions differ")
        if _is_singular(a):
            raise SingularMap("cannot map an ellipsoid by a singular map")
        return Ellipsoid(a @ target.center + b, a @ target.shape @ a.T)
    x = _as_vector(target, mapping.n)
    return a @ x + b


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n, pi^(n/2) / Gamma(n/2 + 1)."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


# Canonical JSON field names.

def simplex_to_dict(simplex: Simplex) -> dict:
    return {"n": simplex.n, "vertices": simplex.vertices.tolist()}


def simplex_from_dict(data: dict) -> Simplex:
    try:
        n = int(data["n"])
        vertices = np.asarray(data["vertices"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed simplex object: {exc}")
    simplex = build_simplex(vertices)
    if simplex.n != n:
        raise DimensionMismatch(
            f"declared dimension {n} does not match vertices in R^{simplex.n}")
    return simplex


def ball_to_dict(ball: Ball) -> dict:
    return {"center": ball.center.tolist(), "radius": ball.radius}


def ball_from_dict(data: dict) -> Ball:
    try:
        return Ball(np.asarray(data["center"], dtype=float), float(data["radius"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed ball object: {exc}")


def ellipsoid_to_dict(ellipsoid: Ellipsoid) -> dict:
    return {"center": ellipsoid.center.tolist(), "shape": ellipsoid.shape.tolist()}


def ellipsoid_from_dict(data: dict) -> Ellipsoid:
    try:
        return Ellipsoid(np.asarray(data["center"], dtype=float),
                         np.asarray(data["shape"], dtype=float))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed ellipsoid object: {exc}")
