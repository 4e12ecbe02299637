"""Exact and sampled norms of the linear interpolation projector.

For a nondegenerate simplex with basic Lagrange polynomials lambda_j
and a ball B(x0, R), the projector norm equals

    max over f in {-1,+1}^(n+1) of
        R * sqrt(sum_i (sum_j f_j l_ij)^2) + |sum_j f_j lambda_j(x0)|

where (l_ij) is the inverse vertex matrix.  Negating f preserves the
value, so the last sign is fixed to +1 and 2^n classes are enumerated
exactly.  The maximum of each affine functional sum_j f_j lambda_j over
the ball is attained on the boundary, which gives the maximizing point
in closed form from the winning sign class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DimensionMismatch, DimensionTooLarge, SimplexNotContained
from .geometry import AffineMap, Ball, Ellipsoid, Simplex, apply_affine

__all__ = ["NormReport", "norm_on_ball", "norm_sampled", "norm_on_ellipsoid",
           "lambda_sum", "MAX_EXACT_DIMENSION"]

# 2^n sign classes are enumerated exactly; beyond this the cost is
# prohibitive and DimensionTooLarge is raised.
MAX_EXACT_DIMENSION = 30

# Optional per-class value tables are only kept at tabulation size.
TABLE_DIMENSION = 12


@dataclass(frozen=True, eq=False)
class NormReport:
    """Result of an exact norm computation.

    norm:    the projector norm.
    signs:   maximizing sign vector, length n+1, last entry +1.
    point:   boundary point where the Lagrange sum attains the norm.
    per_sign_values: all 2^n class values (requested and n <= 12 only).
    """

    norm: float
    signs: np.ndarray
    point: np.ndarray
    per_sign_values: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "signs": [int(s) for s in self.signs],
            "argmax": self.point.tolist(),
        }


def _coefficients(simplex: Simplex, center: np.ndarray):
    """Gradient rows of the Lagrange polynomials and their center values."""
    grads = np.ascontiguousarray(simplex.inverse[:-1].T)
    consts = np.ascontiguousarray(simplex.lambda_at(center))
    return grads, consts


def _maximizing_point(ball: Ball, grads, consts, signs) -> np.ndarray:
    """Boundary maximizer of the winning affine functional.

    The functional sum_j f_j lambda_j has gradient g = sum_j f_j grad_j
    and center value s; |.| is maximal at center + sign(s) R g/|g|.  A
    zero gradient (only the all-plus class) means the functional is
    constant and the center is reported.
    """
    f = signs.astype(np.float64)
    g = grads.T @ f
    s = float(consts @ f)
    gnorm = float(np.linalg.norm(g))
    if gnorm <= 1e-10 * max(1.0, float(np.abs(grads).max())):
        return ball.center.copy()
    orientation = 1.0 if s >= 0.0 else -1.0
    return ball.center + orientation * ball.radius * g / gnorm


def norm_on_ball(simplex: Simplex, ball: Ball, want_table: bool = False) -> NormReport:
    """Exact projector norm over a ball via sign-class enumeration.

    Ties between classes resolve to the lexicographically smallest sign
    vector (-1 before +1).  The norm does not depend on the center or
    the radius when the simplex is regular and inscribed; in general it
    depends on both.
    """
    if ball.n != simplex.n:
        raise DimensionMismatch(
            f"simplex in R^{simplex.n} but ball in R^{ball.n}")
    n = simplex.n
    if n > MAX_EXACT_DIMENSION:
        raise DimensionTooLarge(
            f"2^{n} sign classes exceed the exact enumeration limit "
            f"(n <= {MAX_EXACT_DIMENSION})")
    grads, consts = _coefficients(simplex, ball.center)
    value, signs = backend.max_sign_value(grads, consts, ball.radius)
    point = _maximizing_point(ball, grads, consts, signs)
    table = None
    if want_table and n <= TABLE_DIMENSION:
        table = backend.sign_value_table(grads, consts, ball.radius)
    return NormReport(float(value), signs, point, table)


def norm_sampled(simplex: Simplex, ball: Ball, samples: int, seed: int) -> float:
    """Monte Carlo lower estimate of the norm over a ball.

    Takes the maximum Lagrange sum over `samples` uniform boundary
    points plus the 2(n+1) boundary points along the vertex directions
    +-(vertex - center).  Always a lower bound for the exact norm.
    """
    if ball.n != simplex.n:
        raise DimensionMismatch(
            f"simplex in R^{simplex.n} but ball in R^{ball.n}")
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, simplex.n))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    while np.any(norms == 0.0):  # astronomically unlikely; redraw
        bad = norms[:, 0] == 0.0
        directions[bad] = rng.standard_normal((int(bad.sum()), simplex.n))
        norms = np.linalg.norm(directions, axis=1, keepdims=True)
    points = ball.center + ball.radius * directions / norms
    axes = simplex.vertices - ball.center
    axis_norms = np.linalg.norm(axes, axis=1, keepdims=True)
    keep = axis_norms[:, 0] > 0.0
    rays = axes[keep] / axis_norms[keep]
    anchors = np.vstack([ball.center + ball.radius * rays,
                         ball.center - ball.radius * rays])
    values = np.abs(simplex.lambda_at(np.vstack([points, anchors]))).sum(axis=1)
    return float(values.max())


def norm_on_ellipsoid(simplex: Simplex, ellipsoid: Ellipsoid,
                      want_table: bool = False) -> NormReport:
    """Exact projector norm over a solid ellipsoid.

    The norm is invariant under nondegenerate affine maps applied to
    both the simplex and the domain, so the ellipsoid is mapped to the
    unit ball, the ball routine runs there, and the maximizer is pulled
    back.  Every vertex must lie in the ellipsoid (tolerance 1e-9).
    """
    if ellipsoid.n != simplex.n:
        raise DimensionMismatch(
            f"simplex in R^{simplex.n} but ellipsoid in R^{ellipsoid.n}")
    for j, vertex in enumerate(simplex.vertices):
        if ellipsoid.membership(vertex) > 1.0 + 1e-9:
            raise SimplexNotContained(f"vertex {j} lies outside the ellipsoid")
    chol = np.linalg.cholesky(ellipsoid.shape)
    forward_linear = np.linalg.inv(chol)
    to_ball = AffineMap(forward_linear, -forward_linear @ ellipsoid.center)
    mapped = apply_affine(to_ball, simplex)
    report = norm_on_ball(mapped, Ball(np.zeros(simplex.n), 1.0), want_table)
    point = chol @ report.point + ellipsoid.center
    return NormReport(report.norm, report.signs, point, report.per_sign_values)


def lambda_sum(simplex: Simplex, x) -> float:
    """Sum of absolute Lagrange polynomial values at x.

    Always >= 1; equal to 1 exactly when x lies in the simplex.
    """
    return float(np.abs(simplex.lambda_at(x)).sum())
