"""Regular simplices inscribed into balls and their projector norms.

For the regular simplex inscribed into a ball in R^n the norm of the
linear interpolation projector admits a closed form: with

    psi(t) = (2 sqrt(n) / (n+1)) * sqrt(t (n+1-t)) + |1 - 2t/(n+1)|

on 0 <= t <= n+1, the norm equals max(psi(a), psi(a+1)) where
a = floor((n+1)/2 - sqrt(n+1)/2).  The maximizing integer k(n) counts
the vertices on one side of the extremal face split, and the maximum of
the Lagrange sum is attained at exactly C(n+1, k) boundary points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import Ball, Simplex, build_simplex

__all__ = [
    "RegularConfig",
    "TableRow",
    "psi",
    "a_of",
    "k_of",
    "regular_norm",
    "regular_inscribed",
    "regular_in_ball",
    "binomial_exact",
    "table1",
]


@dataclass(frozen=True, eq=False)
class RegularConfig:
    """A regular simplex together with its circumscribed ball."""

    n: int
    simplex: Simplex
    ball: Ball


@dataclass(frozen=True)
class TableRow:
    """One row of the norm attainment table: dimension, floor point a,
    maximizing split size k, and the exact count N = C(n+1, k) of
    boundary points where the maximum is attained."""

    n: int
    a: int
    k: int
    count: int


def psi(n: int, t: float) -> float:
    """Norm profile over split sizes t in [0, n+1].

    Symmetric about (n+1)/2; its maximum over the integers gives the
    projector norm of the regular inscribed simplex.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if not 0.0 <= t <= n + 1:
        raise DomainError(f"t = {t} outside [0, {n + 1}]")
    root = math.sqrt(t * (n + 1 - t))
    return 2.0 * math.sqrt(n) / (n + 1) * root + abs(1.0 - 2.0 * t / (n + 1))


def a_of(n: int) -> int:
    """floor((n+1)/2 - sqrt(n+1)/2), the integer just left of the peak."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    return math.floor((n + 1) / 2 - math.sqrt(n + 1) / 2)


def k_of(n: int) -> int:
    """Integer split size maximizing psi; ties resolve to a+1.

    The continuous maximizer of the root term lies between a and a+1, so
    only those two integers compete.  For n >= 2, k(n) <= n/2.
    """
    a = a_of(n)
    return a + 1 if psi(n, a + 1) >= psi(n, a) else a


def regular_norm(n: int) -> float:
    """Projector norm for the regular simplex inscribed into any ball.

    Equals max(psi(a), psi(a+1)); independent of center and radius.
    """
    a = a_of(n)
    return max(psi(n, a), psi(n, a + 1))


def regular_inscribed(n: int) -> RegularConfig:
    """Canonical regular simplex with unit edge scale sqrt(2).

    Vertices are the standard basis vectors e_1 .. e_n together with
    ((1 - sqrt(n+1))/n, ..., (1 - sqrt(n+1))/n).  The circumscribed ball
    has center ((1 - sqrt(1/(n+1)))/n, ...) and radius sqrt(n/(n+1)).
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    vertices = np.eye(n + 1, n)
    vertices[n] = (1.0 - math.sqrt(n + 1)) / n
    center = np.full(n, (1.0 - math.sqrt(1.0 / (n + 1))) / n)
    radius = math.sqrt(n / (n + 1.0))
    return RegularConfig(n, build_simplex(vertices), Ball(center, radius))


def regular_in_ball(ball: Ball) -> Simplex:
    """Regular simplex inscribed into the given ball.

    Scales and translates the canonical configuration; no rotation is
    applied, so the vertex orientation is deterministic.
    """
    config = regular_inscribed(ball.n)
    scale = ball.radius / config.ball.radius
    vertices = ball.center + scale * (config.simplex.vertices - config.ball.center)
    return build_simplex(vertices)


def binomial_exact(m: int, r: int) -> int:
    """Exact binomial coefficient C(m, r) as an arbitrary-size integer."""
    if m < 0 or r < 0 or r > m:
        raise DomainError(f"binomial arguments out of range: C({m}, {r})")
    return math.comb(m, r)


def table1(n_max: int) -> list[TableRow]:
    """Attainment table rows (n, a, k, N) for n = 1 .. n_max."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    rows = []
    for n in range(1, n_max + 1):
        k = k_of(n)
        rows.append(TableRow(n, a_of(n), k, binomial_exact(n + 1, k)))
    return rows
