"""Lower bounds for the projector norm and randomized conjecture checks.

The norm of any linear interpolation projector with nodes in the unit
ball is at least chi_n^{-1}(ratio_n), where chi_n is the standardized
degree-n Legendre polynomial and ratio_n the ball-to-simplex volume
ratio; this bound exceeds 0.2135 sqrt(n).

The randomized machinery stress-tests the attainment conjecture: for a
random simplex in the unit ball, some facet split should produce a
boundary point of the minimal enclosing ellipsoid that stays inside the
unit ball.  The reflected-vertex statement (subset size 1 against the
centroid reflection) is proven, and the stress harness checks the
general split sizes empirically.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSimplex,
    DimensionTooLarge,
    DomainError,
    SimplexNotContained,
    SubsetCountTooLarge,
)
from .extremal import minimal_ellipsoid, own_ellipsoid_point, volume_constants
from .geometry import Ball, Simplex, build_simplex, simplex_to_dict
from .norm import norm_on_ball
from .regular import binomial_exact, regular_in_ball

__all__ = [
    "H1Report",
    "ThetaEstimate",
    "H1CheckResult",
    "legendre_chi",
    "chi_inverse",
    "lower_bound",
    "h1_point",
    "h1_check",
    "h1_stress",
    "theta_search",
    "random_simplex_in_ball",
    "DEFAULT_SEED",
    "SAMPLERS",
]

DEFAULT_SEED = 0xC0FFEE

SAMPLERS = ("uniform-ball", "boundary-biased")

# Subset enumeration budget for a single conjecture check.
MAX_SUBSETS = 10**7

# Slack below -H1_SLACK_TOL counts as a counterexample.
H1_SLACK_TOL = 1e-9

_MASK64 = (1 << 64) - 1


def _mix64(x: int) -> int:
    """splitmix64 finalizer; fixed 64-bit mixing for seed splitting."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _trial_seed(seed: int, trial: int) -> int:
    return (seed & _MASK64) ^ _mix64(trial)


def legendre_chi(n: int, t: float) -> float:
    """Standardized Legendre polynomial of degree n at t.

    chi_0 = 1, chi_1 = t, and
    chi_k(t) = ((2k-1) t chi_{k-1}(t) - (k-1) chi_{k-2}(t)) / k.
    Normalized so chi_n(1) = 1 for every n.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if n == 0:
        return 1.0
    prev, cur = 1.0, float(t)
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1) * t * cur - (k - 1) * prev) / k
    return cur


def chi_inverse(n: int, v: float) -> float:
    """Inverse of chi_n on [1, infinity), found by bisection.

    chi_n is strictly increasing there with chi_n(1) = 1, so the
    preimage of any v >= 1 is unique.
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    # Tolerate rounding right below 1 (the volume ratio for n = 1
    # evaluates to 1 - 3e-16); anything further out is a caller bug.
    if v < 1.0 - 1e-9:
        raise DomainError(f"chi_inverse requires v >= 1, got {v}")
    if v <= 1.0:
        return 1.0
    hi = 2.0
    while legendre_chi(n, hi) < v:
        hi *= 2.0
    lo = 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if legendre_chi(n, mid) < v:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lower_bound(n: int) -> float:
    """Norm lower bound chi_n^{-1}(kappa_n / sigma_n) for the unit ball.

    Valid for every projector with nodes in the ball; always larger
    than 0.2135 sqrt(n).
    """
    return chi_inverse(n, volume_constants(n).ratio)


def h1_point(simplex: Simplex, subset) -> np.ndarray:
    """Boundary point of the minimal enclosing ellipsoid for a split.

    Shorthand for the face-centroid ray against the simplex's own
    minimal ellipsoid; the conjecture regime keeps the subset size at
    most n/2.
    """
    return own_ellipsoid_point(simplex, minimal_ellipsoid(simplex), subset).y


@dataclass(frozen=True)
class H1CheckResult:
    """Outcome of one attainment check against a containing ball.

    slack = radius - min over subsets of |y - center|; the check is
    satisfied when slack >= -1e-9, i.e. some split's ellipsoid boundary
    point stays inside the ball.
    """

    satisfied: bool
    slack: float
    best_subset: tuple[int, ...]


def h1_check(simplex: Simplex, m: int, ball: Ball) -> H1CheckResult:
    """Check every size-m split of a simplex contained in a ball."""
    n = simplex.n
    if not 1 <= m <= n:
        raise DomainError(f"subset size {m} outside 1..{n}")
    count = binomial_exact(n + 1, m)
    if count > MAX_SUBSETS:
        raise SubsetCountTooLarge(
            f"C({n + 1}, {m}) = {count} exceeds the budget {MAX_SUBSETS}")
    for j, vertex in enumerate(simplex.vertices):
        if not ball.contains(vertex):
            raise SimplexNotContained(f"vertex {j} lies outside the ball")
    ellipsoid = minimal_ellipsoid(simplex)
    best = math.inf
    best_subset: tuple[int, ...] = ()
    for subset in itertools.combinations(range(n + 1), m):
        y = own_ellipsoid_point(simplex, ellipsoid, subset).y
        distance = float(np.linalg.norm(y - ball.center))
        if distance < best:
            best = distance
            best_subset = subset
    slack = ball.radius - best
    return H1CheckResult(slack >= -H1_SLACK_TOL, slack, best_subset)


def random_simplex_in_ball(n: int, rng: np.random.Generator,
                           sampler: str = "uniform-ball",
                           min_det: float = 0.0) -> tuple[Simplex, int]:
    """Random nondegenerate simplex with vertices in the unit ball.

    uniform-ball draws each vertex uniformly (direction times U^(1/n)
    radius); boundary-biased uses U^(1/(3n)), pushing vertices toward
    the sphere.  Degenerate draws are rejected and redrawn; the second
    return value counts rejections.  min_det optionally rejects below
    an absolute vertex-matrix determinant, for callers that need
    numerical headroom.
    """
    if sampler not in SAMPLERS:
        raise DomainError(f"unknown sampler {sampler!r}; choose from {SAMPLERS}")
    exponent = 1.0 / n if sampler == "uniform-ball" else 1.0 / (3.0 * n)
    rejections = 0
    for _ in range(10_000):
        directions = rng.standard_normal((n + 1, n))
        norms = np.linalg.norm(directions, axis=1, keepdims=True)
        if np.any(norms == 0.0):
            rejections += 1
            continue
        radii = rng.random((n + 1, 1)) ** exponent
        vertices = radii * directions / norms
        try:
            simplex = build_simplex(vertices)
        except DegenerateSimplex:
            rejections += 1
            continue
        if min_det > 0.0 and abs(np.linalg.det(simplex.matrix)) < min_det:
            rejections += 1
            continue
        return simplex, rejections
    raise DegenerateSimplex("sampler failed to produce a nondegenerate simplex")


@dataclass(frozen=True)
class H1Report:
    """Aggregate of a randomized attainment stress run.

    min_slack is the worst slack seen (most negative first); failures
    hold the offending simplices (canonical dict form) with how far the
    best boundary point landed outside the ball.  interior/boundary
    counts record whether the best point was strictly inside the sphere
    or on it, without interpreting the split.
    """

    n: int
    m: int
    trials: int
    seed: int
    sampler: str
    satisfied_all: bool
    min_slack: float
    failures: list[dict] = field(default_factory=list)
    rejections: int = 0
    interior_trials: int = 0
    boundary_trials: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "trials": self.trials,
            "seed": self.seed,
            "sampler": self.sampler,
            "satisfied_all": self.satisfied_all,
            "min_slack": self.min_slack,
            "failures": self.failures,
            "rejections": self.rejections,
            "interior_trials": self.interior_trials,
            "boundary_trials": self.boundary_trials,
        }


def _stress_trial(args: tuple[int, int, int, str]) -> tuple[float, int, list | None]:
    """One stress trial: returns (slack, rejections, vertices-if-failed)."""
    n, m, trial_seed, sampler = args
    rng = np.random.default_rng(trial_seed)
    simplex, rejections = random_simplex_in_ball(n, rng, sampler)
    result = h1_check(simplex, m, Ball(np.zeros(n), 1.0))
    vertices = None if result.satisfied else simplex.vertices.tolist()
    return result.slack, rejections, vertices


def h1_stress(n: int, m: int, trials: int, seed: int = DEFAULT_SEED,
              sampler: str = "uniform-ball", jobs: int = 1) -> H1Report:
    """Randomized attainment check over seeded random simplices.

    Trial i derives its own generator from seed XOR mix(i), so results
    do not depend on the degree of parallelism (jobs > 1 fans trials
    out to a process pool).
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    work = [(n, m, _trial_seed(seed, i), sampler) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_stress_trial, work, chunksize=64))
    else:
        outcomes = [_stress_trial(item) for item in work]
    failures = []
    rejections = 0
    interior = 0
    boundary = 0
    min_slack = math.inf
    for (slack, rejected, vertices), (n_, m_, trial_seed, _) in zip(outcomes, work):
        rejections += rejected
        min_slack = min(min_slack, slack)
        if slack > H1_SLACK_TOL:
            interior += 1
        elif slack >= -H1_SLACK_TOL:
            boundary += 1
        if vertices is not None:
            failures.append({
                "simplex": {"n": n, "vertices": vertices},
                "excess": -slack,
                "trial_seed": trial_seed,
            })
    return H1Report(
        n=n, m=m, trials=trials, seed=seed, sampler=sampler,
        satisfied_all=not failures, min_slack=min_slack, failures=failures,
        rejections=rejections, interior_trials=interior,
        boundary_trials=boundary,
    )


@dataclass(frozen=True)
class ThetaEstimate:
    """Best norm found by the local search over inscribed simplices."""

    n: int
    best_norm: float
    best_simplex: Simplex
    restarts: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "best_norm": self.best_norm,
            "best_simplex": simplex_to_dict(self.best_simplex),
            "restarts": self.restarts,
            "seed": self.seed,
        }


# Local search schedule: shrink the step after this many consecutive
# rejected moves, stop once the step is below the floor.
_SEARCH_STEP = 0.2
_SEARCH_SHRINK = 0.7
_SEARCH_PATIENCE = 20
_SEARCH_FLOOR = 1e-7


def _project_into_unit_ball(point: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(point))
    return point / norm if norm > 1.0 else point


def _search_from(vertices: np.ndarray, ball: Ball, iterations: int,
                 rng: np.random.Generator) -> tuple[float, Simplex]:
    """Derivative-free descent perturbing one vertex at a time."""
    n = vertices.shape[1]
    simplex = build_simplex(vertices)
    best = norm_on_ball(simplex, ball).norm
    step = _SEARCH_STEP
    failures = 0
    for _ in range(iterations):
        if step < _SEARCH_FLOOR:
            break
        j = int(rng.integers(n + 1))
        direction = rng.standard_normal(n)
        dnorm = float(np.linalg.norm(direction))
        if dnorm == 0.0:
            continue
        candidate = vertices.copy()
        candidate[j] = _project_into_unit_ball(
            candidate[j] + step * direction / dnorm)
        try:
            trial = build_simplex(candidate)
            value = norm_on_ball(trial, ball).norm
        except DegenerateSimplex:
            value = math.inf
        if value < best:
            best = value
            vertices = candidate
            simplex = trial
            failures = 0
        else:
            failures += 1
            if failures >= _SEARCH_PATIENCE:
                step *= _SEARCH_SHRINK
                failures = 0
    return best, simplex


def theta_search(n: int, restarts: int = 20, iterations: int = 50_000,
                 seed: int = DEFAULT_SEED) -> ThetaEstimate:
    """Minimize the projector norm over simplices in the unit ball.

    Multi-restart local search; one restart always starts from the
    regular inscribed simplex, the others from random simplices.  The
    returned best norm can never drop below lower_bound(n).  Limited to
    n <= 10 to keep each exact norm evaluation cheap.
    """
    if n > 10:
        raise DimensionTooLarge(f"search is limited to n <= 10, got {n}")
    if restarts < 1:
        raise DomainError(f"restarts must be >= 1, got {restarts}")
    ball = Ball(np.zeros(n), 1.0)
    best_value = math.inf
    best_simplex = None
    for restart in range(restarts):
        rng = np.random.default_rng(_trial_seed(seed, restart))
        if restart == 0:
            start = regular_in_ball(ball).vertices.copy()
        else:
            start = random_simplex_in_ball(n, rng, min_det=1e-3)[0].vertices.copy()
        value, simplex = _search_from(start, ball, iterations, rng)
        if value < best_value:
            best_value = value
            best_simplex = simplex
    return ThetaEstimate(n, best_value, best_simplex, restarts, seed)
