import numpy as np
import pytest

from simplexball import AffineMap, Ball, build_simplex, random_simplex_in_ball

# Verdict lines collected by the acceptance tests, replayed after the
# run so they stay visible under output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def well_conditioned_simplex(n, rng, min_det=1e-2):
    """Random simplex in the unit ball, rejection-filtered for quality.

    Tight tolerances in the invariant tests need simplices whose vertex
    matrices are not nearly singular; min_det bounds |det S| relative to
    the scale of the ball.
    """
    simplex, _ = random_simplex_in_ball(n, rng, min_det=min_det)
    return simplex


def random_affine_map(n, rng, max_cond=50.0):
    """Random invertible affine map with a bounded condition number."""
    while True:
        a = rng.standard_normal((n, n))
        s = np.linalg.svd(a, compute_uv=False)
        if s[0] / s[-1] <= max_cond:
            break
    return AffineMap(a, rng.standard_normal(n))


def random_ball(n, rng):
    return Ball(rng.standard_normal(n), float(rng.uniform(0.5, 3.0)))


def simplex_in_ball(n, rng, ball, min_det=1e-2):
    """Quality-filtered random simplex with vertices in the given ball."""
    inner = well_conditioned_simplex(n, rng, min_det=min_det)
    return build_simplex(ball.center + ball.radius * inner.vertices)
