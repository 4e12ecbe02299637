import itertools
import math

import numpy as np
import pytest

from simplexball import (
    Ball,
    DegeneratePoints,
    DomainError,
    EmptySubset,
    SimplexNotContained,
    all_max_points,
    apply_affine,
    binomial_exact,
    build_simplex,
    face_centroid,
    is_maximal_segment,
    k_of,
    lambda_sum,
    max_point,
    minimal_ellipsoid,
    norm_on_ball,
    regular_in_ball,
    regular_inscribed,
    regular_norm,
    simplex_volume,
    volume_constants,
)
from simplexball.extremal import _exit_point, _kappa_parity, _ratio_parity
from conftest import random_affine_map, simplex_in_ball, well_conditioned_simplex
from mvee_oracle import mvee


def unit_ball(n):
    return Ball(np.zeros(n), 1.0)


class TestFaceCentroid:
    def test_single_vertex(self, rng):
        s = well_conditioned_simplex(3, rng)
        assert np.array_equal(face_centroid(s, [2]), s.vertices[2])

    def test_full_face_is_centroid(self, rng):
        s = well_conditioned_simplex(3, rng)
        assert np.abs(face_centroid(s, range(4)) - s.centroid).max() < 1e-12

    def test_centroid_splits_between_complementary_faces(self, rng):
        # (n+1) c = m g + (n+1-m) h for every m-subset and its complement
        s = well_conditioned_simplex(4, rng)
        for m in (1, 2, 3):
            subset = tuple(range(m))
            rest = tuple(range(m, 5))
            g = face_centroid(s, subset)
            h = face_centroid(s, rest)
            assert np.abs(5 * s.centroid - (m * g + (5 - m) * h)).max() < 1e-10

    def test_empty_subset_rejected(self, rng):
        s = well_conditioned_simplex(2, rng)
        with pytest.raises(EmptySubset):
            face_centroid(s, [])

    def test_out_of_range_index_rejected(self, rng):
        s = well_conditioned_simplex(2, rng)
        with pytest.raises(DomainError):
            face_centroid(s, [3])
        with pytest.raises(DomainError):
            face_centroid(s, [0, 0])


class TestExitPoint:
    def test_axis_ray_in_unit_ball(self):
        # Ray starting at the center heading along e_1 leaves at e_1.
        y = _exit_point(unit_ball(3), np.zeros(3), np.array([0.5, 0.0, 0.0]))
        assert np.abs(y - np.array([1.0, 0.0, 0.0])).max() < 1e-12

    def test_interior_start_lands_on_sphere(self, rng):
        ball = Ball(rng.standard_normal(3), 2.0)
        start = ball.center + 0.3 * rng.standard_normal(3)
        y = _exit_point(ball, start, rng.standard_normal(3))
        assert np.linalg.norm(y - ball.center) == pytest.approx(2.0, abs=1e-12)

    def test_ellipsoid_exit_satisfies_membership(self, rng):
        from simplexball import Ellipsoid
        e = Ellipsoid(np.ones(2), np.diag([4.0, 1.0]))
        y = _exit_point(e, np.ones(2), np.array([1.0, 1.0]))
        assert e.membership(y) == pytest.approx(1.0, abs=1e-12)


class TestMaxPoint:
    def test_regular_subsets_attain_the_norm(self):
        for n in (2, 3, 5):
            ball = unit_ball(n)
            s = regular_in_ball(ball)
            k = k_of(n)
            for subset in itertools.combinations(range(n + 1), k):
                r = max_point(s, ball, subset)
                assert lambda_sum(s, r.y) == pytest.approx(
                    regular_norm(n), abs=1e-9)
                assert np.linalg.norm(r.y) == pytest.approx(1.0, abs=1e-12)

    def test_y_lies_beyond_h_on_the_g_h_ray(self, rng):
        ball = unit_ball(3)
        s = simplex_in_ball(3, rng, ball)
        r = max_point(s, ball, (0, 1))
        d = r.h - r.g
        t = (r.y - r.g) @ d / (d @ d)
        assert t >= 1.0 - 1e-12
        off_ray = r.y - (r.g + t * d)
        assert np.abs(off_ray).max() < 1e-10

    def test_result_serialization(self):
        ball = unit_ball(2)
        r = max_point(regular_in_ball(ball), ball, (0,))
        d = r.to_dict()
        assert set(d) == {"subset", "g", "h", "y", "lambdaSum"}
        assert d["subset"] == [0]

    def test_requires_containment(self):
        s = build_simplex([[0.0, 0.0], [5.0, 0.0], [0.0, 5.0]])
        with pytest.raises(SimplexNotContained):
            max_point(s, unit_ball(2), (0,))

    def test_full_subset_rejected(self, rng):
        ball = unit_ball(2)
        s = regular_in_ball(ball)
        with pytest.raises(EmptySubset):
            max_point(s, ball, (0, 1, 2))


class TestAllMaxPoints:
    @pytest.mark.parametrize("n", [2, 3, 5, 7])
    def test_count_norm_boundary_distinct(self, n):
        pts = all_max_points(n)
        assert len(pts) == binomial_exact(n + 1, k_of(n))
        target = regular_norm(n)
        ys = np.array([p.y for p in pts])
        for p in pts:
            assert p.lambda_sum_at_y == pytest.approx(target, abs=1e-9)
        assert np.abs(np.linalg.norm(ys, axis=1) - 1.0).max() < 1e-9
        d = np.linalg.norm(ys[:, None] - ys[None], axis=2)
        np.fill_diagonal(d, np.inf)
        assert d.min() > 1e-6

    def test_rejects_dimension_one(self):
        with pytest.raises(DomainError):
            all_max_points(1)

    def test_g_h_distance_identity_on_canonical_config(self):
        # |g - h|^2 = (n+1) / (k (n+1-k)) for complementary face centroids
        # of the canonical edge-sqrt(2) configuration.
        for n in range(2, 16):
            s = regular_inscribed(n).simplex
            for k in (1, k_of(n), n // 2 or 1):
                g = face_centroid(s, range(k))
                h = face_centroid(s, range(k, n + 1))
                expected = (n + 1) / (k * (n + 1 - k))
                assert np.dot(g - h, g - h) == pytest.approx(expected, abs=1e-10)
        # spot value: n = 5, k = 2 gives 6 / (2 * 4) = 0.75
        s = regular_inscribed(5).simplex
        g = face_centroid(s, (0, 1))
        h = face_centroid(s, (2, 3, 4, 5))
        assert np.dot(g - h, g - h) == pytest.approx(0.75, abs=1e-12)


class TestMaximalSegment:
    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_regular_complementary_centroids(self, n):
        s = regular_inscribed(n).simplex
        for m in range(1, n + 1):
            g = face_centroid(s, range(m))
            h = face_centroid(s, range(m, n + 1))
            assert is_maximal_segment(s, g, h)

    def test_interior_segment_is_not_maximal(self, rng):
        s = well_conditioned_simplex(3, rng)
        c = s.centroid
        assert not is_maximal_segment(s, c, 0.9 * c + 0.1 * s.vertices[0])

    def test_shifted_endpoint_fails(self, rng):
        s = regular_inscribed(3).simplex
        g = face_centroid(s, (0,))
        h = face_centroid(s, (1, 2, 3))
        assert not is_maximal_segment(s, 0.98 * g + 0.02 * s.centroid, h)

    def test_coincident_points_rejected(self, rng):
        s = well_conditioned_simplex(2, rng)
        with pytest.raises(DegeneratePoints):
            is_maximal_segment(s, s.centroid, s.centroid)

    def test_random_simplices_all_split_sizes(self, rng):
        for _ in range(20):
            s = well_conditioned_simplex(4, rng)
            for m in range(1, 5):
                g = face_centroid(s, range(m))
                h = face_centroid(s, range(m, 5))
                assert is_maximal_segment(s, g, h)


class TestMinimalEllipsoid:
    def test_touches_all_vertices_and_centers_at_centroid(self, rng):
        s = well_conditioned_simplex(4, rng)
        e = minimal_ellipsoid(s)
        for v in s.vertices:
            assert e.membership(v) == pytest.approx(1.0, abs=1e-9)
        assert np.abs(e.center - s.centroid).max() < 1e-10

    def test_contains_the_whole_simplex(self, rng):
        s = well_conditioned_simplex(3, rng)
        e = minimal_ellipsoid(s)
        for _ in range(200):
            w = rng.dirichlet(np.ones(4))
            assert e.contains(w @ s.vertices, tol=1e-9)

    def test_volume_ratio_is_dimension_constant(self, rng):
        for n in (2, 3, 4):
            s = well_conditioned_simplex(n, rng)
            e = minimal_ellipsoid(s)
            assert e.volume() / simplex_volume(s) == pytest.approx(
                volume_constants(n).ratio, rel=1e-10)

    def test_affine_equivariance(self, rng):
        s = well_conditioned_simplex(3, rng)
        f = random_affine_map(3, rng)
        direct = minimal_ellipsoid(apply_affine(f, s))
        mapped = apply_affine(f, minimal_ellipsoid(s))
        assert np.abs(direct.center - mapped.center).max() < 1e-8
        assert np.abs(direct.shape - mapped.shape).max() < 1e-8 * max(
            1.0, np.abs(mapped.shape).max())

    def test_ball_case_for_regular_simplex(self):
        # For the regular inscribed simplex the minimal ellipsoid is the
        # circumscribed ball itself.
        s = regular_in_ball(unit_ball(3))
        b = minimal_ellipsoid(s).to_ball(tol=1e-9)
        assert b is not None
        assert b.radius == pytest.approx(1.0, abs=1e-10)
        assert np.abs(b.center).max() < 1e-10

    def test_agrees_with_iterative_oracle(self, rng):
        s = well_conditioned_simplex(3, rng)
        e = minimal_ellipsoid(s)
        center, shape = mvee(s.vertices)
        assert np.abs(center - e.center).max() < 1e-6
        assert np.abs(shape - e.shape).max() < 1e-6


class TestVolumeConstants:
    def test_low_dimensional_values(self):
        v1 = volume_constants(1)
        assert v1.kappa == pytest.approx(2.0)
        assert v1.sigma == pytest.approx(2.0)  # the segment [-1, 1]
        assert v1.ratio == pytest.approx(1.0)
        v2 = volume_constants(2)
        assert v2.kappa == pytest.approx(math.pi)
        assert v2.sigma == pytest.approx(3 * math.sqrt(3) / 4)
        assert v2.ratio == pytest.approx(4 * math.pi / (3 * math.sqrt(3)))
        v3 = volume_constants(3)
        assert v3.sigma == pytest.approx(8 / (9 * math.sqrt(3)), rel=1e-12)
        assert v3.ratio == pytest.approx(8.16209713905397, rel=1e-12)

    def test_sigma_matches_measured_volume(self):
        for n in (2, 3, 5, 8):
            s = regular_in_ball(unit_ball(n))
            assert simplex_volume(s) == pytest.approx(
                volume_constants(n).sigma, rel=1e-12)

    def test_parity_closed_forms(self):
        # Gamma-function route against the even/odd specializations.
        for n in range(1, 13):
            v = volume_constants(n)
            assert _kappa_parity(n) == pytest.approx(v.kappa, rel=1e-12)
            assert _ratio_parity(n) == pytest.approx(v.ratio, rel=1e-12)
