"""Norms of linear interpolation projectors with nodes in a ball.

Exact sign-class enumeration of the projector norm over balls and
ellipsoids, the closed-form theory of the regular inscribed simplex and
its norm-attaining boundary points, minimal enclosing ellipsoids,
Legendre-based lower bounds, and randomized stress tests of the
attainment conjecture.
"""

from .backend import backend_name
from .bounds import (
    DEFAULT_SEED,
    H1CheckResult,
    H1Report,
    ThetaEstimate,
    chi_inverse,
    h1_check,
    h1_point,
    h1_stress,
    legendre_chi,
    lower_bound,
    random_simplex_in_ball,
    theta_search,
)
from .errors import (
    CoincidentCentroids,
    DegenerateEllipsoid,
    DegeneratePoints,
    DegenerateSimplex,
    DimensionMismatch,
    DimensionTooLarge,
    DomainError,
    EmptySubset,
    NoIntersection,
    SimplexBallError,
    SimplexNotContained,
    SingularMap,
    SubsetCountTooLarge,
    WeightSumViolation,
)
from .extremal import (
    MaxPointResult,
    VolumeConstants,
    all_max_points,
    face_centroid,
    is_maximal_segment,
    max_point,
    minimal_ellipsoid,
    volume_constants,
)
from .geometry import (
    AffineMap,
    Ball,
    Ellipsoid,
    Simplex,
    affine_from_vertices,
    apply_affine,
    ball_from_dict,
    ball_to_dict,
    barycentric_of,
    build_simplex,
    ellipsoid_from_dict,
    ellipsoid_to_dict,
    point_of,
    simplex_from_dict,
    simplex_to_dict,
    simplex_volume,
    unit_ball_volume,
)
from .norm import (
    NormReport,
    lambda_sum,
    norm_on_ball,
    norm_on_ellipsoid,
    norm_sampled,
)
from .regular import (
    RegularConfig,
    TableRow,
    a_of,
    binomial_exact,
    k_of,
    psi,
    regular_in_ball,
    regular_inscribed,
    regular_norm,
    table1,
)

__version__ = "0.1.0"
