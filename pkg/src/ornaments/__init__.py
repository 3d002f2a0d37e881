"""Exact piecewise-linear ornaments of three closed oriented manifolds in
R^{3k-1} and their integer triple-point invariant, computed two independent
ways: as a mapping degree by ray-preimage counting, and as the algebraic
number of triple points swept out by a homotopy to the trivial ornament."""

from .geometry import (
    DEFAULT_DENOMINATOR_LIMIT,
    DimensionMismatch,
    Matrix,
    Rat,
    Vector,
    barycentric_position,
    det_sign,
    format_rational,
    parse_rational,
    random_rational_perturbation,
    rat,
    solve_affine,
)
from .model import (
    Ornament,
    PLMap,
    TriangulatedManifold,
    ValidationReport,
    perturb_ornament,
    validate_manifold,
    validate_ornament,
)
from .degree import (
    NonGenericDirection,
    PreimageSolution,
    RayDirection,
    SignConvention,
    degree_sign,
    mu_via_degree,
    mu_via_degree_auto,
    ray_direction,
    reverse_component_orientation,
    unnormalized_sphere_map,
)
from .sweep import (
    HomotopyTrack,
    NonGenericTrack,
    PrismCell,
    SignedTriplePoint,
    detect_triple_points,
    mu_via_sweep,
    pair_opposite_signs,
    relative_sweep,
    straight_line_homotopy_to_trivial,
)
from .constructions import (
    CrossPolytopeSphere,
    cross_polytope_sphere,
    make_borromean,
    make_random_ornament,
    make_trivial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
