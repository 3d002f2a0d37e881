"""The invariant of an ornament as a mapping degree.

Sending (x, y, z) to (2x-y-z, 2y-x-z) maps the product of the three
components into R^{2m} minus the origin, hitting 0 exactly on would-be
common points; composing with radial projection gives a map to the
(2m-1)-sphere whose degree is the invariant.  Instead of projecting, we
count preimages of a rational ray: for each facet triple the map is jointly
affine in the stacked barycentric parameters, so one exact linear solve per
triple finds the unique candidate preimage, which is counted when it is
strictly interior with a positive ray scalar and signed by the determinant
of the very matrix that was solved.

Degeneracies (singular systems that still touch the closed cells, boundary
solutions, zero ray scalar) are detected exactly and reported as
NonGenericDirection; callers retry with a fresh seeded direction, which
succeeds for all but a measure-zero set of directions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .geometry import (
    DimensionMismatch,
    Rat,
    Vector,
    derive_seed,
    feasible_point,
    integer_scaled,
    ray_meets_box,
    solve_integer,
)
from .model import Ornament, TriangulatedManifold, _nonneg_rows


def degree_sign(k):
    """Orientation constant relating the raw determinant signs below to the
    normalized invariant: the ambient-dimension parity (-1)^(3k-1), i.e.
    (-1)^(k-1).

    Calibrated once so that the k=1 reference construction
    (constructions.make_borromean) has invariant +1, then frozen.  The k=2
    value +1, orientation antisymmetry, trivial ornaments giving 0 and
    agreement with the independent sweep count are all predictions of this
    single choice, exercised by the test suite.
    """
    return -1 if k % 2 == 0 else 1


@dataclass(frozen=True)
class SignConvention:
    """Global sign fixed by the one-time calibration in degree_sign."""

    global_sign: int


class NonGenericDirection(Exception):
    """The chosen ray direction is not a regular value; retry with another."""


@dataclass(frozen=True)
class RayDirection:
    """A nonzero rational direction in R^{2m}, standing for the ray it spans."""

    v: Vector
    seed: int | None = None

    def __post_init__(self):
        if self.v.is_zero():
            raise ValueError("ray direction must be nonzero")


@dataclass(frozen=True)
class PreimageSolution:
    """One transverse ray preimage: facet triple, full barycentric
    coordinates per facet, ray scalar s > 0, and the calibrated sign."""

    facets: tuple
    barycentric: tuple
    s: object
    sign: int


def unnormalized_sphere_map(x, y, z):
    """(x, y, z) -> (2x-y-z, 2y-x-z); zero exactly when x = y = z."""
    if not (len(x) == len(y) == len(z)):
        raise DimensionMismatch("points must share one ambient dimension")
    top = 2 * x - y - z
    bottom = 2 * y - x - z
    return Vector(tuple(top) + tuple(bottom))


def ray_direction(m, seed):
    """Seeded rational ray direction in R^{2m} (integer entries, nonzero)."""
    rng = random.Random(seed)
    while True:
        coords = [rng.getrandbits(17) - 2 ** 16 for _ in range(2 * m)]
        if any(coords):
            return RayDirection(Vector(coords), seed)


def component_k(o):
    """The k with component dimension 2k-1 and ambient dimension 3k-1.

    Raises DimensionMismatch unless all components share one odd dimension d
    with 3d = 2m-1 (the equality that makes the degree an integer).
    """
    dims = {f.domain.dim for f in o.components}
    if len(dims) != 1:
        raise DimensionMismatch(f"component dimensions differ: {sorted(dims)}")
    d = dims.pop()
    if 3 * d != 2 * o.m - 1:
        raise DimensionMismatch(
            f"component dimension {d} and ambient dimension {o.m} do not"
            f" satisfy 3d = 2m-1"
        )
    return (d + 1) // 2


def _facet_frames(f):
    """Per facet: base image (last listed vertex) and the edge vectors of
    the remaining vertices relative to it, in listed order, pre-scaled to
    integer columns ``(scale, ints)`` for the solver."""
    frames = []
    for i in range(len(f.domain.facets)):
        pts = f.facet_points(i)
        base = pts[-1]
        edges = [integer_scaled((p - base).coords) for p in pts[:-1]]
        frames.append((base, edges))
    return frames


def _sphere_map_box(b1, b2, b3):
    """Interval hull of (2x-y-z, 2y-x-z) when x, y, z range over boxes."""
    mins, maxs = [], []
    for lo1, hi1, lo2, hi2, lo3, hi3 in zip(
        b1[0], b1[1], b2[0], b2[1], b3[0], b3[1]
    ):
        mins.append(2 * lo1 - hi2 - hi3)
        maxs.append(2 * hi1 - lo2 - lo3)
    for lo1, hi1, lo2, hi2, lo3, hi3 in zip(
        b1[0], b1[1], b2[0], b2[1], b3[0], b3[1]
    ):
        mins.append(2 * lo2 - hi1 - hi3)
        maxs.append(2 * hi2 - lo1 - lo3)
    return tuple(mins), tuple(maxs)


def _interior_status(solution, arities):
    """Classify a reduced-barycentric solution (with trailing ray scalar)
    as "interior", "closed" (touches a boundary) or "outside"."""
    pos = 0
    interior = True
    for arity in arities:
        coords = solution[pos:pos + arity - 1]
        pos += arity - 1
        last = 1 - sum(coords, Rat(0))
        for c in list(coords) + [last]:
            if c < 0:
                return "outside"
            if c == 0:
                interior = False
    s = solution[-1]
    if s < 0:
        return "outside"
    if s == 0:
        interior = False
    return "interior" if interior else "closed"


def _full_barycentric(solution, arities):
    out = []
    pos = 0
    for arity in arities:
        coords = list(solution[pos:pos + arity - 1])
        pos += arity - 1
        coords.append(1 - sum(coords, Rat(0)))
        out.append(tuple(coords))
    return tuple(out)


def _ray_touches_closed_cells(o, facet_indices, v):
    """Feasibility of "the closed facet triple maps onto a point of the
    closed ray": decides whether a singular system still matters."""
    pts = [f.facet_points(i) for f, i in zip(o.components, facet_indices)]
    arities = [len(p) for p in pts]
    offsets = [0, arities[0], arities[0] + arities[1]]
    n = sum(arities) + 1
    m = o.m
    rows = []
    for c in range(m):
        row = [Rat(0)] * n
        for a, p in enumerate(pts[0]):
            row[offsets[0] + a] = 2 * p[c]
        for a, p in enumerate(pts[1]):
            row[offsets[1] + a] = -p[c]
        for a, p in enumerate(pts[2]):
            row[offsets[2] + a] = -p[c]
        row[n - 1] = -v[c]
        rows.append((row, Rat(0)))
    for c in range(m):
        row = [Rat(0)] * n
        for a, p in enumerate(pts[0]):
            row[offsets[0] + a] = -p[c]
        for a, p in enumerate(pts[1]):
            row[offsets[1] + a] = 2 * p[c]
        for a, p in enumerate(pts[2]):
            row[offsets[2] + a] = -p[c]
        row[n - 1] = -v[m + c]
        rows.append((row, Rat(0)))
    for i in range(3):
        row = [Rat(0)] * n
        for a in range(arities[i]):
            row[offsets[i] + a] = Rat(1)
        rows.append((row, Rat(1)))
    return feasible_point(rows, _nonneg_rows(n), n) is not None


def mu_via_degree(o, v, sign_convention=None):
    """Signed count of ray preimages: the invariant plus its witnesses.

    Requires a valid ornament with the dimensions checked by
    :func:`component_k`.  Returns ``(mu, solutions)``.  Raises
    NonGenericDirection when the direction fails to be a regular value
    (some system singular-but-touching, a boundary preimage, or a zero ray
    scalar); the caller retries with a fresh seeded direction.
    """
    k = component_k(o)
    convention = sign_convention or SignConvention(degree_sign(k))
    if isinstance(v, RayDirection):
        ray = v.v
    else:
        ray = Vector(v)
        if ray.is_zero():
            raise ValueError("ray direction must be nonzero")
    m = o.m
    if len(ray) != 2 * m:
        raise DimensionMismatch(f"ray must have length {2 * m}")
    f1, f2, f3 = o.components
    frames = [_facet_frames(f) for f in o.components]
    boxes = [
        [f.facet_box(i) for i in range(len(f.domain.facets))]
        for f in o.components
    ]
    d = f1.domain.dim
    arities = (d + 1, d + 1, d + 1)
    ray_scale, ray_int = integer_scaled(ray.coords)
    solutions = []
    total = 0
    for i1 in range(len(f1.domain.facets)):
        for i2 in range(len(f2.domain.facets)):
            for i3 in range(len(f3.domain.facets)):
                gbox = _sphere_map_box(boxes[0][i1], boxes[1][i2], boxes[2][i3])
                if not ray_meets_box(ray, gbox):
                    continue
                base1, e1 = frames[0][i1]
                base2, e2 = frames[1][i2]
                base3, e3 = frames[2][i3]
                rows = []
                rhs = []
                for c in range(m):
                    rows.append(
                        [2 * u[c] for _, u in e1]
                        + [-u[c] for _, u in e2]
                        + [-u[c] for _, u in e3]
                        + [-ray_int[c]]
                    )
                    rhs.append(-(2 * base1[c] - base2[c] - base3[c]))
                for c in range(m):
                    rows.append(
                        [-u[c] for _, u in e1]
                        + [2 * u[c] for _, u in e2]
                        + [-u[c] for _, u in e3]
                        + [-ray_int[m + c]]
                    )
                    rhs.append(-(2 * base2[c] - base1[c] - base3[c]))
                rho, rhs_int = integer_scaled(rhs)
                sign, scaled = solve_integer(rows, rhs_int)
                if sign == 0:
                    if _ray_touches_closed_cells(o, (i1, i2, i3), ray):
                        raise NonGenericDirection(
                            f"singular system touching facets {(i1, i2, i3)}"
                        )
                    continue
                col_scales = (
                    [s for s, _ in e1] + [s for s, _ in e2]
                    + [s for s, _ in e3] + [ray_scale]
                )
                solution = [s * y / rho for s, y in zip(col_scales, scaled)]
                status = _interior_status(solution, arities)
                if status == "outside":
                    continue
                if status == "closed":
                    raise NonGenericDirection(
                        f"boundary preimage on facets {(i1, i2, i3)}"
                    )
                total += sign
                solutions.append(PreimageSolution(
                    facets=(i1, i2, i3),
                    barycentric=_full_barycentric(solution, arities),
                    s=solution[-1],
                    sign=convention.global_sign * sign,
                ))
    return convention.global_sign * total, solutions


def mu_via_degree_auto(o, seed=0, max_attempts=64):
    """Retry mu_via_degree over seeded directions until one is generic."""
    for attempt in range(max_attempts):
        v = ray_direction(o.m, derive_seed(seed, "ray", attempt))
        try:
            return mu_via_degree(o, v)
        except NonGenericDirection:
            continue
    raise RuntimeError("no generic direction found; is the ornament valid?")


def reverse_component_orientation(o, which):
    """Flip the orientation of one component (1, 2 or 3) by transposing the
    first two vertices of each of its facets; images are untouched."""
    if which not in (1, 2, 3):
        raise ValueError("component index must be 1, 2 or 3")
    components = list(o.components)
    f = components[which - 1]
    flipped = tuple((fac[1], fac[0]) + fac[2:] for fac in f.domain.facets)
    domain = TriangulatedManifold(f.domain.dim, f.domain.vertex_count, flipped)
    from .model import PLMap

    components[which - 1] = PLMap(domain, f.ambient_dim, f.images)
    return Ornament(components)
