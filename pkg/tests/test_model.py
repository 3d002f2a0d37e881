import random

import pytest

from ornaments.geometry import DimensionMismatch, Rat, Vector
from ornaments.model import (
    Ornament,
    PLMap,
    TriangulatedManifold,
    common_point_system,
    perturb_ornament,
    validate_manifold,
    validate_ornament,
)
from ornaments.degree import mu_via_degree_auto

from oracles import brute_force_feasible


def triangle_boundary():
    return TriangulatedManifold(1, 3, [(0, 1), (1, 2), (2, 0)])


def digon():
    # two vertices joined by two oppositely oriented edges: a combinatorial
    # circle whose image can be a plain segment
    return TriangulatedManifold(1, 2, [(0, 1), (1, 0)])


def segment_component(a, b):
    return PLMap(digon(), 2, [Vector(a), Vector(b)])


# --- validate_manifold -------------------------------------------------------

def test_triangle_boundary_valid():
    assert validate_manifold(triangle_boundary()).ok


def test_digon_valid():
    assert validate_manifold(digon()).ok


def test_flipped_edge_is_incoherent():
    t = TriangulatedManifold(1, 3, [(0, 1), (2, 1), (2, 0)])
    report = validate_manifold(t)
    assert not report.ok
    assert report.witness["reason"] == "incoherent orientation across ridge"


def test_disconnected_complex():
    t = TriangulatedManifold(
        1, 6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    )
    report = validate_manifold(t)
    assert not report.ok
    assert report.witness["reason"] == "facet graph disconnected"


def test_repeated_vertex_in_facet():
    t = TriangulatedManifold(1, 2, [(0, 0), (1, 0)])
    report = validate_manifold(t)
    assert not report.ok
    assert report.witness["reason"] == "repeated vertex in facet"


def test_ridge_in_three_facets():
    t = TriangulatedManifold(2, 5, [(0, 1, 2), (1, 0, 3), (0, 1, 4)])
    report = validate_manifold(t)
    assert not report.ok
    assert report.witness["reason"] == "ridge not shared by exactly two facets"


def test_manifold_constructor_rejects_bad_facets():
    with pytest.raises(ValueError):
        TriangulatedManifold(1, 2, [(0, 1, 1)])
    with pytest.raises(ValueError):
        TriangulatedManifold(1, 2, [(0, 2)])
    with pytest.raises(ValueError):
        TriangulatedManifold(1, 2, [])


def test_plmap_shape_checks():
    t = digon()
    with pytest.raises(DimensionMismatch):
        PLMap(t, 2, [Vector([0, 0])])
    with pytest.raises(DimensionMismatch):
        PLMap(t, 2, [Vector([0, 0]), Vector([0, 0, 0])])


def test_ornament_requires_three_equal_dim_components():
    seg = segment_component([0, 0], [1, 0])
    with pytest.raises(ValueError):
        Ornament([seg, seg])
    other = PLMap(digon(), 3, [Vector([0, 0, 0]), Vector([1, 0, 0])])
    with pytest.raises(DimensionMismatch):
        Ornament([seg, seg, other])


# --- validate_ornament -------------------------------------------------------

def concurrent_segments():
    # three straight segments through the origin
    return Ornament([
        segment_component([-1, 0], [1, 0]),
        segment_component([0, -1], [0, 1]),
        segment_component([-1, -1], [1, 1]),
    ])


def test_concurrent_segments_invalid_with_exact_witness():
    o = concurrent_segments()
    report = validate_ornament(o)
    assert not report.ok
    facets = report.witness["facets"]
    barys = report.witness["barycentric"]
    points = [
        f.point_at(i, [Rat(c) for c in bary])
        for f, i, bary in zip(o.components, facets, barys)
    ]
    assert points[0] == points[1] == points[2]
    assert points[0] == Vector([0, 0])


def test_disjoint_triangles_valid():
    def tri(cx):
        t = triangle_boundary()
        pts = [Vector([cx, 0]), Vector([cx + 1, 0]), Vector([cx, 1])]
        return PLMap(t, 2, pts)

    o = Ornament([tri(0), tri(5), tri(10)])
    assert validate_ornament(o).ok


def test_validate_invariant_under_relabeling(borromean_k1):
    o = borromean_k1
    f = o.components[0]
    n = f.domain.vertex_count
    perm = list(range(n))
    random.Random(3).shuffle(perm)
    relabeled_facets = [tuple(perm[v] for v in fac) for fac in f.domain.facets]
    relabeled_facets.reverse()
    images = [None] * n
    for old, new in enumerate(perm):
        images[new] = f.images[old]
    relabeled = PLMap(
        TriangulatedManifold(f.domain.dim, n, relabeled_facets),
        f.ambient_dim,
        images,
    )
    o2 = Ornament([relabeled, o.components[1], o.components[2]])
    assert validate_ornament(o2).ok == validate_ornament(o).ok


def test_borromean_k1_passes(borromean_k1):
    assert validate_ornament(borromean_k1).ok
    for f in borromean_k1.components:
        assert validate_manifold(f.domain).ok


def test_feasibility_matches_brute_force_on_facet_triples():
    # exhaustive vertex enumeration as the independent route
    from ornaments.constructions import make_random_ornament
    from ornaments.geometry import feasible_point
    from ornaments.model import _nonneg_rows

    rng = random.Random(9)
    for seed in (0, 1, 2):
        o = make_random_ornament(1, seed=seed, spread=Rat(6))
        for _ in range(6):
            idx = tuple(
                rng.randrange(len(f.domain.facets)) for f in o.components
            )
            eq_rows, nvars, _ = common_point_system(o.components, idx)
            ours = feasible_point(eq_rows, _nonneg_rows(nvars), nvars) is not None
            theirs = brute_force_feasible(eq_rows, _nonneg_rows(nvars), nvars)
            assert ours == theirs


# --- perturb_ornament ---------------------------------------------------------

def test_perturb_huge_eps_still_valid(borromean_k1):
    out = perturb_ornament(borromean_k1, Rat(1000), seed=4)
    assert validate_ornament(out).ok


def test_perturb_preserves_invariant(borromean_k1):
    out = perturb_ornament(borromean_k1, Rat(1, 10), seed=5)
    assert mu_via_degree_auto(out, seed=0)[0] == \
        mu_via_degree_auto(borromean_k1, seed=0)[0]


def test_perturb_trivial_keeps_zero(trivial_k1):
    out = perturb_ornament(trivial_k1, Rat(1, 4), seed=6)
    assert validate_ornament(out).ok
    assert mu_via_degree_auto(out, seed=0)[0] == 0


def test_perturb_deterministic(borromean_k1):
    a = perturb_ornament(borromean_k1, Rat(1, 16), seed=7)
    b = perturb_ornament(borromean_k1, Rat(1, 16), seed=7)
    assert a == b


def test_perturb_rejects_bad_eps(borromean_k1):
    with pytest.raises(ValueError):
        perturb_ornament(borromean_k1, 0, seed=1)
