import random

import pytest

from ornaments.constructions import make_random_ornament, make_trivial
from ornaments.degree import mu_via_degree_auto
from ornaments.geometry import Rat, Vector
from ornaments.model import perturb_ornament, validate_ornament
from ornaments.sweep import (
    HomotopyTrack,
    NonGenericTrack,
    cell_points,
    certify_ornament_homotopy,
    concat_tracks,
    default_trivial_targets,
    detect_triple_points,
    linear_track,
    mu_via_sweep,
    pair_opposite_signs,
    relative_sweep,
    reverse_track,
    staircase_cells,
    straight_line_homotopy_to_trivial,
    sweep_with_retries,
    trivial_ornament,
    _cell_frame,
    _pair_reduction,
    _solve_triple,
    _solve_triple_reduced,
)


# --- staircase triangulation ---------------------------------------------------

def test_staircase_cell_shapes():
    facet = (4, 1, 7)
    cells = staircase_cells(facet, component=0, facet_index=3, interval=2)
    assert len(cells) == 3
    for cell in cells:
        assert len(cell.vertices) == 4
        levels = [lvl for _, lvl in cell.vertices]
        assert levels == sorted(levels)
        assert levels[0] == 0 and levels[-1] == 1
        verts = [v for v, _ in cell.vertices]
        assert verts == sorted(verts)  # staircase runs over the sorted order


def test_staircase_signs_alternate():
    # sorted facet: parity +1, cell i carries (-1)^(d - i)
    cells = staircase_cells((0, 1), 0, 0, 0)
    assert [c.sign for c in cells] == [-1, 1]
    # swapping the listed order flips every cell
    cells = staircase_cells((1, 0), 0, 0, 0)
    assert [c.sign for c in cells] == [1, -1]


def test_staircase_restricts_to_shared_faces():
    """Adjacent prisms must induce one triangulation on a shared wall.

    Because the staircase runs over globally sorted vertices, the cells of
    facet x I supported on a face tau x I are exactly the staircase cells
    of tau: that is what makes the track a well-defined map across facets.
    """
    def supported_cells(facet, face):
        keep = set(face)
        out = set()
        for cell in staircase_cells(facet, 0, 0, 0):
            verts = {v for v, _ in cell.vertices}
            if verts <= keep:
                out.add(cell.vertices)
        return out

    for facet, face in [
        ((0, 1, 2), (0, 2)),
        ((2, 0, 1), (1, 2)),
        ((3, 1, 4, 0), (0, 1, 3)),
        ((5, 2, 9, 7), (2, 5)),
    ]:
        expected = {
            cell.vertices for cell in staircase_cells(face, 0, 0, 0)
        }
        assert supported_cells(facet, face) == expected


def test_pair_reduction_matches_direct_solver():
    rng = random.Random(12)

    def rand_cell(npts, width):
        return [
            tuple(Rat(rng.randint(-30, 30), rng.randint(1, 7))
                  for _ in range(width))
            for _ in range(npts)
        ]

    for _ in range(400):
        k = rng.choice((1, 2))
        width, npts = 3 * k, 2 * k + 1
        f1 = _cell_frame(rand_cell(npts, width))
        f2 = _cell_frame(rand_cell(npts, width))
        f3 = _cell_frame(rand_cell(npts, width))
        direct = _solve_triple(f1, f2, f3)
        reduction = _pair_reduction(f1, f2)
        if reduction is None:
            assert direct[0] == 0
            continue
        reduced = _solve_triple_reduced(reduction, f1, f2, f3)
        assert direct[0] == reduced[0]
        if direct[0] != 0:
            assert direct[1] == reduced[1]


# --- tracks ---------------------------------------------------------------------

def test_linear_track_endpoints(borromean_k1):
    targets = default_trivial_targets(borromean_k1, 0)
    domains = tuple(f.domain for f in borromean_k1.components)
    end = trivial_ornament(domains, borromean_k1.m, targets)
    track = linear_track(borromean_k1, end, cuts=(Rat(1, 3), Rat(2, 3)))
    assert track.endpoint(0) == borromean_k1
    assert track.endpoint(1) == end
    assert len(track.times) == 4


def test_track_time_validation(borromean_k1):
    domains = tuple(f.domain for f in borromean_k1.components)
    frame = tuple(f.images for f in borromean_k1.components)
    with pytest.raises(ValueError):
        HomotopyTrack(domains, borromean_k1.m, (0, Rat(1, 2)), (frame, frame))
    with pytest.raises(ValueError):
        HomotopyTrack(domains, borromean_k1.m,
                      (0, Rat(1, 2), Rat(1, 2), 1),
                      (frame, frame, frame, frame))


def test_trivial_to_same_targets_has_no_triple_points():
    from ornaments.constructions import make_trivial

    targets = [Vector([0, 0]), Vector([3, 0]), Vector([0, 3])]
    o = make_trivial(1, targets=targets)
    track = straight_line_homotopy_to_trivial(o, targets, seed=0)
    assert detect_triple_points(track) == []
    assert linear_track(o, o) is not None  # constant track is well-formed too
    assert detect_triple_points(linear_track(o, o)) == []


def test_borromean_track_counts_one(borromean_k1):
    targets = default_trivial_targets(borromean_k1, 0)
    track = straight_line_homotopy_to_trivial(borromean_k1, targets, seed=0)
    assert validate_ornament(track.endpoint(0)).ok
    assert validate_ornament(track.endpoint(1)).ok
    points = detect_triple_points(track)
    assert sum(p.sign for p in points) == 1


def test_straight_line_rejects_coincident_targets(borromean_k1):
    t = Vector([10, 10])
    with pytest.raises(ValueError):
        straight_line_homotopy_to_trivial(borromean_k1, [t, t, Vector([0, 1])])


def test_time_reversal_negates(borromean_k1):
    targets = default_trivial_targets(borromean_k1, 0)
    track = straight_line_homotopy_to_trivial(borromean_k1, targets, seed=0)
    forward = relative_sweep(track, seed=1)
    backward = relative_sweep(reverse_track(track), seed=1)
    assert forward == 1
    assert backward == -1


def test_concatenation_adds(borromean_k1):
    targets = default_trivial_targets(borromean_k1, 0)
    track = straight_line_homotopy_to_trivial(borromean_k1, targets, seed=0)
    loop = concat_tracks(track, reverse_track(track))
    assert relative_sweep(loop, seed=2) == 0


def test_concatenation_adds_heterogeneous_legs(borromean_k1):
    # Borromean -> perturbation -> trivial: 0 plus 1
    middle = perturb_ornament(borromean_k1, Rat(1, 32), seed=11)
    first = linear_track(borromean_k1, middle)
    targets = default_trivial_targets(middle, 3)
    domains = tuple(f.domain for f in middle.components)
    second = linear_track(middle, trivial_ornament(domains, middle.m, targets),
                          cuts=(Rat(1, 4), Rat(1, 2)))
    assert relative_sweep(first, seed=0) == 0
    assert relative_sweep(second, seed=0) == 1
    assert relative_sweep(concat_tracks(first, second), seed=0) == 1


def test_mu_via_sweep_values(borromean_k1, trivial_k1):
    assert mu_via_sweep(trivial_k1, seed=0) == 0
    assert mu_via_sweep(borromean_k1, seed=0) == 1


def test_mu_via_sweep_seed_independent(borromean_k1):
    assert {mu_via_sweep(borromean_k1, seed=s) for s in range(10)} == {1}


def test_mu_via_sweep_deterministic(borromean_k1):
    assert mu_via_sweep(borromean_k1, seed=3) == mu_via_sweep(borromean_k1, seed=3)


def test_relative_sweep_of_perturbation_is_zero(borromean_k1):
    other = perturb_ornament(borromean_k1, Rat(1, 50), seed=8)
    track = linear_track(borromean_k1, other)
    assert relative_sweep(track, seed=0) == 0


def test_relative_sweep_matches_endpoint_difference():
    for seed in (0, 1, 2, 3):
        a = make_random_ornament(1, seed=seed, spread=Rat(8))
        b = make_random_ornament(1, seed=seed + 100, spread=Rat(8))
        track = linear_track(a, b)
        expected = (mu_via_degree_auto(a, seed=seed)[0]
                    - mu_via_degree_auto(b, seed=seed)[0])
        assert relative_sweep(track, seed=seed) == expected


def test_triple_points_substitute_exactly(borromean_k1):
    targets = default_trivial_targets(borromean_k1, 5)
    track = straight_line_homotopy_to_trivial(borromean_k1, targets, seed=5)
    for point in detect_triple_points(track):
        images = []
        for cell, bary in zip(point.cells, point.barycentric):
            pts = cell_points(track, cell)
            acc = [Rat(0)] * len(pts[0])
            for lam, p in zip(bary, pts):
                for c in range(len(p)):
                    acc[c] += lam * p[c]
            images.append(tuple(acc))
        assert images[0] == images[1] == images[2]
        assert images[0][-1] == point.t
        assert 0 < point.t < 1


def test_retry_resolves_engineered_degeneracy():
    # three collapsing components crossing the origin simultaneously at
    # t = 1/2: every system is degenerate, so detection must refuse and the
    # retry protocol must settle to the correct (zero) relative count
    start = make_trivial(1, targets=[
        Vector([-1, -1]), Vector([2, 0]), Vector([0, 2])
    ])
    end = make_trivial(1, targets=[
        Vector([1, 1]), Vector([-2, 0]), Vector([0, -2])
    ])
    track = linear_track(start, end)
    with pytest.raises(NonGenericTrack):
        detect_triple_points(track)
    points, refined = sweep_with_retries(track, seed=4)
    assert sum(p.sign for p in points) == 0
    assert refined.endpoint(0) == start
    assert refined.endpoint(1) == end


def test_pair_opposite_signs_cases(borromean_k1):
    assert pair_opposite_signs([]) == ([], [])

    class P:
        def __init__(self, t, sign):
            self.t = t
            self.sign = sign

    plus, minus = P(Rat(1, 4), 1), P(Rat(1, 2), -1)
    pairs, rest = pair_opposite_signs([plus, minus])
    assert pairs == [(plus, minus)] and rest == []

    a, b, c = P(Rat(1, 4), 1), P(Rat(1, 2), 1), P(Rat(3, 4), -1)
    pairs, rest = pair_opposite_signs([a, b, c])
    assert pairs == [(a, c)] and rest == [b]

    targets = default_trivial_targets(borromean_k1, 0)
    track = straight_line_homotopy_to_trivial(borromean_k1, targets, seed=0)
    points = detect_triple_points(track)
    pairs, rest = pair_opposite_signs(points)
    total = sum(p.sign for p in points)
    assert len(rest) == abs(total)
    assert all(p.sign == (1 if total > 0 else -1) for p in rest)


def test_certification(borromean_k1):
    other = perturb_ornament(borromean_k1, Rat(1, 64), seed=9)
    assert certify_ornament_homotopy(linear_track(borromean_k1, other))
    targets = default_trivial_targets(borromean_k1, 0)
    collapse = straight_line_homotopy_to_trivial(borromean_k1, targets, seed=0)
    assert not certify_ornament_homotopy(collapse)


def test_default_targets_outside_and_distinct(borromean_k1):
    targets = default_trivial_targets(borromean_k1, 7)
    assert len({tuple(t) for t in targets}) == 3
    radius = max(
        abs(c) for f in borromean_k1.components for img in f.images for c in img
    )
    for t in targets:
        assert max(abs(c) for c in t) > radius
