"""Triangulated closed oriented manifolds, PL maps, and ornaments.

An ornament here is a triple of PL maps of closed oriented pseudomanifolds
into a common R^m whose three images share no point.  That no-common-point
condition is decided exactly, facet triple by facet triple, as a linear
feasibility question over the closed facets; a failure comes with an exact
witness (the facet triple and barycentric coordinates of a common image
point).

Manifolds are accepted at orientable-pseudomanifold strength: every
codimension-1 face in exactly two facets, with coherently opposite induced
orientations, and a connected facet-adjacency graph.  No link conditions
beyond that are checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import (
    DimensionMismatch,
    Rat,
    Vector,
    bounding_box,
    box_intersection,
    derive_seed,
    feasible_point,
    random_rational_perturbation,
)


def permutation_parity(seq):
    """+1 or -1: parity of the permutation sorting ``seq`` (distinct entries)."""
    inversions = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validity check; ``witness`` is present iff invalid."""

    status: str
    witness: dict | None = None

    @property
    def ok(self):
        return self.status == "valid"


def _valid():
    return ValidationReport("valid")


def _invalid(witness):
    return ValidationReport("invalid", witness)


class TriangulatedManifold:
    """Pure d-dimensional simplicial complex with oriented facets.

    Orientation is the listed vertex order of each facet tuple; whether the
    facets actually form a connected closed oriented pseudomanifold is
    decided by :func:`validate_manifold`, not at construction.
    """

    __slots__ = ("dim", "vertex_count", "facets")

    def __init__(self, dim, vertex_count, facets):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        facets = tuple(tuple(f) for f in facets)
        if not facets:
            raise ValueError("at least one facet required")
        for f in facets:
            if len(f) != dim + 1:
                raise ValueError(f"facet {f} does not have {dim + 1} vertices")
            for v in f:
                if not (0 <= v < vertex_count):
                    raise ValueError(f"vertex index {v} out of range")
        self.dim = dim
        self.vertex_count = vertex_count
        self.facets = facets

    def __eq__(self, other):
        return (
            isinstance(other, TriangulatedManifold)
            and self.dim == other.dim
            and self.vertex_count == other.vertex_count
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.dim, self.vertex_count, self.facets))

    def __repr__(self):
        return (
            f"TriangulatedManifold(dim={self.dim}, vertices={self.vertex_count}, "
            f"facets={len(self.facets)})"
        )


def _signed_ridges(facet):
    """Boundary faces of an oriented facet, each with its induced sign
    relative to the sorted vertex order of the face."""
    out = []
    for pos in range(len(facet)):
        ridge = facet[:pos] + facet[pos + 1:]
        sign = (-1) ** pos * permutation_parity(ridge)
        out.append((tuple(sorted(ridge)), sign))
    return out


def validate_manifold(t):
    """Check the closed-oriented-pseudomanifold conditions.

    Valid iff: no facet repeats a vertex, every ridge (codimension-1 face)
    lies in exactly two facets, the two induced orientations on each shared
    ridge are opposite, and the facet adjacency graph is connected.  On
    failure the witness names the offending facet, ridge or component.
    """
    for fi, facet in enumerate(t.facets):
        if len(set(facet)) != len(facet):
            return _invalid({"reason": "repeated vertex in facet", "facet": fi})
    ridges = {}
    for fi, facet in enumerate(t.facets):
        for key, sign in _signed_ridges(facet):
            ridges.setdefault(key, []).append((fi, sign))
    for key, occurrences in ridges.items():
        if len(occurrences) != 2:
            return _invalid({
                "reason": "ridge not shared by exactly two facets",
                "ridge": list(key),
                "facets": [fi for fi, _ in occurrences],
            })
    for key, ((fa, sa), (fb, sb)) in ridges.items():
        if sa + sb != 0:
            return _invalid({
                "reason": "incoherent orientation across ridge",
                "ridge": list(key),
                "facets": [fa, fb],
            })
    adjacency = {fi: set() for fi in range(len(t.facets))}
    for (fa, _), (fb, _) in (tuple(v) for v in ridges.values()):
        adjacency[fa].add(fb)
        adjacency[fb].add(fa)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(t.facets):
        missing = min(set(range(len(t.facets))) - seen)
        return _invalid({"reason": "facet graph disconnected", "facet": missing})
    return _valid()


class PLMap:
    """A triangulated manifold together with rational vertex images in R^m;
    the map is affine on each facet."""

    __slots__ = ("domain", "ambient_dim", "images", "_facet_boxes")

    def __init__(self, domain, ambient_dim, images):
        images = tuple(img if isinstance(img, Vector) else Vector(img)
                       for img in images)
        if len(images) != domain.vertex_count:
            raise DimensionMismatch(
                f"{domain.vertex_count} vertices but {len(images)} images"
            )
        for img in images:
            if len(img) != ambient_dim:
                raise DimensionMismatch(
                    f"image {img!r} does not live in R^{ambient_dim}"
                )
        self.domain = domain
        self.ambient_dim = ambient_dim
        self.images = images
        self._facet_boxes = {}

    def facet_points(self, i):
        return [self.images[v] for v in self.domain.facets[i]]

    def facet_box(self, i):
        box = self._facet_boxes.get(i)
        if box is None:
            box = bounding_box(tuple(p.coords for p in self.facet_points(i)))
            self._facet_boxes[i] = box
        return box

    def point_at(self, facet_index, barycentric):
        """Image of the point with the given (full) barycentric coordinates
        on the given facet."""
        facet = self.domain.facets[facet_index]
        if len(barycentric) != len(facet):
            raise DimensionMismatch("barycentric length does not match facet")
        acc = [Rat(0)] * self.ambient_dim
        for lam, v in zip(barycentric, facet):
            img = self.images[v]
            for c in range(self.ambient_dim):
                acc[c] += Rat(lam) * img[c]
        return Vector(acc)

    def __eq__(self, other):
        return (
            isinstance(other, PLMap)
            and self.domain == other.domain
            and self.ambient_dim == other.ambient_dim
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.domain, self.ambient_dim, self.images))

    def __repr__(self):
        return f"PLMap(dim={self.domain.dim}, ambient={self.ambient_dim})"


class Ornament:
    """Exactly three PL maps into one R^m.  The defining no-common-point
    condition is decided by :func:`validate_ornament`."""

    __slots__ = ("components",)

    def __init__(self, components):
        components = tuple(components)
        if len(components) != 3:
            raise ValueError("an ornament has exactly three components")
        dims = {f.ambient_dim for f in components}
        if len(dims) != 1:
            raise DimensionMismatch(f"ambient dimensions differ: {sorted(dims)}")
        self.components = components

    @property
    def m(self):
        return self.components[0].ambient_dim

    def __eq__(self, other):
        return isinstance(other, Ornament) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"Ornament(m={self.m})"


def common_point_system(maps, facet_indices):
    """Equality rows for "all maps agree at a point of their facet", in
    stacked full barycentric coordinates.

    Returns ``(eq_rows, nvars, offsets)`` where ``offsets[i]`` is the column
    of the first barycentric coordinate of component ``i``.
    """
    m = maps[0].ambient_dim
    arities = [len(maps[i].domain.facets[facet_indices[i]]) for i in range(len(maps))]
    offsets = [0]
    for a in arities[:-1]:
        offsets.append(offsets[-1] + a)
    nvars = sum(arities)
    eq_rows = []
    for left in range(len(maps) - 1):
        right = left + 1
        pts_l = maps[left].facet_points(facet_indices[left])
        pts_r = maps[right].facet_points(facet_indices[right])
        for c in range(m):
            row = [Rat(0)] * nvars
            for a, p in enumerate(pts_l):
                row[offsets[left] + a] = p[c]
            for a, p in enumerate(pts_r):
                row[offsets[right] + a] = -p[c]
            eq_rows.append((row, Rat(0)))
    for i, arity in enumerate(arities):
        row = [Rat(0)] * nvars
        for a in range(arity):
            row[offsets[i] + a] = Rat(1)
        eq_rows.append((row, Rat(1)))
    return eq_rows, nvars, offsets


def _nonneg_rows(nvars):
    rows = []
    for i in range(nvars):
        row = [Rat(0)] * nvars
        row[i] = Rat(-1)
        rows.append((row, Rat(0)))
    return rows


def validate_ornament(o):
    """Decide the no-common-point condition exactly, over closed facets.

    For every facet triple (one facet per component) the existence of points
    x, y, z in the closed facets with equal images is a linear feasibility
    problem; the ornament is valid iff every triple is infeasible.  The first
    feasible triple found is returned as a witness with exact barycentric
    coordinates of a common image point.
    """
    f1, f2, f3 = o.components
    boxes1 = [f1.facet_box(i) for i in range(len(f1.domain.facets))]
    boxes2 = [f2.facet_box(i) for i in range(len(f2.domain.facets))]
    boxes3 = [f3.facet_box(i) for i in range(len(f3.domain.facets))]
    for i1, b1 in enumerate(boxes1):
        for i2, b2 in enumerate(boxes2):
            b12 = box_intersection(b1, b2)
            if b12 is None:
                continue
            for i3, b3 in enumerate(boxes3):
                if box_intersection(b12, b3) is None:
                    continue
                eq_rows, nvars, offsets = common_point_system(
                    o.components, (i1, i2, i3)
                )
                point = feasible_point(eq_rows, _nonneg_rows(nvars), nvars)
                if point is not None:
                    splits = [point[offsets[0]:offsets[1]],
                              point[offsets[1]:offsets[2]],
                              point[offsets[2]:]]
                    return _invalid({
                        "facets": [i1, i2, i3],
                        "barycentric": [[str(c) for c in s] for s in splits],
                    })
    return _valid()


def perturb_ornament(o, eps, seed):
    """Jitter every vertex image while provably staying in the same ornament
    class.

    The candidate is re-validated and the straight-line homotopy from the
    input to the candidate is certified free of triple points by the sweep
    detector; on any failure eps is halved and the attempt reseeded, which
    terminates because small enough perturbations of a valid ornament always
    pass both checks.
    """
    from . import sweep  # deferred: sweep imports this module

    eps = Rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    for attempt in range(64):
        e = eps / 2 ** attempt
        components = []
        for ci, f in enumerate(o.components):
            images = [
                random_rational_perturbation(
                    img, e, derive_seed(seed, attempt, ci, vi)
                )
                for vi, img in enumerate(f.images)
            ]
            components.append(PLMap(f.domain, f.ambient_dim, images))
        candidate = Ornament(components)
        if not validate_ornament(candidate).ok:
            continue
        track = sweep.linear_track(o, candidate)
        try:
            points = sweep.detect_triple_points(track)
        except sweep.NonGenericTrack:
            continue
        if points:
            continue
        return candidate
    raise RuntimeError("perturbation failed to settle; is the input valid?")
