"""Exact rational linear algebra and geometric predicates.

Every scalar in this library is an arbitrary-precision rational, so the
predicates built on top (determinant sign, simplex membership, linear
feasibility) are decided exactly rather than within a tolerance.  "Generic
position" questions downstream thereby become decidable: a configuration is
degenerate if and only if some matrix here is exactly singular or some
solution lands exactly on a face.

Square systems are solved by fraction-free Bareiss elimination on integer
matrices obtained by clearing denominators one row at a time; intermediate
entries stay minor-sized.  Linear feasibility of mixed equality/inequality
systems is decided by Gaussian elimination of the equalities followed by
Fourier-Motzkin elimination of the survivors, with exact sample-point
extraction for witnesses.
"""

from __future__ import annotations

import math
import random
import re

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

#: Default bound on the denominator factor introduced by seeded perturbations.
DEFAULT_DENOMINATOR_LIMIT = 2 ** 16


class DimensionMismatch(ValueError):
    """Shapes of the operands are incompatible."""


def rat(numerator, denominator=1):
    """Build an exact rational (reduced, positive denominator)."""
    return Rat(numerator, denominator)


_RATIONAL_FORMAT = re.compile(r"[+-]?[0-9]+(/[0-9]+)?\Z")


def parse_rational(text):
    """Parse a rational literal "p" or "p/q" with q > 0.

    Anything else (floats, whitespace, zero denominators) raises ValueError.
    """
    if not isinstance(text, str) or _RATIONAL_FORMAT.match(text) is None:
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in rational literal: {text!r}")
        return Rat(int(p), int(q))
    return Rat(int(text))


def format_rational(value):
    """Canonical text form: reduced "p/q" with q > 1, else plain "p"."""
    return str(Rat(value))


def derive_seed(*parts):
    """Deterministically mix seed components (ints or short strings) into one
    64-bit seed.  Used everywhere a child generator is split off a parent
    seed, so the whole artifact's randomness is a pure function of the
    top-level seed."""
    h = 0x9E3779B97F4A7C15
    for part in parts:
        if isinstance(part, str):
            part = int.from_bytes(part.encode("utf8"), "big")
        h ^= part & 0xFFFFFFFFFFFFFFFF
        h = (h * 0x5851F42D4C957F2D + 0x14057B7EF767814F) & 0xFFFFFFFFFFFFFFFF
        h ^= h >> 29
    return h


class Vector:
    """Fixed-length tuple of exact rationals; length is checked on every
    binary operation."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Rat(c) for c in coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index):
        return self.coords[index]

    def __eq__(self, other):
        return isinstance(other, Vector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Vector(%s)" % ", ".join(str(c) for c in self.coords)

    def _require_same_length(self, other):
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch(
                f"vector lengths differ: {len(self.coords)} vs {len(other.coords)}"
            )

    def __add__(self, other):
        self._require_same_length(other)
        return Vector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._require_same_length(other)
        return Vector(a - b for a, b in zip(self.coords, other.coords))

    def __rmul__(self, scalar):
        return Vector(Rat(scalar) * c for c in self.coords)

    def __neg__(self):
        return Vector(-c for c in self.coords)

    def dot(self, other):
        self._require_same_length(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Rat(0))

    def is_zero(self):
        return all(c == 0 for c in self.coords)


class Matrix:
    """Rectangular array of exact rationals, row-major."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = tuple(tuple(Rat(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(row) != self.ncols for row in self.rows):
            raise DimensionMismatch("ragged rows in matrix")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def is_square(self):
        return self.nrows == self.ncols

    def transpose(self):
        return Matrix(zip(*self.rows)) if self.rows else Matrix([])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = other.transpose().rows
        return Matrix(
            [[sum((a * b for a, b in zip(row, col)), Rat(0)) for col in cols]
             for row in self.rows]
        )

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[list(map(str, row)) for row in self.rows]})"


def _cleared_rows(rows, rhs=None):
    """Scale each row by a positive integer so all entries become integers.

    Row scaling by positive constants changes neither the solution set nor
    any determinant sign.
    """
    out = []
    for i, row in enumerate(rows):
        entries = list(row) + ([rhs[i]] if rhs is not None else [])
        scale = 1
        for x in entries:
            scale = math.lcm(scale, x.denominator)
        out.append([x.numerator * (scale // x.denominator) for x in entries])
    return out


def _eliminate_integer(aug, n, width):
    """In-place fraction-free forward elimination on integer rows.

    Returns the determinant sign of the leading n x n block (0 when
    singular); on a nonzero return the block is upper triangular with the
    successive Bareiss pivots on the diagonal.
    """
    sign = 1
    prev = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
            sign = -sign
        pivot = aug[col][col]
        prow = aug[col]
        tail = prow[col + 1:]
        for r in range(col + 1, n):
            row = aug[r]
            lead = row[col]
            if lead:
                if prev == 1:
                    row[col + 1:] = [
                        pivot * rc - lead * pc for rc, pc in zip(row[col + 1:], tail)
                    ]
                else:
                    row[col + 1:] = [
                        (pivot * rc - lead * pc) // prev
                        for rc, pc in zip(row[col + 1:], tail)
                    ]
            else:
                if prev == 1:
                    row[col + 1:] = [pivot * rc for rc in row[col + 1:]]
                else:
                    row[col + 1:] = [pivot * rc // prev for rc in row[col + 1:]]
            row[col] = 0
        prev = pivot
    return sign if aug[n - 1][n - 1] > 0 else -sign


def solve_integer(rows, rhs=None):
    """Exact solve of a square integer system by Bareiss elimination.

    Returns ``(sign, solution)`` with the determinant sign in {-1, 0, +1}
    and a rational solution list (``None`` when singular or no ``rhs``).
    The rows are consumed.
    """
    n = len(rows)
    if n == 0:
        return 1, [] if rhs is not None else None
    if rhs is None:
        aug = rows
        width = n
    else:
        aug = [row + [b] for row, b in zip(rows, rhs)]
        width = n + 1
    sign = _eliminate_integer(aug, n, width)
    if sign == 0 or rhs is None:
        return sign, None
    solution = [Rat(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Rat(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * solution[j]
        solution[i] = acc / aug[i][i]
    return sign, solution


def bareiss_solve(rows, rhs=None):
    """Fraction-free elimination on a square rational system.

    Returns ``(sign, solution)`` where ``sign`` is the exact determinant
    sign in {-1, 0, +1} and ``solution`` is a list of rationals solving
    ``rows @ x = rhs`` (``None`` when the matrix is singular or no ``rhs``
    was given).
    """
    if not rows:
        return 1, [] if rhs is not None else None
    aug = _cleared_rows(rows, rhs)
    if rhs is None:
        return solve_integer(aug)
    return solve_integer([row[:-1] for row in aug], [row[-1] for row in aug])


def integer_scaled(coords):
    """``(scale, ints)`` with a positive integer ``scale`` such that
    ``scale * coords`` is integral; scaling a matrix column or a right-hand
    side this way preserves determinant signs and is undone on solutions."""
    scale = 1
    for c in coords:
        scale = math.lcm(scale, c.denominator)
    return scale, [c.numerator * (scale // c.denominator) for c in coords]


def det_sign(m):
    """Exact sign of the determinant of a square matrix: -1, 0 or +1."""
    if not m.is_square():
        raise DimensionMismatch(f"determinant of {m.nrows}x{m.ncols} matrix")
    sign, _ = bareiss_solve(m.rows)
    return sign


def solve_affine(a, b):
    """Exact solution of ``a @ x = b`` for square ``a``.

    Returns the unique solution Vector when ``a`` is nonsingular, otherwise
    ``None``; never approximates.
    """
    if not a.is_square():
        raise DimensionMismatch(f"solve with {a.nrows}x{a.ncols} matrix")
    if a.nrows != len(b):
        raise DimensionMismatch(
            f"matrix is {a.nrows}x{a.ncols} but right-hand side has length {len(b)}"
        )
    sign, solution = bareiss_solve(a.rows, list(b))
    if sign == 0:
        return None
    return Vector(solution)


def barycentric_position(coords):
    """Classify barycentric coordinates summing to 1 as "interior",
    "boundary" or "outside" of their simplex."""
    coords = [Rat(c) for c in coords]
    if sum(coords, Rat(0)) != 1:
        raise ValueError("barycentric coordinates must sum to 1")
    if all(c > 0 for c in coords):
        return "interior"
    if all(c >= 0 for c in coords):
        return "boundary"
    return "outside"


def random_rational_perturbation(v, eps, seed,
                                 denominator_limit=DEFAULT_DENOMINATOR_LIMIT):
    """Deterministic rational jitter of every coordinate of ``v``.

    Each coordinate moves by ``eps * j / denominator_limit`` with an integer
    ``|j| < denominator_limit`` drawn from the seeded generator, so the
    sup-distance to ``v`` is strictly below ``eps`` and the denominator
    factor introduced beyond that of ``eps`` is at most the configured
    limit.  Identical arguments give identical output.
    """
    eps = Rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if denominator_limit < 2:
        raise ValueError("denominator_limit must be at least 2")
    rng = random.Random(seed)
    span = 2 * denominator_limit - 1
    deltas = []
    for _ in range(len(v)):
        j = rng.getrandbits(64) % span - (denominator_limit - 1)
        deltas.append(eps * Rat(j, denominator_limit))
    return Vector(c + d for c, d in zip(v, deltas))


# ---------------------------------------------------------------------------
# Linear feasibility with exact witness extraction.
# ---------------------------------------------------------------------------

def feasible_point(eq_rows, le_rows, nvars):
    """Decide a system of linear equalities and inequalities exactly.

    ``eq_rows`` is a list of ``(coeffs, rhs)`` meaning ``coeffs . x == rhs``
    and ``le_rows`` the same with ``<=``.  Returns a satisfying point as a
    list of rationals, or ``None`` when the system is infeasible.

    Equalities are removed first by Gaussian elimination; the projected
    inequality system is then decided by Fourier-Motzkin elimination, whose
    stages are replayed backwards to produce a concrete solution.
    """
    rows = [[Rat(c) for c in coeffs] + [Rat(rhs)] for coeffs, rhs in eq_rows]
    pivot_cols = []
    rank = 0
    for col in range(nvars):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivot_cols.append(col)
        rank += 1
        if rank == len(rows):
            break
    for i in range(rank, len(rows)):
        if rows[i][nvars] != 0:
            return None  # 0 == nonzero
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(nvars) if c not in pivot_set]
    nfree = len(free_cols)

    # Substitute x_pivot = rows[i][-1] - sum_f rows[i][f] * y_f into each
    # inequality, leaving a system purely over the free variables y.
    ineqs = []
    for coeffs, rhs in le_rows:
        coeffs = [Rat(c) for c in coeffs]
        const = Rat(rhs)
        acc = [Rat(0)] * nfree
        for jf, f in enumerate(free_cols):
            acc[jf] = coeffs[f]
        for i, p in enumerate(pivot_cols):
            cp = coeffs[p]
            if cp != 0:
                const -= cp * rows[i][nvars]
                for jf, f in enumerate(free_cols):
                    acc[jf] -= cp * rows[i][f]
        ineqs.append((acc, const))

    stages = []
    system = ineqs
    for j in range(nfree):
        stages.append(system)
        uppers, lowers, passthrough = [], [], []
        for a, b in system:
            c = a[j]
            if c > 0:
                uppers.append(([x / c for x in a], b / c))
            elif c < 0:
                lowers.append(([x / -c for x in a], b / -c))
            else:
                passthrough.append((a, b))
        nxt = list(passthrough)
        for al, bl in lowers:
            for au, bu in uppers:
                nxt.append(([x + y for x, y in zip(al, au)], bl + bu))
        system = nxt
    for a, b in system:
        if b < 0:
            return None
    # Replay the stages backwards, fixing one free variable at a time.
    y = [Rat(0)] * nfree
    for j in range(nfree - 1, -1, -1):
        lo = hi = None
        for a, b in stages[j]:
            c = a[j]
            if c == 0:
                continue
            val = (b - sum((a[jj] * y[jj] for jj in range(j + 1, nfree)), Rat(0))) / c
            if c > 0:
                hi = val if hi is None else min(hi, val)
            else:
                lo = val if lo is None else max(lo, val)
        if lo is None and hi is None:
            y[j] = Rat(0)
        elif lo is None:
            y[j] = hi - 1
        elif hi is None:
            y[j] = lo + 1
        else:
            y[j] = (lo + hi) / 2
    x = [Rat(0)] * nvars
    for jf, f in enumerate(free_cols):
        x[f] = y[jf]
    for i, p in enumerate(pivot_cols):
        x[p] = rows[i][nvars] - sum(
            (rows[i][f] * y[jf] for jf, f in enumerate(free_cols)), Rat(0)
        )
    return x


# ---------------------------------------------------------------------------
# Exact bounding-box prefilters.
# ---------------------------------------------------------------------------

def bounding_box(points):
    """Componentwise (mins, maxs) over a nonempty iterable of point tuples."""
    it = iter(points)
    first = next(it)
    mins = list(first)
    maxs = list(first)
    for p in it:
        for i, c in enumerate(p):
            if c < mins[i]:
                mins[i] = c
            elif c > maxs[i]:
                maxs[i] = c
    return tuple(mins), tuple(maxs)


def box_intersection(a, b):
    """Intersection of two closed boxes, or ``None`` when empty."""
    mins = tuple(max(x, y) for x, y in zip(a[0], b[0]))
    maxs = tuple(min(x, y) for x, y in zip(a[1], b[1]))
    for lo, hi in zip(mins, maxs):
        if lo > hi:
            return None
    return mins, maxs


def boxes_overlap(*boxes):
    acc = boxes[0]
    for b in boxes[1:]:
        acc = box_intersection(acc, b)
        if acc is None:
            return False
    return True


def ray_meets_box(direction, box):
    """Exact test whether some ``s >= 0`` puts ``s * direction`` in the
    closed box.  Used as a conservative prefilter, so the closed version of
    the ray is intentional."""
    lo = Rat(0)
    hi = None  # +infinity
    for d, mn, mx in zip(direction, box[0], box[1]):
        if d == 0:
            if mn > 0 or mx < 0:
                return False
            continue
        a, b = mn / d, mx / d
        if a > b:
            a, b = b, a
        if a > lo:
            lo = a
        hi = b if hi is None else min(hi, b)
        if hi < lo:
            return False
    return True
