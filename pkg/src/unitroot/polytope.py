"""Newton polytopes in exact arithmetic and their interior lattice points."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[int, ...]


def _rref(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _nullspace(rows: list[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of ``{c : row . c = 0 for every row}``."""
    red, pivots = _rref([[Fraction(x) for x in r] for r in rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(_primitive(v))
    return basis


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many integer points.

    ``equations`` are pairs ``(c, c0)`` with ``c . x == c0`` on the affine
    hull; ``facets`` are pairs ``(a, b)`` with ``a . x <= b``, each a facet
    of the polytope inside its affine hull.  All data is integral.
    """

    ambient_dim: int
    dim: int
    vertices: tuple[Point, ...]
    equations: tuple[tuple[Point, int], ...]
    facets: tuple[tuple[Point, int], ...]

    def contains(self, x: Sequence[int], strict: bool = False) -> bool:
        if any(_dot(c, x) != c0 for c, c0 in self.equations):
            return False
        if strict:
            return all(_dot(a, x) < b for a, b in self.facets)
        return all(_dot(a, x) <= b for a, b in self.facets)

    def bounding_box(self) -> tuple[Point, Point]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        return lo, hi

    def lattice_points(self, strict: bool = False) -> list[Point]:
        lo, hi = self.bounding_box()
        ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
        return [x for x in itertools.product(*ranges) if self.contains(x, strict)]


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    N = len(pts[0])
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    _, pivots = _rref([[Fraction(x) for x in d] for d in diffs], N)
    r = len(pivots)
    equations = tuple((c, _dot(c, base)) for c in _nullspace(diffs, N)) if diffs else tuple(
        (tuple(int(i == j) for j in range(N)), base[i]) for i in range(N)
    )
    # the affine hull projects bijectively onto the pivot coordinates
    proj = sorted({tuple(p[c] for c in pivots) for p in pts})
    facets_r = _full_dim_facets(proj, r)
    facets = []
    for a, b in facets_r:
        full = [0] * N
        for c, x in zip(pivots, a):
            full[c] = x
        facets.append((tuple(full), b))
    facets.sort()
    vertices = tuple(p for p in pts if _is_vertex(p, facets, r))
    return LatticePolytope(N, r, vertices, equations, tuple(facets))


def _full_dim_facets(pts: list[Point], r: int) -> list[tuple[Point, int]]:
    if r == 0:
        return []
    if r == 1:
        xs = [p[0] for p in pts]
        return [((1,), max(xs)), ((-1,), -min(xs))]
    found = set()
    for combo in itertools.combinations(pts, r):
        q0 = combo[0]
        span = [[a - b for a, b in zip(q, q0)] for q in combo[1:]]
        ns = _nullspace(span, r)
        if len(ns) != 1:
            continue
        a = ns[0]
        b = _dot(a, q0)
        vals = [_dot(a, p) - b for p in pts]
        if all(v <= 0 for v in vals):
            found.add((a, b))
        elif all(v >= 0 for v in vals):
            found.add((tuple(-x for x in a), -b))
    return sorted(found)


def _is_vertex(p: Point, facets, r: int) -> bool:
    if r == 0:
        return True
    tight = [a for a, b in facets if _dot(a, p) == b]
    if len(tight) < r:
        return False
    return len(_rref([[Fraction(x) for x in a] for a in tight], len(p))[1]) == r


def newton_polytope(poly) -> LatticePolytope:
    """Convex hull of the support of a nonzero Laurent polynomial."""
    support = poly.support()
    if not support:
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(support)


def interior_points(P: LatticePolytope) -> list[Point]:
    """Lattice points of the relative interior, in lexicographic order.

    A polytope reduced to a single point is treated as having no interior
    points.
    """
    if P.dim == 0:
        return []
    return P.lattice_points(strict=True)


def dilation_contains(P: LatticePolytope, m: int, e: Sequence[int]) -> bool:
    """Whether ``e`` lies in ``m * P``; ``0 * P`` is the origin."""
    if m == 0:
        return all(x == 0 for x in e)
    if any(_dot(c, e) != m * c0 for c, c0 in P.equations):
        return False
    return all(_dot(a, e) <= m * b for a, b in P.facets)


@dataclass(frozen=True)
class AffineChart:
    """Coordinates on the affine hulls of the dilates ``m * P``.

    Keeping only the ``pivots`` coordinates is injective on each of these
    hulls; :meth:`lift` recovers the dropped coordinates.
    """

    base: Point
    pivots: tuple[int, ...]
    rows: tuple[tuple[Fraction, ...], ...]  # RREF basis of the direction space

    def project(self, e: Sequence[int]) -> Point:
        return tuple(e[c] for c in self.pivots)

    def lift(self, e: Sequence[int], m: int) -> Point:
        shift = [x - m * self.base[c] for x, c in zip(e, self.pivots)]
        out = []
        for j, b in enumerate(self.base):
            x = m * b + sum(s * row[j] for s, row in zip(shift, self.rows))
            if Fraction(x).denominator != 1:
                raise ValueError(f"{e} does not lift to a lattice point")
            out.append(int(x))
        return tuple(out)


def affine_chart(points: Iterable[Sequence[int]]) -> AffineChart:
    pts = sorted({tuple(int(c) for c in p) for p in points})
    base = pts[0]
    N = len(base)
    diffs = [[Fraction(a - b) for a, b in zip(p, base)] for p in pts[1:]]
    rows, pivots = _rref(diffs, N) if diffs else ([], [])
    return AffineChart(base, tuple(pivots), tuple(tuple(r) for r in rows))
