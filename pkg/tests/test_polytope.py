import itertools
import math
import random

import pytest

from conftest import random_laurent
from oracles import in_hull, relative_interior_points
from unitroot.laurent import LaurentPoly, parse
from unitroot.polytope import (
    convex_hull,
    dilation_contains,
    interior_points,
    newton_polytope,
)


def degree_monomials(d, nvars):
    return [e for e in itertools.product(range(d + 1), repeat=nvars) if sum(e) == d]


def generic_homogeneous(d, nvars, seed=0):
    rng = random.Random(seed)
    names = [f"X{i}" for i in range(nvars)]
    return LaurentPoly({e: rng.randint(1, 5) for e in degree_monomials(d, nvars)}, names)


def test_triangle(hyper):
    P = newton_polytope(hyper)
    assert P.dim == 2
    assert set(P.vertices) == {(0, 0), (5, 0), (0, 2)}
    support = hyper.support()
    # brute-force extreme-point test: not a convex combination of the others
    extreme = {s for s in support if not in_hull(s, [t for t in support if t != s])}
    assert extreme == set(P.vertices)
    assert interior_points(P) == [(1, 1), (2, 1)]
    assert interior_points(P) == relative_interior_points(support)


def test_point_and_segment():
    P = newton_polytope(parse("3*x^2*y", ["x", "y"]))
    assert P.dim == 0 and P.vertices == ((2, 1),)
    assert interior_points(P) == []
    S = convex_hull([(0,), (1,), (2,)])
    assert S.dim == 1 and S.vertices == ((0,), (2,))
    assert interior_points(S) == [(1,)]
    # a segment inside the plane
    T = convex_hull([(0, 0), (3, 3)])
    assert interior_points(T) == [(1, 1), (2, 2)]


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        newton_polytope(LaurentPoly({}, ["x"]))


def test_simplex_vertices():
    F = generic_homogeneous(4, 3)
    P = newton_polytope(F)
    assert P.dim == 2
    assert set(P.vertices) == {(4, 0, 0), (0, 4, 0), (0, 0, 4)}
    J = interior_points(P)
    assert J == sorted(u for u in degree_monomials(4, 3) if min(u) >= 1)


@pytest.mark.parametrize("d,N", [(3, 2), (4, 2), (4, 3), (5, 2)])
def test_interior_count_binomial(d, N):
    J = interior_points(newton_polytope(generic_homogeneous(d, N + 1)))
    assert len(J) == math.comb(d - 1, N)
    assert all(min(u) >= 1 and sum(u) == d for u in J)


def test_random_polytopes_vs_oracle():
    rng = random.Random(4)
    for _ in range(25):
        N = rng.randint(1, 3)
        poly = random_laurent(rng, N, 6, -2, 2)
        pts = poly.support()
        assert interior_points(newton_polytope(poly)) == relative_interior_points(pts)


def test_lower_dimensional_in_space():
    pts = [(0, 0, 0), (2, 2, 0), (0, 2, 2), (2, 0, 2)]  # a tetrahedron
    assert interior_points(convex_hull(pts)) == relative_interior_points(pts)
    flat = [(0, 0, 1), (4, 0, 1), (0, 4, 1)]
    assert interior_points(convex_hull(flat)) == relative_interior_points(flat)


@pytest.mark.parametrize("d,N", [(2, 1), (3, 1)])
def test_double_cover_interior_points_oracle(d, N):
    G = generic_homogeneous(2 * d, N + 1)
    pts = [(0, *e) for e in G.support()] + [(2,) + (0,) * (N + 1)]
    J = sorted(u for u in degree_monomials(d, N + 1) if min(u) >= 1)
    assert interior_points(convex_hull(pts)) == [(1, *u) for u in J]
    assert relative_interior_points(pts) == [(1, *u) for u in J]


def test_double_cover_interior_points_larger():
    d, N = 3, 2
    G = generic_homogeneous(2 * d, N + 1)
    pts = [(0, *e) for e in G.support()] + [(2,) + (0,) * (N + 1)]
    J = sorted(u for u in degree_monomials(d, N + 1) if min(u) >= 1)
    assert interior_points(convex_hull(pts)) == [(1, *u) for u in J]


def test_dilation_contains(hyper):
    P = newton_polytope(hyper)
    assert dilation_contains(P, 1, (1, 1))
    assert not dilation_contains(P, 1, (6, 0))
    assert dilation_contains(P, 2, (10, 0))
    assert not dilation_contains(P, 2, (10, 1))
    assert dilation_contains(P, 0, (0, 0))
    assert not dilation_contains(P, 0, (1, 0))
    # off the affine hull
    Q = convex_hull([(0, 0, 1), (4, 0, 1), (0, 4, 1)])
    assert dilation_contains(Q, 2, (1, 1, 2))
    assert not dilation_contains(Q, 2, (1, 1, 1))
