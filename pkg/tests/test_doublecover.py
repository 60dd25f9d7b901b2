import math

import pytest

from conftest import FROBPOLY_11
from oracles import count_points_quartic, count_points_quartic_fp2, hensel_unit_root
from unitroot.doublecover import (
    FrobeniusPolyInput,
    NotDoubleCover,
    asd_check,
    b,
    b_ratio_check,
    corollary_check,
    delta,
    limit_via_delta,
    make_double_cover,
    split_double_cover,
)
from unitroot.laurent import parse
from unitroot.linalg import LabeledMatrix, poly_eval_matrix
from unitroot.stienstra import NotHomogeneous, beta, limit_alpha, make_context

# y^2 = g(x), g lowest coefficient first
QUARTIC = (1, 1, -1, 2, 1)
QUARTIC_TEXT = "y^2 - x^4 - 2*x^3 + x^2 - x - 1"


def a_p(p):
    return p + 1 - count_points_quartic(QUARTIC, p)


@pytest.fixture(scope="module")
def hyper_dc(hyper):
    return split_double_cover(hyper, 1)


@pytest.fixture(scope="module")
def elliptic_dc():
    return split_double_cover(parse(QUARTIC_TEXT, ["x", "y"]), 1)


def test_b_values():
    assert [b(n) for n in range(7)] == [1, 0, -2, 0, 6, 0, -20]
    assert b(1330) == -math.comb(1330, 665)


def test_b_ratio():
    for p in (3, 5, 11):
        assert b_ratio_check(p, 3).passed
    assert b(2) * pow(b(0), -1, 3) % 3 == 1
    with pytest.raises(ValueError):
        b_ratio_check(2, 2)


def test_split_recovers_G(hyper_dc):
    assert hyper_dc.labels == ((1,), (2,))
    assert hyper_dc.G == parse("x^5 + 2*x^2 + x + 1", ["x"])
    assert hyper_dc.h == 2


def test_delta_examples(hyper_dc):
    assert delta(hyper_dc, 0) == LabeledMatrix.identity(hyper_dc.labels)
    assert delta(hyper_dc, 3).is_zero()
    assert delta(hyper_dc, 7, 11, 2).is_zero()


def test_beta_equals_b_delta(hyper_ctx, hyper_dc):
    for n in range(0, 23):
        lhs = beta(hyper_ctx, n)
        rhs = delta(hyper_dc, n).scale(b(n))
        assert lhs.rows == rhs.rows, n


def test_limit_via_delta_hyperelliptic(hyper_ctx, hyper_dc):
    lim = limit_via_delta(hyper_dc, 11, 3)
    assert lim.trace_digits().digits == (8, 1, 1)
    assert lim.det_digits().digits == (7, 6, 3)
    assert lim.matrix.rows == limit_alpha(hyper_ctx, 3).matrix.rows
    assert limit_via_delta(hyper_dc, 11, 1).matrix.rows == delta(hyper_dc, 10, 11, 1).rows


def test_homogeneous_quartic_matches_alpha_pipeline():
    G = parse("X^4 + X^3*Z - X^2*Z^2 + 2*X*Z^3 + Z^4", ["X", "Z"])
    dc = make_double_cover(G)
    assert dc.labels == ((1, 1),)
    ctx = make_context(dc.poly, 3)
    for k in (1, 2):
        assert limit_via_delta(dc, 3, k).matrix.rows == limit_alpha(ctx, k).matrix.rows


def test_generic_dimension():
    G = parse("X^6 + Y^6 + Z^6 + X^2*Y^2*Z^2 + X*Y^5", ["X", "Y", "Z"])
    dc = make_double_cover(G)
    assert dc.h == math.comb(2, 2)
    G8 = parse("X^8 + Y^8 + Z^8 - X^3*Y^3*Z^2", ["X", "Y", "Z"])
    assert make_double_cover(G8).h == math.comb(3, 2)


def test_make_double_cover_errors():
    with pytest.raises(NotHomogeneous):
        make_double_cover(parse("X^4 + Z", ["X", "Z"]))
    with pytest.raises(ValueError):
        make_double_cover(parse("X^2 + Z^2", ["X", "Z"]))
    # a stray interior point with W-exponent 0
    with pytest.raises(NotDoubleCover):
        split_double_cover(parse("y^2 - x^4*y^-2 - x^-4*y^-2 - y^-2", ["x", "y"]), 1)
    with pytest.raises(NotDoubleCover):
        split_double_cover(parse("y^2 - x*y - x^5 - 1", ["x", "y"]), 1)


def test_frobpoly_parse():
    f = FrobeniusPolyInput.parse(FROBPOLY_11, 11, 2)
    assert f.coefficients == (3, 18, 33, 121)
    assert f.annihilator() == [1, 3, 18, 33, 121]
    with pytest.raises(ValueError):
        FrobeniusPolyInput.parse("2,3", 11)


def test_frobenius_annihilates_limit_hyperelliptic(hyper_ctx):
    lim = limit_alpha(hyper_ctx, 3)
    assert corollary_check(lim, FrobeniusPolyInput.parse(FROBPOLY_11, 11, 2)).passed
    # the frobpoly splits as (1 + 4T + 11T^2)(1 - T + 11T^2)
    f, g = [1, 4, 11], [1, -1, 11]
    prod = [sum(f[i] * g[d - i] for i in range(3) if 0 <= d - i < 3) for d in range(5)]
    assert prod == [1, 3, 18, 33, 121]
    assert not corollary_check(lim, FrobeniusPolyInput(11, (3, 18, 33, 120))).passed


def test_point_count_oracle_consistency():
    for p in (5, 7, 11):
        ap = a_p(p)
        assert count_points_quartic_fp2(QUARTIC, p) == p * p + 1 - (ap * ap - 2 * p)


@pytest.mark.parametrize("p", [5, 7])
def test_elliptic_asd_and_unit_root(elliptic_dc, p):
    ap = a_p(p)
    assert ap % p != 0
    frob = FrobeniusPolyInput(p, (-ap, p), 1)
    for n in range(1, p**3 + 1):
        rep = asd_check(elliptic_dc, frob, n)
        if n % p:
            assert rep.checks[0].passed is None
        else:
            assert rep.passed, n
    lim = limit_via_delta(elliptic_dc, p, 3)
    assert lim.matrix.rows == ((hensel_unit_root(ap, p, 3),),)
    assert corollary_check(lim, frob).passed
    ctx = make_context(elliptic_dc.poly, p)
    assert limit_alpha(ctx, 3).charpoly() == [1, -hensel_unit_root(ap, p, 3) % p**3]


def test_asd_hyperelliptic(hyper_dc):
    frob = FrobeniusPolyInput.parse(FROBPOLY_11, 11, 2)
    assert asd_check(hyper_dc, frob, 121).passed
    assert asd_check(hyper_dc, frob, 11).checks[0].passed is None


def test_asd_composite_cofactor(elliptic_dc):
    ap = a_p(5)
    frob = FrobeniusPolyInput(5, (-ap, 5), 1)
    for n in (10, 15, 50, 75, 150):
        assert asd_check(elliptic_dc, frob, n).passed
    wrong = FrobeniusPolyInput(5, (-ap + 1, 5), 1)
    assert not asd_check(elliptic_dc, wrong, 5).passed


def test_poly_eval_matches_direct():
    A = LabeledMatrix(((0,), (1,)), [[2, 1], [3, 4]], 5, 2)
    direct = A @ A @ A + (A @ A).scale(2) + LabeledMatrix.identity(A.labels, 5, 2).scale(7)
    assert poly_eval_matrix([1, 2, 0, 7], A) == direct
