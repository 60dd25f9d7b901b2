"""Double covers ``W^2 = G``: delta matrices, central binomials and ASD checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .laurent import LaurentPoly
from .linalg import LabeledMatrix, NonUnitDeterminant, poly_eval_matrix
from .padic import is_prime, valuation
from .polytope import interior_points, newton_polytope
from .report import Report
from .stienstra import (
    EmptyInterior,
    LimitMatrix,
    NotHomogeneous,
    coefficient_matrix,
    limit_quotient,
)


class NotDoubleCover(ValueError):
    """Interior points of ``Newt(W^2 - G)`` do not all have W-exponent 1."""


@dataclass(frozen=True)
class DoubleCoverInput:
    G: LaurentPoly
    poly: LaurentPoly
    w_index: int
    labels: tuple[tuple[int, ...], ...]

    @property
    def h(self) -> int:
        return len(self.labels)


def _insert(e, i, x):
    return e[:i] + (x,) + e[i:]


def make_double_cover(
    G: LaurentPoly, w_index: int = 0, w_name: str = "W", homogeneous: bool = True
) -> DoubleCoverInput:
    """Build ``poly = W^2 - G`` and the index set J of u-parts.

    With ``homogeneous`` (the default) G must be homogeneous of degree 2d
    with ``d`` larger than the number of variables minus one.
    """
    if G.modulus is not None:
        raise ValueError("G must have integer coefficients")
    if homogeneous:
        degrees = G.total_degrees()
        if len(degrees) != 1:
            raise NotHomogeneous(f"total degrees {sorted(degrees)}")
        (deg,) = degrees
        if deg % 2 or deg // 2 <= G.nvars - 1:
            raise ValueError(f"need degree 2d with d > {G.nvars - 1}, got {deg}")
    variables = G.variables[:w_index] + (w_name,) + G.variables[w_index:]
    terms = {_insert(e, w_index, 0): -c for e, c in G.terms.items()}
    w2 = _insert((0,) * G.nvars, w_index, 2)
    terms[w2] = terms.get(w2, 0) + 1
    poly = LaurentPoly(terms, variables)
    full = interior_points(newton_polytope(poly))
    if not full:
        raise EmptyInterior("no interior lattice points")
    stray = [e for e in full if e[w_index] != 1]
    if stray:
        raise NotDoubleCover(f"interior points with W-exponent != 1: {stray}")
    labels = tuple(sorted(e[:w_index] + e[w_index + 1 :] for e in full))
    return DoubleCoverInput(G, poly, w_index, labels)


def split_double_cover(poly: LaurentPoly, w_index: int) -> DoubleCoverInput:
    """Recover G from ``poly = W^2 - G`` where W is variable ``w_index``."""
    if poly.modulus is not None:
        raise ValueError("poly must have integer coefficients")
    w2 = _insert((0,) * (poly.nvars - 1), w_index, 2)
    G_terms = {}
    for e, c in poly.terms.items():
        if e == w2:
            if c != 1:
                raise NotDoubleCover(f"coefficient of W^2 is {c}, expected 1")
            continue
        if e[w_index] != 0:
            raise NotDoubleCover(f"W appears in the term with exponent {e}")
        G_terms[e[:w_index] + e[w_index + 1 :]] = -c
    if w2 not in poly.terms:
        raise NotDoubleCover("no W^2 term")
    variables = poly.variables[:w_index] + poly.variables[w_index + 1 :]
    G = LaurentPoly(G_terms, variables)
    homogeneous = len(G.total_degrees()) == 1
    return make_double_cover(G, w_index, poly.variables[w_index], homogeneous=homogeneous)


def delta(
    dc: DoubleCoverInput, n: int, prime: int | None = None, precision: int | None = None
) -> LabeledMatrix:
    """Coefficients of ``X^((n+1)v - u)`` in ``G^(n/2)``; the zero matrix for odd n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n % 2:
        return LabeledMatrix.zero(dc.labels, prime, precision)
    G = dc.G if precision is None else dc.G.reduce(prime, precision)
    return coefficient_matrix(G, dc.labels, n // 2, n + 1, prime, precision)


def b(n: int) -> int:
    """Signed central binomial: 0 for odd n, ``(-1)^(n/2) C(n, n/2)`` for even n."""
    if n % 2:
        return 0
    return (-1) ** (n // 2) * math.comb(n, n // 2)


def b_ratio_check(p: int, s_max: int) -> Report:
    if p == 2 or not is_prime(p):
        raise ValueError("b_ratio_check needs an odd prime")
    rep = Report("central binomial ratios")

    def ratio(s, k):
        M = p**k
        return b(p**s - 1) * pow(b(p ** (s - 1) - 1), -1, M) % M

    for s in range(1, s_max + 1):
        rep.add(f"b ratio == 1 mod {p}^{s}", ratio(s, s) == 1, s=s)
        rep.add(
            f"b ratio stable mod {p}^{s}",
            ratio(s + 1, s) == ratio(s, s),
            s=s,
        )
    return rep


def limit_via_delta(dc: DoubleCoverInput, p: int, k: int, side: str = "right") -> LimitMatrix:
    """``delta_{p^k - 1} @ delta_{p^(k-1) - 1}^-1`` modulo ``p**k``."""
    if delta(dc, p - 1, p, 1).det() % p == 0:
        raise NonUnitDeterminant(f"non-ordinary at p={p}: det(delta_(p-1)) = 0 mod p")
    top = delta(dc, p**k - 1, p, k)
    prev = delta(dc, p ** (k - 1) - 1, p, k)
    return LimitMatrix(side, limit_quotient(top, prev, side))


@dataclass(frozen=True)
class FrobeniusPolyInput:
    """``1 + a_1 T + ... + a_k T^k``, the reciprocal Frobenius characteristic polynomial."""

    prime: int
    coefficients: tuple[int, ...]  # a_1, ..., a_k
    h: int | None = None

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("need at least one coefficient a_1")

    @classmethod
    def parse(cls, text: str, p: int, h: int | None = None) -> FrobeniusPolyInput:
        """From a constant-first list such as ``"1,3,18,33,121"``."""
        cs = [int(x) for x in text.replace(" ", "").split(",") if x]
        if not cs or cs[0] != 1:
            raise ValueError("the constant coefficient must be 1")
        return cls(p, tuple(cs[1:]), h)

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def annihilator(self) -> list[int]:
        """``[1, a_1, ..., a_k]``: the monic polynomial ``T^k + a_1 T^(k-1) + ... + a_k``."""
        return [1, *self.coefficients]


def asd_check(dc: DoubleCoverInput, frob: FrobeniusPolyInput, n: int) -> Report:
    """``delta_{n-1} + a_1 delta_{n/p-1} + ... + a_k delta_{n/p^k-1} == 0`` mod ``p^(nu-h+1)``.

    Terms whose index ``n/p^i`` is not an integer are dropped.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = frob.prime
    h = dc.h
    nu = valuation(n, p)
    rep = Report("Atkin-Swinnerton-Dyer congruence")
    if nu < h:
        rep.add(f"asd n={n}", None, n=n, nu=nu, reason=f"nu < h={h}")
        return rep
    e = nu - h + 1
    acc = delta(dc, n - 1, p, e)
    for i, a in enumerate(frob.coefficients, start=1):
        if n % p**i:
            continue
        acc = acc + delta(dc, n // p**i - 1, p, e).scale(a)
    rep.add(f"asd n={n}", acc.is_zero(), n=n, nu=nu, modulus=f"{p}^{e}")
    return rep


def corollary_check(alpha: LimitMatrix, frob: FrobeniusPolyInput) -> Report:
    """The limit matrix is annihilated by ``T^k + a_1 T^(k-1) + ... + a_k``."""
    rep = Report("limit matrix annihilated by the Frobenius polynomial")
    value = poly_eval_matrix(frob.annihilator(), alpha.matrix)
    rep.add(
        "frobenius polynomial annihilates the limit",
        value.is_zero(),
        modulus=f"{alpha.prime}^{alpha.precision}",
    )
    return rep
