"""Coefficient matrices of powers of a Laurent polynomial and their p-adic limits.

For interior lattice points ``u, v`` of the Newton polytope, ``beta(n)[u, v]``
is the coefficient of ``x^((n+1)v - u)`` in ``poly**n``; ``alpha(s)`` is
``beta(p**s - 1)``.  Quotients ``alpha(s) @ alpha(s-1)^-1`` converge
p-adically when ``alpha(1)`` is invertible mod p, and the limit's
characteristic polynomial is the unit-root part of Frobenius.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .laurent import LaurentPoly, power
from .linalg import LabeledMatrix, NonUnitDeterminant, charpoly, matrix_inverse
from .padic import digits, is_prime, reduce
from .polytope import interior_points, newton_polytope
from .report import Report


class EmptyInterior(ValueError):
    """The Newton polytope has no interior lattice points."""


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StienstraContext:
    """A Laurent polynomial over Z together with a prime and its index set J.

    The coefficient ring is Z, whose only Frobenius lift is the identity;
    :meth:`phi` is kept as the single place where a nontrivial lift would act.
    """

    poly: LaurentPoly
    prime: int
    labels: tuple[tuple[int, ...], ...]
    frobenius: str = "identity"
    _alpha_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def h(self) -> int:
        return len(self.labels)

    def phi(self, M: LabeledMatrix, times: int = 1) -> LabeledMatrix:
        return M


def make_context(poly: LaurentPoly, p: int) -> StienstraContext:
    if poly.modulus is not None:
        raise ValueError("the context polynomial must have integer coefficients")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if poly.is_zero():
        raise EmptyInterior("zero polynomial")
    J = interior_points(newton_polytope(poly))
    if not J:
        raise EmptyInterior("the Newton polytope has no interior lattice points")
    return StienstraContext(poly, p, tuple(J))


def beta_targets(labels, n: int) -> list[tuple[int, ...]]:
    return [
        tuple((n + 1) * vi - ui for ui, vi in zip(u, v)) for u in labels for v in labels
    ]


def coefficient_matrix(poly, labels, n, scale, prime=None, precision=None) -> LabeledMatrix:
    """Matrix of coefficients of ``x^(scale*v - u)`` in ``poly**n``."""
    targets = {
        (u, v): tuple(scale * vi - ui for ui, vi in zip(u, v)) for u in labels for v in labels
    }
    P = power(poly, n, targets.values())
    rows = [[P.coefficient(targets[u, v]) for v in labels] for u in labels]
    return LabeledMatrix(labels, rows, prime, precision)


def beta(ctx: StienstraContext, n: int, precision: int | None = None) -> LabeledMatrix:
    """``beta_n`` over Z, or mod ``p**precision`` when a precision is given."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if precision is None:
        return coefficient_matrix(ctx.poly, ctx.labels, n, n + 1)
    poly = ctx.poly.reduce(ctx.prime, precision)
    return coefficient_matrix(poly, ctx.labels, n, n + 1, ctx.prime, precision)


def alpha(ctx: StienstraContext, s: int, k: int) -> LabeledMatrix:
    """``alpha_s = beta_{p^s - 1}`` modulo ``p**k``."""
    if s < 0 or k < 1:
        raise ValueError("need s >= 0 and k >= 1")
    cached = ctx._alpha_cache.get(s)
    if cached is not None and cached.precision >= k:
        return cached.reduce(ctx.prime, k)
    A = beta(ctx, ctx.prime**s - 1, k)
    ctx._alpha_cache[s] = A
    return A


def alpha_sequence(ctx: StienstraContext, s_max: int, k: int) -> list[LabeledMatrix]:
    return [alpha(ctx, s, k) for s in range(s_max + 1)]


def is_ordinary(ctx: StienstraContext) -> bool:
    return alpha(ctx, 1, 1).det() % ctx.prime != 0


def _require_ordinary(ctx: StienstraContext) -> None:
    if not is_ordinary(ctx):
        raise NonUnitDeterminant(f"non-ordinary at p={ctx.prime}: det(alpha_1) = 0 mod p")


def check_theorem1_i(ctx: StienstraContext, s_max: int) -> Report:
    """``alpha_s == alpha_1 * phi(alpha_1) * ... * phi^(s-1)(alpha_1)`` mod p."""
    rep = Report("alpha_s vs product of Frobenius twists of alpha_1, mod p")
    a1 = alpha(ctx, 1, 1)
    rhs = a1
    for s in range(1, s_max + 1):
        if s > 1:
            rhs = rhs @ ctx.phi(a1, s - 1)
        lhs = alpha(ctx, s, 1)
        rep.add(f"alpha_s == alpha_1^s s={s}", lhs == rhs, s=s, modulus=f"{ctx.prime}")
    return rep


def check_theorem1_ii(ctx: StienstraContext, s_max: int) -> Report:
    """Successive quotients agree mod ``p**s`` for ``1 <= s < s_max``, both sides."""
    _require_ordinary(ctx)
    p = ctx.prime
    rep = Report("successive alpha quotients, mod p^s")
    for s in range(1, s_max):
        a_next, a_s, a_prev = (alpha(ctx, t, s) for t in (s + 1, s, s - 1))
        inv_s = matrix_inverse(ctx.phi(a_s))
        inv_prev = matrix_inverse(ctx.phi(a_prev))
        right = (a_next @ inv_s) == (a_s @ inv_prev)
        left = (inv_s @ a_next) == (inv_prev @ a_s)
        rep.add(f"right quotients agree s={s}", right, s=s, modulus=f"{p}^{s}")
        rep.add(f"left quotients agree s={s}", left, s=s, modulus=f"{p}^{s}")
    return rep


def check_det_power(ctx: StienstraContext, s_max: int) -> Report:
    """``det(alpha_s) == det(alpha_1)^s`` mod p."""
    rep = Report("det(alpha_s) vs det(alpha_1)^s, mod p")
    p = ctx.prime
    d1 = alpha(ctx, 1, 1).det()
    for s in range(1, s_max + 1):
        ds = alpha(ctx, s, 1).det()
        rep.add(f"det_power s={s}", ds % p == pow(d1, s, p), s=s)
    return rep


@dataclass(frozen=True)
class LimitMatrix:
    side: str
    matrix: LabeledMatrix

    @property
    def prime(self) -> int:
        return self.matrix.prime

    @property
    def precision(self) -> int:
        return self.matrix.precision

    def charpoly(self) -> list[int]:
        return charpoly(self.matrix)

    def trace_digits(self):
        return digits(reduce(self.matrix.trace(), self.prime, self.precision))

    def det_digits(self):
        return digits(reduce(self.matrix.det(), self.prime, self.precision))


def limit_quotient(a_k: LabeledMatrix, a_prev: LabeledMatrix, side: str) -> LabeledMatrix:
    inv = matrix_inverse(a_prev)
    if side == "right":
        return a_k @ inv
    if side == "left":
        return inv @ a_k
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def limit_alpha(
    ctx: StienstraContext, k: int, side: str = "right", guard: int = 0
) -> LimitMatrix:
    """The limit matrix modulo ``p**k``.

    Computed as ``alpha_k @ alpha_{k-1}^-1`` (or the left quotient) with all
    arithmetic mod ``p**k``; the successive quotients are already stable at
    that precision.  ``guard`` extra digits may be computed and discarded as
    a cross-check.
    """
    _require_ordinary(ctx)
    K = k + guard
    M = limit_quotient(alpha(ctx, K, K), ctx.phi(alpha(ctx, K - 1, K)), side)
    return LimitMatrix(side, M.reduce(ctx.prime, k))


def unit_root_charpoly(ctx: StienstraContext, k: int) -> list[int]:
    """Characteristic polynomial of the limit matrix mod ``p**k``, highest degree first."""
    return limit_alpha(ctx, k, "right").charpoly()


def cartier_matrix(F: LaurentPoly, p: int) -> LabeledMatrix:
    """``alpha_1`` mod p for a homogeneous polynomial: the Cartier operator's matrix."""
    degrees = F.total_degrees()
    if len(degrees) != 1:
        raise NotHomogeneous(f"total degrees {sorted(degrees)}")
    ctx = make_context(F, p)
    return alpha(ctx, 1, 1)


def formal_group_log_coeffs(ctx: StienstraContext, M: int) -> list[LabeledMatrix]:
    """Matrices ``beta_{m-1} / m`` for ``m = 1..M`` with exact rational entries."""
    if M < 1:
        raise ValueError("M must be positive")
    out = []
    for m in range(1, M + 1):
        b = beta(ctx, m - 1)
        rows = [[_simplify(Fraction(x, m)) for x in r] for r in b.rows]
        out.append(LabeledMatrix(b.labels, rows))
    return out


def _simplify(x: Fraction):
    return x.numerator if x.denominator == 1 else x
