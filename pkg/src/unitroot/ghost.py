"""Ghost terms, the I-polynomial recursion over base-p digit blocks, and checks.

Everything here works over the exact integers, so divisibility statements
are tested on true integer coefficients.  This module is a verification
oracle; the production pipeline in :mod:`unitroot.stienstra` never calls it.

Digit blocks are tuples of base-p digits, least significant first.  Blocks
may end in zeros (the block ``(0,)`` has length 1 even though its value is
0); the empty block stands for ``n = 0`` and ``I`` of it is 1.
"""

from __future__ import annotations

import itertools

from .laurent import LaurentPoly, frobenius_substitute, mul
from .linalg import LabeledMatrix
from .polytope import dilation_contains, newton_polytope
from .report import Report

Block = tuple[int, ...]


def expansion(n: int, p: int) -> Block:
    """Base-p digits of ``n``, least significant first; empty for 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return tuple(out)


def length(n: int, p: int) -> int:
    return len(expansion(n, p))


def block_value(block: Block, p: int) -> int:
    return sum(d * p**i for i, d in enumerate(block))


def concat(n1: int, n2: int, p: int) -> int:
    """The integer whose digits are those of ``n1`` followed by those of ``n2``."""
    return n1 + p ** length(n1, p) * n2


def splittings(block: Block, min_parts: int = 1):
    """All ways to cut ``block`` into consecutive nonempty blocks."""
    L = len(block)
    if L == 0:
        yield [()]
        return
    for r in range(min_parts, L + 1):
        for cuts in itertools.combinations(range(1, L), r - 1):
            bounds = (0, *cuts, L)
            yield [block[a:b] for a, b in zip(bounds, bounds[1:])]


def is_digit_tuple(m) -> bool:
    return all(0 <= x <= i for i, x in enumerate(m))


def digit_tuples(L: int):
    """All ``m`` of length ``L`` with ``0 <= m_i <= i``."""
    return itertools.product(*(range(i + 1) for i in range(L)))


def is_indecomposable(m) -> bool:
    m = tuple(m)
    if not is_digit_tuple(m):
        raise ValueError(f"{m} is not a digit tuple")
    return not any(is_digit_tuple(m[j:]) for j in range(1, len(m)))


def ghost_R(gamma: LaurentPoly, s: int, p: int) -> LaurentPoly:
    """``gamma^(p^s) - phi(gamma)^(p^(s-1))``, and ``gamma`` itself for ``s = 0``."""
    if s == 0:
        return gamma
    return gamma ** (p**s) - frobenius_substitute(gamma, p) ** (p ** (s - 1))


class GhostSession:
    """Memoized I-polynomials and powers for one ``(poly, p)`` pair."""

    def __init__(self, poly: LaurentPoly, p: int):
        if poly.modulus is not None:
            raise ValueError("ghost computations need integer coefficients")
        self.poly = poly
        self.p = p
        self._powers = {0: poly.one(), 1: poly}
        self._i = {(): poly.one()}

    def phi(self, f: LaurentPoly, times: int) -> LaurentPoly:
        return frobenius_substitute(f, self.p, times) if times else f

    def pow(self, a: int) -> LaurentPoly:
        if a not in self._powers:
            half = self.pow(a // 2)
            sq = mul(half, half)
            self._powers[a] = mul(sq, self.poly) if a % 2 else sq
        return self._powers[a]

    def i_block(self, block: Block) -> LaurentPoly:
        block = tuple(block)
        if block not in self._i:
            # group the splittings by their first part; the remaining parts
            # reassemble to a plain power of poly
            acc = self.pow(block_value(block, self.p))
            for j in range(1, len(block)):
                rest = self.pow(block_value(block[j:], self.p))
                acc = acc - mul(self.i_block(block[:j]), self.phi(rest, j))
            self._i[block] = acc
        return self._i[block]

    def i_poly(self, n: int) -> LaurentPoly:
        return self.i_block(expansion(n, self.p))

    def reassemble(self, block: Block) -> LaurentPoly:
        """Right-hand side of the defining relation, summed over all splittings."""
        total = self.poly._like({})
        for parts in splittings(block):
            term = self.poly.one()
            shift = 0
            for b in parts:
                term = mul(term, self.phi(self.i_block(b), shift))
                shift += len(b)
            total = total + term
        return total

    def r_m_block(self, block: Block, m) -> LaurentPoly:
        """``prod_i R_{m_i}(phi^(i - m_i)(poly^(digit_i)))`` over the block's digits."""
        m = tuple(m)
        if len(m) != len(block):
            raise ValueError(f"tuple length {len(m)} != block length {len(block)}")
        if not is_digit_tuple(m):
            raise ValueError(f"{m} is not a digit tuple")
        out = self.poly.one()
        for i, (d, mi) in enumerate(zip(block, m)):
            out = mul(out, ghost_R(self.phi(self.pow(d), i - mi), mi, self.p))
        return out

    def r_m_product(self, n: int, m) -> LaurentPoly:
        return self.r_m_block(expansion(n, self.p), m)

    def j_block(self, block: Block) -> LaurentPoly:
        """Sum of ``R_m`` over indecomposable tuples of the block's length."""
        total = self.poly._like({})
        for m in digit_tuples(len(block)):
            if is_indecomposable(m):
                total = total + self.r_m_block(block, m)
        return total

    def j_poly(self, n: int) -> LaurentPoly:
        if n == 0:
            return self.poly.one()
        return self.j_block(expansion(n, self.p))


def i_poly(poly: LaurentPoly, n: int, p: int) -> LaurentPoly:
    return GhostSession(poly, p).i_poly(n)


def r_m_product(poly: LaurentPoly, n: int, m, p: int) -> LaurentPoly:
    return GhostSession(poly, p).r_m_product(n, m)


def _newt_contained(f: LaurentPoly, P, n: int) -> bool:
    return all(dilation_contains(P, n, e) for e in f.support())


def check_lemma_A(poly: LaurentPoly, p: int, n_max: int, session=None) -> Report:
    """Newton polytope containment and p-divisibility of ``I_n`` for ``n <= n_max``."""
    S = session or GhostSession(poly, p)
    P = newton_polytope(poly)
    rep = Report("I-polynomial lemma")
    for n in range(n_max + 1):
        I = S.i_poly(n)
        need = max(length(n, p) - 1, 0)
        rep.add(f"newt(I_{n}) in {n}*newt", _newt_contained(I, P, n), n=n)
        rep.add(f"p^{need} | I_{n}", I.divisible_by(p**need), n=n)
    return rep


def check_ghost_suite(poly: LaurentPoly, p: int, n_max: int, s_max: int = 3) -> Report:
    """Every identity and congruence about ghost terms and I-polynomials.

    Covers the defining relation, the lemma on ``I_n``, the digit-tuple
    expansion of ``poly^n``, ``J_n == I_n``, the ghost decomposition of
    ``poly^(p^s)`` and the vanishing of ``R_m`` on blocks ending in 0.
    """
    S = GhostSession(poly, p)
    P = newton_polytope(poly)
    rep = Report("ghost terms and I-polynomials")
    for n in range(n_max + 1):
        block = expansion(n, p)
        rep.add(f"reassembly n={n}", S.reassemble(block) == S.pow(n), n=n)
    rep.extend(check_lemma_A(poly, p, n_max, S))
    for n in range(1, n_max + 1):
        L = length(n, p)
        total = poly._like({})
        ok_div = True
        for m in digit_tuples(L):
            R = S.r_m_product(n, m)
            ok_div &= R.divisible_by(p ** sum(m)) and _newt_contained(R, P, n)
            total = total + R
        rep.add(f"sum_m R_m(n) == poly^n n={n}", total == S.pow(n), n=n)
        rep.add(f"R_m(n) divisibility and support n={n}", ok_div, n=n)
        rep.add(f"J_n == I_n n={n}", S.j_poly(n) == S.i_poly(n), n=n)
    for s in range(s_max + 1):
        decomposition = poly._like({})
        for i in range(s + 1):
            decomposition = decomposition + ghost_R(S.phi(poly, s - i), i, p)
        Rs = ghost_R(poly, s, p)
        rep.add(f"ghost decomposition s={s}", decomposition == S.pow(p**s), s=s)
        rep.add(f"p^{s} | R_{s}", Rs.divisible_by(p**s), s=s)
        rep.add(f"newt(R_{s}) in p^{s}*newt", _newt_contained(Rs, P, p**s), s=s)
    rep.extend(check_indecomposable_bound(max(length(n_max, p), 1)))
    rep.extend(check_zero_ending_blocks(poly, p, min(length(n_max, p), 3)))
    return rep


def check_indecomposable_bound(max_len: int) -> Report:
    """``|m| >= len(m) - 1`` for every indecomposable tuple up to ``max_len``."""
    rep = Report("indecomposable tuples")
    for L in range(1, max_len + 1):
        ok = all(sum(m) >= L - 1 for m in digit_tuples(L) if is_indecomposable(m))
        rep.add(f"|m| >= {L - 1} for length {L}", ok, length=L)
    return rep


def check_zero_ending_blocks(poly: LaurentPoly, p: int, max_len: int) -> Report:
    """``R_m`` vanishes on a block of length > 1 ending in 0 when m is indecomposable."""
    S = GhostSession(poly, p)
    rep = Report("blocks ending in a zero digit")
    for L in range(2, max_len + 1):
        ok = True
        for head in itertools.product(range(p), repeat=L - 1):
            block = head + (0,)
            for m in digit_tuples(L):
                if is_indecomposable(m):
                    ok &= S.r_m_block(block, m).is_zero()
        rep.add(f"R_m(block)=0 for length {L}", ok, length=L)
    return rep


def gamma(ctx, s: int, k: int, alphas=None) -> LabeledMatrix:
    """``gamma_s`` mod ``p**k`` from the alpha matrices.

    Inverts ``alpha_s = sum_j gamma_j phi^j(alpha_{s-j})`` (sum over ``j = 1..s``),
    which is the ordered-partition expansion grouped by its first part.
    """
    from .stienstra import alpha

    if alphas is None:
        alphas = [alpha(ctx, t, k) for t in range(s + 1)]
    gammas = [LabeledMatrix.identity(ctx.labels, ctx.prime, k)]
    for t in range(1, s + 1):
        g = alphas[t]
        for j in range(1, t):
            g = g - gammas[j] @ ctx.phi(alphas[t - j], j)
        gammas.append(g)
    return gammas[s]


def gamma_from_i_poly(ctx, s: int, session: GhostSession | None = None) -> LabeledMatrix:
    """``gamma_s`` over Z read off ``I_{p^s - 1}`` at ``x^(p^s v - u)``."""
    S = session or GhostSession(ctx.poly, ctx.prime)
    if s == 0:
        return LabeledMatrix.identity(ctx.labels)
    q = ctx.prime**s
    I = S.i_poly(q - 1)
    rows = [
        [I.coefficient(tuple(q * vi - ui for ui, vi in zip(u, v))) for v in ctx.labels]
        for u in ctx.labels
    ]
    return LabeledMatrix(ctx.labels, rows)


def check_gamma(ctx, s_max: int, closed_form_max: int = 2) -> Report:
    """``p^(s-1) | gamma_s`` and agreement of both constructions of gamma."""
    p = ctx.prime
    rep = Report("gamma transform")
    k = max(s_max, 1)
    S = GhostSession(ctx.poly, p)
    for s in range(1, s_max + 1):
        g = gamma(ctx, s, k)
        rep.add(f"p^{s - 1} | gamma_{s}", g.divisible_by(p ** (s - 1)), s=s)
        if s <= closed_form_max:
            exact = gamma_from_i_poly(ctx, s, S).reduce(p, k)
            rep.add(f"gamma_{s} recursion == I-polynomial form", exact == g, s=s)
    return rep
