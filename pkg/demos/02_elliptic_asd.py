"""Atkin-Swinnerton-Dyer congruences on y^2 = x^4 + 2x^3 - x^2 + x + 1.

Here h = 1, so the limit is a single p-adic number: the unit root of
T^2 - a_p T + p.  a_p comes from counting points by brute force.
"""

# %%
from unitroot import FrobeniusPolyInput, asd_check, delta, limit_via_delta, parse, split_double_cover


def count_points(g, p):
    """Points on the smooth model of y^2 = g(x), g lowest coefficient first."""
    chi = lambda a: 0 if a % p == 0 else (1 if pow(a, (p - 1) // 2, p) == 1 else -1)  # noqa: E731
    affine = sum(1 + chi(sum(c * x**i for i, c in enumerate(g))) for x in range(p))
    return affine + 1 + chi(g[-1])


g = (1, 1, -1, 2, 1)
dc = split_double_cover(parse("y^2 - x^4 - 2*x^3 + x^2 - x - 1", ["x", "y"]), 1)
print("G =", dc.G, "  J =", dc.labels)

# %%
for p in (5, 7, 11, 13):
    ap = p + 1 - count_points(g, p)
    frob = FrobeniusPolyInput(p, (-ap, p), dc.h)
    lim = limit_via_delta(dc, p, 3)
    unit = lim.matrix.rows[0][0]
    residual = (unit * unit - ap * unit + p) % p**3
    ok = all(asd_check(dc, frob, n).passed for n in range(p, p**3 + 1, p))
    print(f"p={p:2d}  a_p={ap:3d}  unit root {lim.matrix.entry((1,), (1,)):5d}  "
          f"u^2 - a_p u + p = {residual} mod p^3  ASD up to p^3: {ok}")

# %%
# The first few delta_n: central coefficients of G^(n/2).
print([delta(dc, n).rows[0][0] for n in range(0, 12, 2)])
