"""The genus 2 curve y^2 = x^5 + 2x^2 + x + 1 at p = 11.

Walks from the polynomial to its interior points, the first coefficient
matrix, and the 11-adic limit whose eigenvalues are the unit roots of
Frobenius.
"""

# %%
from unitroot import (
    FrobeniusPolyInput,
    alpha,
    beta,
    corollary_check,
    interior_points,
    limit_alpha,
    make_context,
    newton_polytope,
    parse,
)

L = parse("y^2 - x^5 - 2*x^2 - x - 1", ["x", "y"])
P = newton_polytope(L)
print("vertices of the Newton polygon:", P.vertices)
print("interior points:", interior_points(P))

# %%
# beta_10 over the integers: coefficients of x^(11v - u) in L^10
ctx = make_context(L, 11)
print(beta(ctx, 10))

# %%
# alpha_s = beta_(11^s - 1).  Successive quotients settle digit by digit.
for k in (1, 2, 3):
    lim = limit_alpha(ctx, k)
    print(f"k={k}  trace {lim.trace_digits()}   det {lim.det_digits()}")

# %%
# Mod 11^3 the quotient alpha_3 alpha_2^-1 is annihilated by the reversed
# Frobenius polynomial 1 + 3T + 18T^2 + 33T^3 + 121T^4.
lim = limit_alpha(ctx, 3)
frob = FrobeniusPolyInput.parse("1,3,18,33,121", 11, ctx.h)
print("\n".join(corollary_check(lim, frob).lines()))

# %%
# The charpoly's roots mod 11^3 are the two unit eigenvalues.
cp = lim.charpoly()
roots = [x for x in range(11**3) if (x * x + cp[1] * x + cp[2]) % 11**3 == 0]
print("unit roots mod 11^3:", roots)
print("alpha_2 mod 11^2:", alpha(ctx, 2, 2).rows)
