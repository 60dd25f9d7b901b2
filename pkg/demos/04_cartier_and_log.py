"""Cartier matrices of plane curves and formal group logarithm coefficients."""

# %%
from unitroot import interior_points, make_context, newton_polytope, parse
from unitroot.stienstra import cartier_matrix, formal_group_log_coeffs, is_ordinary

# The Fermat cubic is ordinary exactly at primes p = 1 mod 3.
F = parse("X^3 + Y^3 + Z^3", ["X", "Y", "Z"])
for p in (5, 7, 11, 13):
    print(p, cartier_matrix(F, p).rows)

# %%
# A plane quartic has three holomorphic differentials, so J has 3 points.
Q = parse("X^4 + Y^4 + Z^4 + X^2*Y*Z - 3*X*Y^3", ["X", "Y", "Z"])
print(interior_points(newton_polytope(Q)))
for p in (3, 5, 7):
    print(p, "ordinary" if is_ordinary(make_context(Q, p)) else "not ordinary")

# %%
# beta_(m-1) / m: the logarithm of the formal group, with exact fractions
ctx = make_context(parse("y^2 - x^3 - x - 1", ["x", "y"]), 5)
for m, M in enumerate(formal_group_log_coeffs(ctx, 6), start=1):
    print(m, M.rows[0][0])
