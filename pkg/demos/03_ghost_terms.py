"""Digit blocks, I-polynomials and ghost terms for a small Laurent polynomial.

Every identity below is checked over the integers, not modulo anything.
"""

# %%
from unitroot.ghost import (
    GhostSession,
    check_gamma,
    check_ghost_suite,
    digit_tuples,
    expansion,
    ghost_R,
    is_indecomposable,
)
from unitroot.laurent import parse
from unitroot.stienstra import make_context

L = parse("x*y + 2*x^-1 - y^-1 + 3", ["x", "y"])
p = 3
S = GhostSession(L, p)

# %%
# I_p = L^p - phi(L): the only proper splitting of the digits (0, 1)
print(S.i_poly(p) == L**p - L.map_exponents(lambda e: tuple(p * x for x in e)))
print("digits of 22 in base 3:", expansion(22, p))
print("I_22 divisible by 3^2:", S.i_poly(22).divisible_by(9))

# %%
# ghost terms R_s(L) = L^(p^s) - phi(L)^(p^(s-1)) are divisible by p^s
for s in range(4):
    R = ghost_R(L, s, p)
    print(s, len(R.terms), "terms, divisible by", p**s, R.divisible_by(p**s))

# %%
print("indecomposable tuples of length 3:", [m for m in digit_tuples(3) if is_indecomposable(m)])

# %%
report = check_ghost_suite(L, p, p**3)
report.extend(check_gamma(make_context(L, p), 3))
print(f"{len(report.checks)} checks, all passed: {report.passed}")
