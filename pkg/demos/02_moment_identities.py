"""
Exact moments and class numbers
===============================

Power sums of the 2F1 values (or of the traces when 3 does not divide
q - 1) equal weighted sums of Hurwitz class numbers.  Both sides are exact
integers or rationals, so they are compared with ==.
"""

from hessian_hgf.moments import (
    estimate_R,
    f21_moment_classnum,
    f21_moment_direct,
    trace_moment_classnum,
    trace_moment_direct,
)

# q = 1 mod 3: (-1)^m T(q, m) against 3 - a(0)^m + 12 sum H*((4q - s^2)/9) s^m
for q in (7, 13, 19):
    for m in range(1, 5):
        T, _ = f21_moment_direct(q, m)
        rhs = f21_moment_classnum(q, m)
        print(f"q={q:>2} m={m}  (-1)^m T = {(-1) ** m * T:>7}  class side = {rhs}")

# with a constant term of 1 instead of the three cube roots of unity, the sides differ by 2
T, _ = f21_moment_direct(13, 2)
print("constant 1 instead of 3:", T - f21_moment_classnum(13, 2, printed_constant=True))

# q = 2 mod 3: traces against sum over s = q+1 mod 3 of H*(4q - s^2) s^m
for q in (5, 11):
    print(q, [trace_moment_direct(q, m) == trace_moment_classnum(q, m) for m in range(1, 9)])

# q = p^2 adds a supersingular term; R is solved from m = 2 and checked at m = 4
R = estimate_R(25, normalization="trace")
print("R(25) =", R, [trace_moment_classnum(25, m, R, "trace") == trace_moment_direct(25, m) for m in range(1, 7)])
try:
    estimate_R(25)
except ArithmeticError as exc:
    print("printed normalisation:", exc)
