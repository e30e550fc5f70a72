"""
Hypergeometric values and Hessian traces
========================================

Over F_13 we evaluate n(lam) = q * 2F1(lam)_q from character sums and
compare it with the Frobenius trace of x^3 + y^3 + 1 = lam*x*y obtained by
counting points.  The two computations share nothing but the field.
"""

from hessian_hgf.charsum import CycloContext, hess_2f1_all
from hessian_hgf.ffield import make_field
from hessian_hgf.hessian import trace_all

ft = make_field(13)
print("F_13 with generator", ft.g)

# characters live in Z/ell, ell = 1 mod 12; zeta is a primitive 12th root of unity
ctx = CycloContext(ft)
print(ctx)

n = hess_2f1_all(ctx)       # one value per field element
traces = trace_all(ft)      # singular lam (lam^3 = 27) are left out

print(f"{'lam':>4} {'3/lam':>6} {'n(3/lam)':>9} {'a(lam)':>7}")
for lam, a in traces.items():
    if lam == 0:
        continue
    arg = ft.div(ft.from_int(3), lam)
    print(f"{lam:>4} {arg:>6} {int(n[arg]):>9} {a:>7}")

# n(3/lam) = -a(lam) on every row
assert all(n[ft.div(ft.from_int(3), lam)] == -a for lam, a in traces.items() if lam)

# n only sees lam^3, and n(1) = -1
print("n at the cube roots of unity:", [int(n[w]) for w in (1, 3, 9)])
