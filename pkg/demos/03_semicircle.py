"""
Semicircle law
==============

Scaled moments of the 2F1 values approach the Catalan numbers, and the
normalised values n(lam)/sqrt(q) fill out the density sqrt(4 - t^2)/(2 pi).
"""

import numpy as np

from hessian_hgf.moments import catalan, distribution, f21_moment_direct

for q in (1009, 4003, 10009):
    scaled = [f21_moment_direct(q, m)[1] for m in range(1, 7)]
    print(q, " ".join(f"{s:7.4f}" for s in scaled))
print("targets", [catalan(m // 2) if m % 2 == 0 else 0 for m in range(1, 7)])

d = distribution(10009, bins=20)
print(f"\nKS distance at q = 10009: {d.ks:.4f}")

# text histogram against the expected bin masses
expected = np.diff(np.concatenate([[0.0], d.scdf])) * len(d.values)
for (lo, hi, count, _, _), e in zip(d.rows(), expected):
    bar = "#" * int(count / 20)
    print(f"[{lo:5.2f},{hi:5.2f})  {count:5d} {e:7.1f}  {bar}")

for q in (1009, 4003):
    print(q, "KS", round(distribution(q).ks, 4))
