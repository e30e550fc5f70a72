"""
Counting curves two ways
========================

Every short Weierstrass curve over F_13 is enumerated, sorted into
isomorphism classes and tagged with its trace and 3-torsion.  Schoof's
theorem predicts those counts from Hurwitz class numbers.
"""

from collections import Counter

from hessian_hgf.classnum import hurwitz_H, hurwitz_Hstar, reduced_primitive_forms, schoof_count
from hessian_hgf.ffield import make_field
from hessian_hgf.hessian import census, iso_fingerprint_partition

print("forms of discriminant -23:", reduced_primitive_forms(23))
print("H(3), H*(3), H*(0):", hurwitz_H(3), hurwitz_Hstar(3), hurwitz_Hstar(0))

ft = make_field(13)
cen = census(ft)
print(len(cen.classes), "classes,", cen.singular_pairs, "singular (a, b)")

by_trace = Counter(c.trace for c in cen.classes)
for s in sorted(by_trace):
    # s = 0 over a prime field is supersingular and outside the theorem's cases
    h = schoof_count(13, s) if s else "-"
    line = f"s={s:>3}  classes={by_trace[s]:>2}  H={h}"
    if (14 - s) % 9 == 0:
        line += f"  full 3-torsion={cen.count(s, 9)}  H((52-s^2)/9)={schoof_count(13, s, 3)}"
    print(line)

# Hessian parameters grouped by isomorphism class: blocks of 12, 6 or 4
blocks = iso_fingerprint_partition(ft, exact=True)
print("block sizes over F_13:", sorted(len(b) for b in blocks.values()))
blocks5 = iso_fingerprint_partition(make_field(5), exact=True)
print("block sizes over F_5:", sorted(len(b) for b in blocks5.values()))
