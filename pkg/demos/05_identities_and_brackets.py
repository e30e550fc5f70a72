"""
Binomial identities and coefficient assemblies
==============================================

The combinatorial lemmas behind the asymptotics hold exactly in Q and
Q*sqrt(pi).  The assembled bracket coefficients at m = 4q grow more slowly
than q^(nu+1).
"""

from fractions import Fraction

from hessian_hgf.combin import (
    FormalQSeries,
    kappa,
    kappa_closed,
    lemma_binomsum_lhs,
    lemma_binomsum_rhs,
    rc_bracket,
)
from hessian_hgf.moments import BracketCoefficientSeries, admissible_primes, growth_check

print([lemma_binomsum_lhs(5, k) for k in range(6)])
print([lemma_binomsum_rhs(5, k) for k in range(6)])
print("kappa(3/2, 3/2, 3) =", kappa(Fraction(3, 2), Fraction(3, 2), 3), "closed form", kappa_closed(3))

# first bracket of E4 and E6: weight 12, a multiple of Delta
E4 = FormalQSeries(4, [1, 240, 2160, 6720, 17520, 30240])
E6 = FormalQSeries(6, [1, -504, -16632, -122976, -532728, -1575504])
br = rc_bracket(E4, E6, 1)
print("[E4, E6]_1 =", br.coeffs, "weight", br.weight)

qs = admissible_primes(7, 997)
for nu in (1, 2):
    rep = growth_check(BracketCoefficientSeries.at_4q(nu, qs))
    print(f"nu={nu}: ratio at q=7 {rep.ratios[0]:.4f}, at q=997 {rep.ratios[-1]:.4f}")
