import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hessian_hgf.combin import (
    SQRT_PI,
    CoefficientSequence,
    FormalQSeries,
    SqrtPiScalar,
    classical_2f1_at_1,
    cohen_identity_sum,
    gamma_half,
    gamma_ratio,
    gen_binomial,
    kappa,
    kappa_closed,
    legendre_duplication,
    lemma_binomsum_hypergeometric,
    lemma_binomsum_lhs,
    lemma_binomsum_rhs,
    mertens_b,
    mertens_binomial_identity,
    p_poly,
    pochhammer,
    rational_power,
    rc_bracket,
)
from hessian_hgf.errors import (
    BadRange,
    PoleError,
    TruncationMismatch,
    UnsupportedArguments,
    UnsupportedExponent,
)

H = Fraction(1, 2)


def to_sympy(x: SqrtPiScalar):
    c = sympy.Rational(x.coeff.numerator, x.coeff.denominator)
    return c * sympy.sqrt(sympy.pi) ** x.tag


def R(f):
    return sympy.Rational(f.numerator, f.denominator)


def test_pochhammer_examples():
    assert pochhammer(H, 2) == Fraction(3, 4)
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(-3, 5) == 0


def test_pochhammer_against_sympy():
    for a in [Fraction(1, 2), Fraction(-5, 2), Fraction(2, 3), 4, -2]:
        for j in range(8):
            assert R(pochhammer(a, j)) == sympy.rf(R(Fraction(a)), j)


def test_gen_binomial_against_sympy():
    for x in [H, Fraction(5, 2), Fraction(-1, 2), Fraction(7, 3), 6]:
        for k in range(7):
            assert R(gen_binomial(x, k)) == sympy.binomial(R(Fraction(x)), k)


def test_gamma_half_examples():
    assert gamma_half(H) == SQRT_PI
    assert gamma_half(Fraction(5, 2)) == SqrtPiScalar(Fraction(3, 4), 1)
    assert gamma_half(Fraction(-1, 2)) == SqrtPiScalar(-2, 1)
    assert gamma_half(5) == 24
    with pytest.raises(PoleError):
        gamma_half(0)
    with pytest.raises(PoleError):
        gamma_half(-3)


def test_gamma_half_against_sympy():
    for k in range(-15, 41):
        z = Fraction(k, 2)
        if z.denominator == 1 and z <= 0:
            continue
        assert sympy.simplify(to_sympy(gamma_half(z)) - sympy.gamma(R(z))) == 0


def test_gamma_ratio():
    assert gamma_ratio(Fraction(7, 2), Fraction(3, 2)) == Fraction(15, 4)
    assert gamma_ratio(6, 3) == 60


def test_duplication():
    for k in range(1, 41):
        lhs, rhs = legendre_duplication(Fraction(k, 2))
        assert lhs == rhs


def test_sqrt_pi_algebra_guards():
    with pytest.raises(ArithmeticError):
        SQRT_PI * SQRT_PI
    with pytest.raises(ArithmeticError):
        SQRT_PI + 1
    assert float(SQRT_PI) == pytest.approx(math.sqrt(math.pi))
    assert SqrtPiScalar(0, 1) == 0


def test_2f1_examples():
    b, c = Fraction(3), Fraction(5)
    assert classical_2f1_at_1(-1, b, c) == 1 - b / c
    nu, k = 1, 0
    direct = sum(math.comb(2 * nu + 1, 2 * nu - 2 * mu + 1) * math.comb(nu - mu, k) for mu in range(nu + 1))
    val = classical_2f1_at_1(-nu - H, -nu + k, H, method="series")
    assert val * math.comb(nu, k) == direct


def test_2f1_paths_agree():
    for a in range(-6, 1):
        for b2 in range(-9, 10, 2):
            for c2 in range(1, 12, 2):
                b, c = Fraction(b2, 2), Fraction(c2, 2)
                if c - a - b <= 0:
                    continue
                assert classical_2f1_at_1(a, b, c, "series") == classical_2f1_at_1(a, b, c, "gauss")


def test_2f1_gauss_against_sympy():
    for a, b, c in [(H, 1, Fraction(5, 2)), (Fraction(-3, 2), 1, Fraction(5, 2)), (1, Fraction(1, 2), 3), (H, 2, Fraction(7, 2))]:
        got = classical_2f1_at_1(a, b, c, "gauss")
        a_, b_, c_ = (R(Fraction(t)) for t in (a, b, c))
        ref = sympy.gamma(c_) * sympy.gamma(c_ - a_ - b_) / (sympy.gamma(c_ - a_) * sympy.gamma(c_ - b_))
        assert sympy.simplify(to_sympy(got) - ref) == 0


def test_2f1_errors():
    with pytest.raises(UnsupportedArguments):
        classical_2f1_at_1(H, H, H, "series")
    with pytest.raises(UnsupportedArguments):
        classical_2f1_at_1(1, 1, 1, "gauss")
    with pytest.raises(UnsupportedArguments):
        classical_2f1_at_1(H, H, 2, "gauss")  # 4/pi


def test_binomsum_examples():
    assert lemma_binomsum_lhs(1, 0) == 4 == lemma_binomsum_rhs(1, 0)
    for nu in range(10):
        assert lemma_binomsum_lhs(nu, nu) == 1 == lemma_binomsum_rhs(nu, nu)
    assert lemma_binomsum_lhs(2, 1) == lemma_binomsum_rhs(2, 1)
    with pytest.raises(BadRange):
        lemma_binomsum_lhs(2, 3)


def test_binomsum_three_routes():
    for nu in range(41):
        for k in range(nu + 1):
            lhs = lemma_binomsum_lhs(nu, k)
            assert lhs == lemma_binomsum_rhs(nu, k)
            assert lemma_binomsum_hypergeometric(nu, k) == lhs


def test_kappa():
    assert kappa_closed(0) == SQRT_PI
    assert kappa(Fraction(3, 2), Fraction(3, 2), 0) == SQRT_PI
    for nu in range(41):
        assert kappa(Fraction(3, 2), Fraction(3, 2), nu) == kappa_closed(nu)
    with pytest.raises(PoleError):
        kappa(1, 3, 1)


def test_p_poly():
    for X, Y, b in [(2, 5, 3), (Fraction(1, 3), -4, H)]:
        assert p_poly(2, b, X, Y) == 1
        assert p_poly(3, 2, X, Y) == 2 * Fraction(X) + Y
    for t in (2, Fraction(-3, 5)):
        assert p_poly(6, Fraction(3, 2), t * 3, t * 7) == t**4 * p_poly(6, Fraction(3, 2), 3, 7)


def test_p_poly_against_sympy():
    X, Y = sympy.symbols("X Y")
    a, b = 5, Fraction(-1, 2)
    expr = sum(sympy.binomial(j + R(b) - 2, j) * X**j * (X + Y) ** (a - j - 2) for j in range(a - 1))
    assert R(p_poly(a, b, 3, 7)) == expr.subs({X: 3, Y: 7})


def test_rational_power():
    assert rational_power(9, Fraction(3, 2)) == 27
    assert rational_power(4, Fraction(-1, 2)) == H
    with pytest.raises(UnsupportedExponent):
        rational_power(5, H)


def test_mertens_b():
    empty = CoefficientSequence(1, ())
    ag = CoefficientSequence(1, (1, 1, 1, 1, 1))
    assert mertens_b(3, Fraction(3, 2), H, 0, empty, ag) == 0
    # single pair n = 1, m = 4: -Gamma(-1/2) (4^(1/2) - 1) = 2 sqrt(pi)
    cm = CoefficientSequence(1, (1,))
    ag4 = CoefficientSequence(4, (1,))
    assert mertens_b(3, Fraction(3, 2), H, 0, cm, ag4) == SqrtPiScalar(2, 1)
    ag8 = CoefficientSequence(4, (2,))
    assert mertens_b(3, Fraction(3, 2), H, 0, cm, ag8) == SqrtPiScalar(4, 1)


def test_cohen():
    assert cohen_identity_sum(1) == 0
    assert cohen_identity_sum(2) == 0
    assert all(cohen_identity_sum(n) == 0 for n in range(1, 51))


def test_mertens_binomial_identity():
    lhs, rhs = mertens_binomial_identity(2, 1)
    assert lhs == rhs
    for nu in range(21):
        for mu in range(nu + 1):
            lhs, rhs = mertens_binomial_identity(nu, mu)
            assert lhs == rhs


def series(weight, coeffs):
    return FormalQSeries(Fraction(weight), list(coeffs))


def test_bracket_nu0_is_product():
    f = series(4, [1, 240, 2160, 6720])
    g = series(6, [1, -504, -16632, -122976])
    out = rc_bracket(f, g, 0)
    prod = [sum(f.coeffs[i] * g.coeffs[n - i] for i in range(n + 1)) for n in range(4)]
    assert out.coeffs == prod
    assert out.weight == 10


def test_bracket_nu1_closed_form():
    f = series(4, [1, 240, 2160, 6720, 17520])
    g = series(6, [1, -504, -16632, -122976, -532728])
    out = rc_bracket(f, g, 1)
    fd, gd = f.derivative(), g.derivative()
    ref = [sum(4 * f.coeffs[i] * gd.coeffs[n - i] - 6 * fd.coeffs[i] * g.coeffs[n - i] for i in range(n + 1))
           for n in range(5)]
    assert out.coeffs == ref
    assert out.weight == 12


def test_bracket_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        rc_bracket(series(2, [1, 2]), series(2, [1, 2, 3]), 1)


coeff_lists = st.lists(st.integers(-20, 20), min_size=6, max_size=6)


@settings(max_examples=40, deadline=None)
@given(coeff_lists, coeff_lists, st.integers(0, 4), st.integers(1, 6))
def test_bracket_symmetry_equal_weights(a, b, nu, k):
    f, g = series(k, a), series(k, b)
    fg, gf = rc_bracket(f, g, nu), rc_bracket(g, f, nu)
    assert fg.coeffs == [(-1) ** nu * c for c in gf.coeffs]
    assert fg.weight == 2 * k + 2 * nu


@settings(max_examples=40, deadline=None)
@given(coeff_lists, coeff_lists, st.integers(0, 3), st.integers(1, 5), st.integers(1, 5))
def test_bracket_weight(a, b, nu, k, l):
    assert rc_bracket(series(k, a), series(l, b), nu).weight == k + l + 2 * nu
