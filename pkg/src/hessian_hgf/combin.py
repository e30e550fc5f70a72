"""Exact rational and sqrt(pi) arithmetic for the combinatorial identities.

Everything here lives in Q or Q*sqrt(pi).  ``SqrtPiScalar`` carries that
tag; products that would produce a bare ``pi`` are refused.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadRange,
    PoleError,
    TruncationMismatch,
    UnsupportedArguments,
    UnsupportedExponent,
)

DEFAULT_TRUNCATION = 200


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class SqrtPiScalar:
    """The number ``coeff * sqrt(pi)**tag`` with ``tag`` in {0, 1}."""
    coeff: Fraction
    tag: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", _frac(self.coeff))
        if self.tag not in (0, 1):
            raise ValueError("tag must be 0 (rational) or 1 (sqrt(pi))")

    @classmethod
    def of(cls, x) -> "SqrtPiScalar":
        return x if isinstance(x, SqrtPiScalar) else cls(_frac(x), 0)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __add__(self, other):
        other = SqrtPiScalar.of(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.tag != other.tag:
            raise ArithmeticError("cannot add a rational to a multiple of sqrt(pi)")
        return SqrtPiScalar(self.coeff + other.coeff, self.tag)

    __radd__ = __add__

    def __neg__(self):
        return SqrtPiScalar(-self.coeff, self.tag)

    def __sub__(self, other):
        return self + (-SqrtPiScalar.of(other))

    def __rsub__(self, other):
        return SqrtPiScalar.of(other) - self

    def __mul__(self, other):
        other = SqrtPiScalar.of(other)
        tag = self.tag + other.tag
        if tag > 1:
            raise ArithmeticError("product of two sqrt(pi) multiples leaves this algebra")
        return SqrtPiScalar(self.coeff * other.coeff, tag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = SqrtPiScalar.of(other)
        tag = self.tag - other.tag
        if tag < 0:
            raise ArithmeticError("rational divided by sqrt(pi) leaves this algebra")
        return SqrtPiScalar(self.coeff / other.coeff, tag)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SqrtPiScalar.of(other)
        if not isinstance(other, SqrtPiScalar):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.coeff == other.coeff and self.tag == other.tag

    def __hash__(self):
        return hash((self.coeff, self.tag if self.coeff else 0))

    def __float__(self):
        return float(self.coeff) * math.sqrt(math.pi) ** self.tag

    def __repr__(self):
        return f"{self.coeff}*sqrt(pi)" if self.tag else f"{self.coeff}"


SQRT_PI = SqrtPiScalar(Fraction(1), 1)


def pochhammer(alpha, j: int) -> Fraction:
    """Rising factorial (alpha)_j."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    alpha = _frac(alpha)
    out = Fraction(1)
    for i in range(j):
        out *= alpha + i
    return out


def gen_binomial(x, k: int) -> Fraction:
    """C(x, k) = (x - k + 1)_k / k! for rational x."""
    if k < 0:
        return Fraction(0)
    return pochhammer(_frac(x) - k + 1, k) / math.factorial(k)


def _half_integral(x: Fraction) -> bool:
    return x.denominator in (1, 2)


def gamma_half(x) -> SqrtPiScalar:
    """Gamma at an integer or half-integer, exactly."""
    x = _frac(x)
    if x.denominator == 1:
        if x <= 0:
            raise PoleError(f"Gamma has a pole at {x}")
        return SqrtPiScalar(Fraction(math.factorial(int(x) - 1)))
    if x.denominator != 2:
        raise UnsupportedArguments(f"Gamma({x}) is not a half-integer value")
    half = Fraction(1, 2)
    coeff = Fraction(1)
    if x > 0:
        # Gamma(x) = (1/2)_{x - 1/2} sqrt(pi)
        coeff = pochhammer(half, int(x - half))
    else:
        # Gamma(1/2) = (x)_{1/2 - x} Gamma(x)
        coeff = 1 / pochhammer(x, int(half - x))
    return SqrtPiScalar(coeff, 1)


def gamma_ratio(x, y) -> Fraction:
    """Gamma(x) / Gamma(y) for x - y an integer, both half-integral."""
    x, y = _frac(x), _frac(y)
    if (x - y).denominator != 1 or not _half_integral(x):
        raise UnsupportedArguments(f"Gamma({x})/Gamma({y}) is not rational")
    if y.denominator == 1 and y <= 0:
        if x.denominator == 1 and x <= 0:
            raise PoleError("ratio of two poles")
        return Fraction(0)
    if x.denominator == 1 and x <= 0:
        raise PoleError(f"Gamma has a pole at {x}")
    return (gamma_half(x) / gamma_half(y)).coeff


def legendre_duplication(z) -> tuple[SqrtPiScalar, SqrtPiScalar]:
    """Both sides of Gamma(z) Gamma(z + 1/2) = 2^(1-2z) sqrt(pi) Gamma(2z)."""
    z = _frac(z)
    lhs = gamma_half(z) * gamma_half(z + Fraction(1, 2))
    rhs = SqrtPiScalar(Fraction(2) ** int(1 - 2 * z), 1) * gamma_half(2 * z)
    return lhs, rhs


def _nonpos_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def classical_2f1_at_1(a, b, c, method: str = "auto") -> SqrtPiScalar:
    """Classical 2F1(a, b; c | 1).

    ``method="series"`` sums the terminating series, ``"gauss"`` uses
    Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)); ``"auto"`` prefers the
    series when it terminates.
    """
    a, b, c = _frac(a), _frac(b), _frac(c)
    terminating = _nonpos_int(a) or _nonpos_int(b)
    if method == "auto":
        method = "series" if terminating else "gauss"
    if method == "series":
        if not terminating:
            raise UnsupportedArguments("series path needs a nonpositive integer parameter")
        N = -int(a) if _nonpos_int(a) else -int(b)
        if _nonpos_int(a) and _nonpos_int(b):
            N = min(-int(a), -int(b))
        total = Fraction(0)
        for j in range(N + 1):
            den = pochhammer(c, j)
            if den == 0:
                raise PoleError(f"(c)_{j} vanishes for c = {c}")
            total += pochhammer(a, j) * pochhammer(b, j) / (den * math.factorial(j))
        return SqrtPiScalar(total)
    if c - a - b <= 0:
        raise UnsupportedArguments("Gauss summation needs c - a - b > 0")
    args = (c, c - a - b, c - a, c - b)
    if not all(_half_integral(t) for t in args):
        raise UnsupportedArguments("Gamma arguments must be half-integral")
    if _nonpos_int(c - a) or _nonpos_int(c - b):
        return SqrtPiScalar(Fraction(0))
    num = [gamma_half(c), gamma_half(c - a - b)]
    den = [gamma_half(c - a), gamma_half(c - b)]
    tag = sum(g.tag for g in num) - sum(g.tag for g in den)
    if tag not in (0, 1):
        raise UnsupportedArguments("Gauss value is not in Q or Q*sqrt(pi)")
    coeff = num[0].coeff * num[1].coeff / (den[0].coeff * den[1].coeff)
    return SqrtPiScalar(coeff, tag)


def lemma_binomsum_lhs(nu: int, k: int) -> int:
    if not 0 <= k <= nu:
        raise BadRange(f"need 0 <= k <= nu, got k={k}, nu={nu}")
    return sum(math.comb(2 * nu + 1, 2 * nu - 2 * mu + 1) * math.comb(nu - mu, k)
               for mu in range(nu - k + 1))


def lemma_binomsum_rhs(nu: int, k: int) -> Fraction:
    if not 0 <= k <= nu:
        raise BadRange(f"need 0 <= k <= nu, got k={k}, nu={nu}")
    return Fraction(4 ** (nu - k) * math.factorial(2 * nu - k),
                    math.factorial(k) * math.factorial(2 * nu - 2 * k))


def lemma_binomsum_hypergeometric(nu: int, k: int) -> SqrtPiScalar:
    """C(nu, k) * 2F1(-nu - 1/2, k - nu; 1/2 | 1) via Gauss summation."""
    val = classical_2f1_at_1(Fraction(-2 * nu - 1, 2), k - nu, Fraction(1, 2), method="gauss")
    return val * math.comb(nu, k)


def kappa(k, l, nu: int) -> SqrtPiScalar:
    """Constant of the y^(1-k) bracket projection.

    kappa = 1/((k+l+2nu-2)! (k-1)) * sum_mu Gamma(2-k) Gamma(l+2nu-mu)/Gamma(2-k-mu)
            * C(k+nu-1, nu-mu) C(l+nu-1, mu)
    """
    k, l = _frac(k), _frac(l)
    w = k + l + 2 * nu - 2
    if w.denominator != 1 or w < 0:
        raise UnsupportedArguments("k + l must be an integer with k + l + 2nu >= 2")
    if k == 1:
        raise PoleError("k = 1 is excluded")
    total = Fraction(0)
    for mu in range(nu + 1):
        ratio = gamma_ratio(l + 2 * nu - mu, 2 - k - mu)
        total += ratio * gen_binomial(k + nu - 1, nu - mu) * gen_binomial(l + nu - 1, mu)
    return gamma_half(2 - k) * (total / (math.factorial(int(w)) * (k - 1)))


def kappa_closed(nu: int) -> SqrtPiScalar:
    """sqrt(pi) * 2^(-2nu-1) * C(2nu+2, nu+1)."""
    if nu < 0:
        raise BadRange("nu must be nonnegative")
    return SqrtPiScalar(Fraction(math.comb(2 * nu + 2, nu + 1), 2 ** (2 * nu + 1)), 1)


def p_poly(a: int, b, X, Y) -> Fraction:
    """P_{a,b}(X, Y) = sum_{j<=a-2} C(j+b-2, j) X^j (X+Y)^(a-j-2)."""
    if a < 2 or int(a) != a:
        raise ValueError("a must be an integer >= 2")
    a = int(a)
    b, X, Y = _frac(b), _frac(X), _frac(Y)
    return sum((gen_binomial(j + b - 2, j) * X**j * (X + Y) ** (a - j - 2) for j in range(a - 1)),
               Fraction(0))


@dataclass(frozen=True)
class CoefficientSequence:
    """Finitely supported sequence: ``values[i]`` is the term at ``start + i``."""
    start: int
    values: tuple

    def __getitem__(self, n: int) -> Fraction:
        i = n - self.start
        if 0 <= i < len(self.values):
            return _frac(self.values[i])
        return Fraction(0)

    def support(self):
        return [self.start + i for i, v in enumerate(self.values) if v != 0]


def rational_power(base: int, e) -> Fraction:
    """base**e for integer or half-integer e; half powers need a square base."""
    e = _frac(e)
    if e.denominator == 1:
        return Fraction(base) ** int(e)
    if e.denominator != 2:
        raise UnsupportedExponent(f"exponent {e} is not half-integral")
    root = math.isqrt(base) if base >= 0 else -1
    if root < 0 or root * root != base:
        raise UnsupportedExponent(f"{base}^{e} is irrational")
    return Fraction(root) ** int(2 * e)


def mertens_b(r: int, k, l, nu: int, c_minus: CoefficientSequence, a_g: CoefficientSequence) -> SqrtPiScalar:
    """Coefficient b(r) of the projected bracket of the nonholomorphic part.

    b(r) = -Gamma(1-k) sum_{m-n=r} a_g(m) c^-(n) sum_mu C(k+nu-1, nu-mu) C(l+nu-1, mu)
           m^(nu-mu) (m^(mu-2nu-l+1) P_{k+l+2nu, 2-k-mu}(r, n) - n^(k+mu-1)),
    over positive m, n.  Coefficients are taken as real (conjugation is the
    identity on rationals).
    """
    k, l = _frac(k), _frac(l)
    weight = k + l + 2 * nu
    if weight.denominator != 1:
        raise UnsupportedArguments("k + l must be an integer")
    total = Fraction(0)
    for n in c_minus.support():
        m = n + r
        if n < 1 or m < 1:
            continue
        ag = a_g[m]
        if ag == 0:
            continue
        inner = Fraction(0)
        for mu in range(nu + 1):
            coef = gen_binomial(k + nu - 1, nu - mu) * gen_binomial(l + nu - 1, mu)
            if coef == 0:
                continue
            first = rational_power(m, mu - 2 * nu - l + 1) * p_poly(int(weight), 2 - k - mu, r, n)
            second = rational_power(n, k + mu - 1)
            inner += coef * rational_power(m, nu - mu) * (first - second)
        total += ag * c_minus[n] * inner
    return -gamma_half(1 - k) * total


def cohen_identity_sum(n: int) -> Fraction:
    """sum_k (-1)^k (2n-k)! / (k! (n-k)! (n+1-k)!), which vanishes for n >= 1."""
    f = math.factorial
    return sum((Fraction((-1) ** k * f(2 * n - k), f(k) * f(n - k) * f(n + 1 - k)) for k in range(n + 1)),
               Fraction(0))


def mertens_binomial_identity(nu: int, mu: int) -> tuple[Fraction, Fraction]:
    """Both sides of C(nu+1/2, nu-mu) C(nu-1/2, mu) = 4^-nu C(2nu, nu) C(2nu+1, 2mu+1)."""
    h = Fraction(1, 2)
    lhs = gen_binomial(nu + h, nu - mu) * gen_binomial(nu - h, mu)
    rhs = Fraction(math.comb(2 * nu, nu) * math.comb(2 * nu + 1, 2 * mu + 1), 4**nu)
    return lhs, rhs


@dataclass
class FormalQSeries:
    """Truncated q-expansion sum_{n<=N} coeffs[n] q^n of a given weight."""
    weight: Fraction
    coeffs: list

    def __post_init__(self):
        self.weight = _frac(self.weight)
        self.coeffs = [_frac(c) for c in self.coeffs]

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, times: int = 1) -> "FormalQSeries":
        """Apply (1/2 pi i) d/dtau, i.e. multiply the n-th coefficient by n."""
        return FormalQSeries(self.weight + 2 * times, [c * n**times for n, c in enumerate(self.coeffs)])


def rc_bracket(f: FormalQSeries, g: FormalQSeries, nu: int) -> FormalQSeries:
    """nu-th Rankin-Cohen bracket of two truncated q-series."""
    if f.truncation != g.truncation:
        raise TruncationMismatch(f"truncations {f.truncation} and {g.truncation} differ")
    N = f.truncation
    k, l = f.weight, g.weight
    out = [Fraction(0)] * (N + 1)
    for r in range(nu + 1):
        s = nu - r
        coef = (-1) ** r * gen_binomial(k + nu - 1, s) * gen_binomial(l + nu - 1, r)
        if coef == 0:
            continue
        fr = [c * n**r for n, c in enumerate(f.coeffs)]
        gs = [c * n**s for n, c in enumerate(g.coeffs)]
        for n1, a in enumerate(fr):
            if a == 0:
                continue
            ca = coef * a
            for n2 in range(N + 1 - n1):
                if gs[n2]:
                    out[n1 + n2] += ca * gs[n2]
    return FormalQSeries(k + l + 2 * nu, out)


__all__ = [
    "SqrtPiScalar", "SQRT_PI", "pochhammer", "gen_binomial", "gamma_half", "gamma_ratio",
    "legendre_duplication", "classical_2f1_at_1", "lemma_binomsum_lhs", "lemma_binomsum_rhs",
    "lemma_binomsum_hypergeometric", "kappa", "kappa_closed", "p_poly", "CoefficientSequence",
    "rational_power", "mertens_b", "cohen_identity_sum", "mertens_binomial_identity",
    "FormalQSeries", "rc_bracket", "DEFAULT_TRUNCATION",
]
