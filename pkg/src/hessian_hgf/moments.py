"""Moments of Hessian traces and 2F1 values, and their class-number sides.

Three pipelines meet here and are kept apart on purpose: the 2F1 values
come from character sums (:mod:`charsum`), traces from point counts
(:mod:`hessian`) and the class-number side from form enumeration
(:mod:`classnum`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .charsum import CycloContext, hasse_bound, hess_2f1_all
from .classnum import hurwitz_Hstar, supersingular_constant
from .combin import gen_binomial
from .errors import DomainError, Inconsistent, MissingR, NoCubicCharacter
from .ffield import FieldTable, cube_data, field_for_q
from .hessian import TraceTable, trace_all, trace_at_zero

HALF = Fraction(1, 2)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _field(q) -> FieldTable:
    return q if isinstance(q, FieldTable) else field_for_q(q)


@lru_cache(maxsize=16)
def _traces(p: int, r: int) -> TraceTable:
    return trace_all(field_for_q(p**r))


@lru_cache(maxsize=16)
def _f21(p: int, r: int, threads: int = 1) -> np.ndarray:
    ft = field_for_q(p**r)
    out = hess_2f1_all(CycloContext(ft, threads=threads))
    out.setflags(write=False)
    return out


def trace_table(q) -> TraceTable:
    ft = _field(q)
    return _traces(ft.p, ft.r)


def f21_values(q, threads: int = 1) -> np.ndarray:
    """n(lam) = q * 2F1(lam)_q for every lam, cached per field."""
    ft = _field(q)
    if (ft.q - 1) % 3:
        raise NoCubicCharacter(f"q = {ft.q} is not 1 mod 3")
    return _f21(ft.p, ft.r, threads)


def _svals(q: int) -> range:
    b = hasse_bound(q)
    return range(-b, b + 1)


def _hstar_ninth(D: int) -> Fraction:
    if D % 9:
        return Fraction(0)
    return hurwitz_Hstar(D // 9)


def class_sum_mod9(q: int, m: int, congruence: bool = True) -> Fraction:
    """12 * sum over p∤s, s = q+1 (mod 9) of H*((4q - s^2)/9) s^m.

    With ``congruence=False`` the sum runs over all p∤s and is halved
    instead (6 * sum), the form used in the asymptotic argument.
    """
    p = field_for_q(q).p
    total = Fraction(0)
    for s in _svals(q):
        if s % p == 0:
            continue
        if congruence and (s - q - 1) % 9:
            continue
        total += _hstar_ninth(4 * q - s * s) * s**m
    return 12 * total if congruence else 6 * total


def class_sum_mod3(q: int, m: int) -> Fraction:
    """sum over p∤s, s = q+1 (mod 3) of H*(4q - s^2) s^m."""
    p = field_for_q(q).p
    return sum((hurwitz_Hstar(4 * q - s * s) * s**m for s in _svals(q)
                if s % p and (s - q - 1) % 3 == 0), Fraction(0))


def congruence_support_report(q: int, m: int = 0) -> dict:
    """Compare the mod-9 restricted sum with the unrestricted one.

    Also lists every s off the class s = q+1 (mod 9), other than its mirror
    -(q+1), where H*((4q - s^2)/9) does not vanish.
    """
    p = field_for_q(q).p
    stray = [s for s in _svals(q) if s % p and _hstar_ninth(4 * q - s * s) != 0
             and (s - q - 1) % 9 and (s + q + 1) % 9]
    return {
        "q": q,
        "restricted": class_sum_mod9(q, m, congruence=True),
        "unrestricted": class_sum_mod9(q, m, congruence=False),
        "stray_s": stray,
    }


def supersingular_trace(q: int) -> int | None:
    """The trace +-2 p^(r/2) that is = q+1 (mod 9), for even r."""
    ft = field_for_q(q)
    if ft.r % 2:
        return None
    s0 = 2 * ft.p ** (ft.r // 2)
    return s0 if (s0 - q - 1) % 9 == 0 else -s0


def _supersingular_term(q: int, m: int, R, normalization: str) -> Fraction:
    A = supersingular_constant(q)
    R = Fraction(R)
    if normalization == "printed":
        return (-1) ** m * R * A * _sqrt_int(q) ** m
    if normalization == "trace":
        return R * A * supersingular_trace(q) ** m
    raise ValueError(f"unknown normalization {normalization!r}")


def _sqrt_int(q: int) -> int:
    root = math.isqrt(q)
    if root * root != q:
        raise ValueError(f"{q} is not a square")
    return root


def trace_moment_direct(q, m: int) -> int:
    """sum of a(lam)^m over the nonsingular lam, from point counts."""
    tt = trace_table(q)
    return sum(int(a) ** m for a in tt.traces())


def trace_moment_classnum(q: int, m: int, R=None, normalization: str = "printed") -> Fraction:
    """Class-number side of the trace-moment formula.

    Case (1) r odd, q = 1 (mod 3); case (2) r even, which needs ``R``;
    case (3) q = 2 (mod 3).  ``normalization`` selects how the
    supersingular term of case (2) is written: ``"printed"`` uses
    (-1)^m R A q^(m/2), ``"trace"`` uses R A s0^m with s0 the supersingular
    trace congruent to q+1 mod 9.
    """
    ft = field_for_q(q)
    if q % 3 == 2:
        return class_sum_mod3(q, m)
    out = class_sum_mod9(q, m)
    if ft.r % 2 == 0:
        if R is None:
            raise MissingR(f"q = {q} needs the constant R(q)")
        out += _supersingular_term(q, m, R, normalization)
    return out


def f21_moment_direct(q, m: int) -> tuple[int, float]:
    """T(q, m) = sum n(lam)^m and the scaled moment T * q^(-m/2-1)."""
    ft = _field(q)
    vals = f21_values(ft)
    T = sum(int(v) ** m for v in vals)
    return T, T / ft.q ** (m / 2 + 1)


def f21_moment_classnum(q: int, m: int, R=None, normalization: str = "printed",
                        printed_constant: bool = False) -> Fraction:
    """Right side of the 2F1-moment formula, to compare with (-1)^m T(q, m).

    The constant term counts the lam with lam^3 = 1, each contributing
    (-q * 2F1(1))^m = 1; that is 3 when q = 1 (mod 3).  ``printed_constant``
    replaces it by 1.
    """
    ft = field_for_q(q)
    if (q - 1) % 3:
        raise NoCubicCharacter(f"q = {q} is not 1 mod 3")
    roots, _ = cube_data(ft)
    const = 1 if printed_constant else len(roots)
    a0 = trace_at_zero(ft)
    return const - Fraction(a0) ** m + trace_moment_classnum(q, m, R, normalization)


def estimate_R(q: int, normalization: str = "printed") -> Fraction:
    """Solve R(q) from the m = 2 trace identity and confirm it at m = 4."""
    ft = field_for_q(q)
    if ft.r % 2:
        raise ValueError("R(q) is only defined for even r")
    base2 = class_sum_mod9(q, 2)
    unit2 = _supersingular_term(q, 2, 1, normalization)
    R = (trace_moment_direct(q, 2) - base2) / unit2
    lhs4 = trace_moment_direct(q, 4)
    rhs4 = class_sum_mod9(q, 4) + _supersingular_term(q, 4, R, normalization)
    if lhs4 != rhs4:
        raise Inconsistent(f"R = {R} from m = 2 fails at m = 4 for q = {q} ({lhs4} != {rhs4})")
    if not 0 <= R <= 12:
        raise Inconsistent(f"R = {R} outside [0, 12] for q = {q}")
    return R


@dataclass
class MomentReport:
    q: int
    m: int
    kind: str
    direct: int
    classnum_side: Fraction | None
    scaled: float
    target: int
    abs_error: float

    @property
    def exact_match(self) -> bool | None:
        if self.classnum_side is None:
            return None
        lhs = (-1) ** self.m * self.direct if self.kind == "f21" else self.direct
        return lhs == self.classnum_side


def moment_report(q: int, m: int, method: str = "both", R=None, normalization: str = "printed") -> MomentReport:
    """Exact and scaled m-th moment for q.

    For q = 1 (mod 3) the moment is of the 2F1 values (``kind="f21"``);
    otherwise of the traces (``kind="trace"``).
    """
    ft = field_for_q(q)
    target = catalan(m // 2) if m % 2 == 0 else 0
    classnum_side = None
    if q % 3 == 1:
        kind = "f21"
        direct, scaled = f21_moment_direct(ft, m)
        if method in ("classnum", "both"):
            classnum_side = f21_moment_classnum(q, m, R, normalization)
    else:
        kind = "trace"
        direct = trace_moment_direct(ft, m)
        scaled = direct / q ** (m / 2 + 1)
        if method in ("classnum", "both"):
            classnum_side = trace_moment_classnum(q, m, R, normalization)
    return MomentReport(q, m, kind, direct, classnum_side, scaled, target, abs(scaled - target))


# ---------------------------------------------------------------------------
# supersingular tails


def supersingular_set(q: int, modulus: int) -> list[int]:
    """Omega_q (modulus 9) or Omega'_q (modulus 3)."""
    if modulus not in (3, 9):
        raise ValueError("modulus must be 3 or 9")
    p = field_for_q(q).p
    return [s for s in _svals(q) if s % p == 0 and (s - q - 1) % modulus == 0]


def supersingular_tail(q: int, m: int, modulus: int) -> Fraction:
    weight = _hstar_ninth if modulus == 9 else hurwitz_Hstar
    return sum((weight(4 * q - s * s) * s**m for s in supersingular_set(q, modulus)), Fraction(0))


# ---------------------------------------------------------------------------
# semicircle law


def semicircle_cdf(t):
    """CDF of the density sqrt(4 - t^2) / (2 pi) on [-2, 2]."""
    t = np.asarray(t, dtype=float)
    if np.any((t < -2) | (t > 2)):
        raise DomainError("semicircle CDF is defined on [-2, 2]")
    out = 0.5 + (t * np.sqrt(4 - t * t)) / (4 * np.pi) + np.arcsin(t / 2) / np.pi
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def semicircle_moment(m: int) -> int:
    return catalan(m // 2) if m % 2 == 0 else 0


def ks_distance(values) -> float:
    """sup |ECDF - semicircle CDF|, both one-sided limits checked at each jump."""
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    uniq, last = np.unique(x, return_index=False, return_counts=True)
    hi = np.cumsum(last) / n
    lo = hi - last / n
    F = semicircle_cdf(np.clip(uniq, -2, 2))
    return float(max(np.max(np.abs(hi - F)), np.max(np.abs(F - lo))))


@dataclass
class DistributionReport:
    q: int
    kind: str
    values: np.ndarray
    edges: np.ndarray
    counts: np.ndarray
    ecdf: np.ndarray
    scdf: np.ndarray
    ks: float
    moments: dict = field(default_factory=dict)

    def rows(self):
        for i in range(len(self.counts)):
            yield (float(self.edges[i]), float(self.edges[i + 1]), int(self.counts[i]),
                   float(self.ecdf[i]), float(self.scdf[i]))


def _distribution(q: int, values: np.ndarray, bins: int, kind: str) -> DistributionReport:
    if bins < 1:
        raise ValueError("bins must be positive")
    if np.any(np.abs(values) > 2 + 1e-12):
        raise DomainError("normalized value outside [-2, 2]")
    edges = np.linspace(-2.0, 2.0, bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    ecdf = np.cumsum(counts) / len(values)
    scdf = semicircle_cdf(edges[1:])
    return DistributionReport(q, kind, values, edges, counts, ecdf, np.asarray(scdf),
                              ks_distance(values))


def distribution(q: int, bins: int = 40) -> DistributionReport:
    """Distribution of sqrt(q) * 2F1(lam)_q = n(lam)/sqrt(q) over all lam."""
    vals = f21_values(q).astype(float) / math.sqrt(q)
    return _distribution(q, vals, bins, "f21")


def trace_distribution(q: int, bins: int = 40) -> DistributionReport:
    """Distribution of a(lam)/sqrt(q) over the nonsingular lam; any q."""
    vals = trace_table(q).traces().astype(float) / math.sqrt(q)
    return _distribution(q, vals, bins, "trace")


# ---------------------------------------------------------------------------
# coefficient assemblies of the projected brackets


def C1(nu: int) -> Fraction:
    return Fraction(math.comb(2 * nu, nu), 3 * 2 ** (2 * nu + 1))


def C2(nu: int) -> Fraction:
    return Fraction(math.comb(2 * nu, nu), 3 * 2 ** (2 * nu))


def C3(nu: int) -> Fraction:
    return Fraction(math.comb(2 * nu + 2, nu + 1), 3 * 2 ** (2 * nu + 3))


def C4(nu: int) -> Fraction:
    return Fraction(math.comb(2 * nu + 1, nu + 1), 3 * 2 ** (2 * nu + 1))


def delta(m: int) -> int:
    return 1 if m >= 0 and math.isqrt(m) ** 2 == m else 0


def chi3(n: int) -> int:
    """Legendre symbol (n | 3)."""
    return (0, 1, -1)[n % 3]


def hyperbola_pairs(m: int):
    """(t, l) with t^2 - 9 l^2 = m and t, l >= 1, via the divisor pairs of m."""
    out = []
    d = 1
    while d * d < m:
        if m % d == 0:
            e = m // d
            if (e - d) % 6 == 0:
                out.append(((d + e) // 2, (e - d) // 6))
        d += 1
    return out


def hyperbola_sum(m: int, exponent: int, twist: bool = False) -> int:
    """sum over t^2 - 9 l^2 = m of (t - 3l)^exponent, optionally weighted by (t|3)."""
    return sum((chi3(t) if twist else 1) * (t - 3 * l) ** exponent for t, l in hyperbola_pairs(m))


def _s_range_sq(m: int) -> range:
    b = math.isqrt(m)
    return range(-b, b + 1)


def bracket_coeff_even(nu: int, m: int) -> Fraction:
    """m-th coefficient of the even (theta) assembly, exactly."""
    total = Fraction(0)
    for mu in range(nu + 1):
        c = (-1) ** (nu - mu) * gen_binomial(nu + HALF, mu) * gen_binomial(nu - HALF, nu - mu)
        inner = sum((s ** (2 * mu) * (m - s * s) ** (nu - mu) * _hstar_ninth(m - s * s)
                     for s in _s_range_sq(m)), Fraction(0))
        total += c * inner
    if delta(m):
        total += C1(nu) * math.isqrt(m) ** (2 * nu + 1)
    total += C2(nu) * hyperbola_sum(m, 2 * nu + 1)
    return total


def bracket_coeff_odd(nu: int, m: int) -> Fraction:
    """m-th coefficient of the odd (twisted theta) assembly, exactly."""
    total = Fraction(0)
    for mu in range(nu + 1):
        c = (-1) ** mu * gen_binomial(nu + HALF, mu) * gen_binomial(nu + HALF, nu - mu)
        inner = sum((chi3(s) * s ** (2 * nu - 2 * mu + 1) * (m - s * s) ** mu * _hstar_ninth(m - s * s)
                     for s in _s_range_sq(m)), Fraction(0))
        total += c * inner
    if delta(m):
        k = math.isqrt(m)
        total += C3(nu) * k ** (2 * nu + 2) * chi3(k)
    total += C4(nu) * hyperbola_sum(m, 2 * nu + 2, twist=True)
    return total


@dataclass
class BracketCoefficientSeries:
    nu: int
    parity: str
    qs: list
    values: list

    @classmethod
    def at_4q(cls, nu: int, qs, parity: str = "even") -> "BracketCoefficientSeries":
        fn = bracket_coeff_even if parity == "even" else bracket_coeff_odd
        return cls(nu, parity, list(qs), [fn(nu, 4 * q) for q in qs])


@dataclass
class GrowthReport:
    exponent: float
    ratios: list
    threshold: float
    decreasing: bool
    below_threshold: bool

    @property
    def ok(self) -> bool:
        return self.decreasing and self.below_threshold


def growth_check(series: BracketCoefficientSeries, exponent: float | None = None,
                 threshold: float = 1.0) -> GrowthReport:
    """Ratios |coefficient| / q^exponent and whether they trend down."""
    if exponent is None:
        exponent = series.nu + 1 if series.parity == "even" else series.nu + 1.5
    ratios = [abs(float(v)) / q**exponent for q, v in zip(series.qs, series.values)]
    return GrowthReport(exponent, ratios, threshold,
                        decreasing=ratios[-1] <= ratios[0],
                        below_threshold=ratios[-1] < threshold)


def admissible_primes(lo: int, hi: int, residue: int = 1) -> list[int]:
    """Primes p in [lo, hi] with p = residue (mod 3)."""
    from sympy import primerange
    return [p for p in primerange(max(lo, 5), hi + 1) if p % 3 == residue]

