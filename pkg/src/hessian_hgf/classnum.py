"""Class numbers of imaginary quadratic orders and Hurwitz class numbers.

``H(D)`` sums ``h`` over the orders containing the order of discriminant
``-D``; ``H*(D)`` weights each term by ``1/omega`` (half the number of
units).  Both vanish unless ``-D`` is a negative discriminant, except at
``D = 0`` where they take the value ``-1/12``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint

from .errors import BadDiscriminant, CaseNotCovered

H_ZERO = Fraction(-1, 12)


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True


def is_discriminant(D: int) -> bool:
    """True when -D is a negative discriminant (D > 0, D = 0 or 3 mod 4)."""
    return D > 0 and D % 4 in (0, 3)


def reduced_forms(D: int, primitive: bool = True) -> list[QuadForm]:
    """Reduced positive definite forms of discriminant -D."""
    if not is_discriminant(D):
        raise BadDiscriminant(f"-{D} is not a negative discriminant")
    out = []
    amax = math.isqrt(D // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b - D) % 2:
                continue
            num = b * b + D
            if num % (4 * a):
                continue
            f = QuadForm(a, b, num // (4 * a))
            if not f.is_reduced():
                continue
            if primitive and math.gcd(math.gcd(a, b), f.c) != 1:
                continue
            out.append(f)
    return out


def reduced_primitive_forms(D: int) -> list[QuadForm]:
    return reduced_forms(D, primitive=True)


@lru_cache(maxsize=None)
def class_number_h(D: int) -> int:
    return len(reduced_forms(D))


def omega(D: int) -> int:
    if not is_discriminant(D):
        raise BadDiscriminant(f"-{D} is not a negative discriminant")
    return {3: 3, 4: 2}.get(D, 1)


def _conductor_terms(D: int):
    f = 1
    while f * f <= D:
        if D % (f * f) == 0 and is_discriminant(D // (f * f)):
            yield D // (f * f)
        f += 1


@lru_cache(maxsize=None)
def hurwitz_H(D: int) -> Fraction:
    if D == 0:
        return H_ZERO
    if D < 0 or not is_discriminant(D):
        return Fraction(0)
    return Fraction(sum(class_number_h(d) for d in _conductor_terms(D)))


@lru_cache(maxsize=None)
def hurwitz_Hstar(D: int) -> Fraction:
    if D == 0:
        return H_ZERO
    if D < 0 or not is_discriminant(D):
        return Fraction(0)
    return sum((Fraction(class_number_h(d), omega(d)) for d in _conductor_terms(D)), Fraction(0))


def hurwitz_by_forms(D: int, weighted: bool = True) -> Fraction:
    """Second route to H* (or H): count every reduced form of discriminant -D.

    Non-primitive forms stand in for the smaller orders.  With ``weighted``,
    multiples of x^2 + y^2 count 1/2 and multiples of x^2 + xy + y^2 count 1/3.
    """
    if D == 0:
        return H_ZERO
    if not is_discriminant(D):
        return Fraction(0)
    total = Fraction(0)
    for f in reduced_forms(D, primitive=False):
        w = Fraction(1)
        if weighted and f.b == 0 and f.a == f.c:
            w = Fraction(1, 2)
        elif weighted and f.a == f.b == f.c:
            w = Fraction(1, 3)
        total += w
    return total


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def supersingular_constant(q: int) -> Fraction:
    """A(q) = (p + 6 - 4 (-3|p) - 3 (-4|p)) / 12."""
    p, _ = _prime_power(q)
    return Fraction(p + 6 - 4 * legendre(-3, p) - 3 * legendre(-4, p), 12)


def _prime_power(q: int) -> tuple[int, int]:
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, r),) = fac.items()
    return p, r


def schoof_count(q: int, s: int, n: int = 1) -> Fraction:
    """Number of F_q-classes with trace s and (Z/n)^2 inside E(F_q).

    Dispatches over the four cases of Schoof's theorem; in case (3) n plays
    the role of a cyclic subgroup Z/n.  Raises ``CaseNotCovered`` otherwise.
    """
    p, r = _prime_power(q)
    if p < 5:
        raise ValueError("characteristic must be at least 5")
    if s * s > 4 * q:
        raise CaseNotCovered(f"|s| = {abs(s)} exceeds the Hasse bound for q = {q}")
    if s % p:
        if (q + 1 - s) % (n * n) == 0 and (q - 1) % n == 0:
            return hurwitz_H((4 * q - s * s) // (n * n))
        raise CaseNotCovered(f"n = {n} violates n^2 | q+1-s or n | q-1 for s = {s}")
    if r % 2 == 0:
        root = p ** (r // 2)
        if abs(s) == 2 * root:
            return supersingular_constant(q)
        if abs(s) == root and p % 3 != 1:
            return Fraction(1 - legendre(-3, p))
    if n >= 2 and s != 0 and s * s != 4 * q:
        return Fraction(0)
    raise CaseNotCovered(f"(q, s, n) = ({q}, {s}, {n}) is outside Schoof's cases")
