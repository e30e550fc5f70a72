"""Finite fields F_p and F_{p^2} with dense exp/log tables.

Elements are stored as canonical integer codes ``c0 + p*c1`` standing for
``c0 + c1*t`` in ``F_p[t]/(t^2 - n)``.  For r = 1 the code is the residue
itself, so integers embed in the prime subfield simply as ``k % p``.

Every arithmetic method accepts either Python ints or numpy integer arrays
and broadcasts like numpy; scalar inputs give scalar ``int`` outputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime

from .errors import CapExceeded, NonPrime, SmallCharacteristic, UnsupportedDegree

DEFAULT_CAP = 2**17


@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int
    q: int
    nonresidue: int | None = None


def _as_out(x):
    if np.ndim(x) == 0:
        return int(x)
    return x


def _smallest_nonresidue(p: int) -> int:
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    return n


def _raw_mul(a: int, b: int, p: int, r: int, n: int | None) -> int:
    if r == 1:
        return a * b % p
    a0, a1 = a % p, a // p
    b0, b1 = b % p, b // p
    c0 = (a0 * b0 + n * a1 * b1) % p
    c1 = (a0 * b1 + a1 * b0) % p
    return c0 + p * c1


def _raw_pow(a: int, e: int, p: int, r: int, n: int | None) -> int:
    out = 1
    while e:
        if e & 1:
            out = _raw_mul(out, a, p, r, n)
        a = _raw_mul(a, a, p, r, n)
        e >>= 1
    return out


class FieldTable:
    """F_q together with a fixed generator and its power/index tables.

    ``exp[k] = g**k`` for ``0 <= k < q-1`` and ``ind[x]`` is the discrete
    log of the element with code ``x`` (``ind[0] = -1``).
    """

    def __init__(self, spec: FieldSpec, g: int, exp: np.ndarray, ind: np.ndarray):
        self.spec = spec
        self.g = g
        self.exp = exp
        self.ind = ind
        self.exp.setflags(write=False)
        self.ind.setflags(write=False)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def r(self) -> int:
        return self.spec.r

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def order(self) -> int:
        """Order of the multiplicative group, q - 1."""
        return self.spec.q - 1

    def __repr__(self):
        return f"FieldTable(p={self.p}, r={self.r}, g={self.coords(self.g)})"

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def element(self, c0: int, c1: int = 0) -> int:
        if self.r == 1 and c1 % self.p:
            raise ValueError("c1 must vanish in a prime field")
        return c0 % self.p + self.p * (c1 % self.p)

    def coords(self, x: int) -> tuple[int, int]:
        x = int(x)
        return x % self.p, x // self.p

    def from_int(self, k):
        """Image of an integer (or integer array) in the prime subfield."""
        return _as_out(np.mod(k, self.p))

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        if self.r == 1:
            return _as_out((a + b) % p)
        c0 = (a % p + b % p) % p
        c1 = (a // p + b // p) % p
        return _as_out(c0 + p * c1)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        p = self.p
        if self.r == 1:
            return _as_out((-a) % p)
        return _as_out((-(a % p)) % p + p * ((-(a // p)) % p))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        k = (self.ind[a] + self.ind[b]) % self.order
        out = np.where((a == 0) | (b == 0), 0, self.exp[k])
        return _as_out(out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return _as_out(self.exp[(-self.ind[a]) % self.order])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a = np.asarray(self.inv(a), dtype=np.int64)
            e = -e
        if e == 0:
            return _as_out(np.ones_like(a))
        k = (self.ind[a] * e) % self.order
        return _as_out(np.where(a == 0, 0, self.exp[k]))

    def cube(self, a):
        return self.power(a, 3)

    def is_square(self, a):
        """True for 0 and the nonzero squares."""
        a = np.asarray(a, dtype=np.int64)
        return _as_out(np.where(a == 0, True, self.ind[a] % 2 == 0))


@lru_cache(maxsize=32)
def make_field(p: int, r: int = 1, cap: int = DEFAULT_CAP) -> FieldTable:
    """Build F_{p^r} with generator, exp and discrete-log tables.

    The generator is the first candidate, in lexicographic order on
    ``(c0, c1)``, whose order is exactly ``q - 1``.
    """
    if r not in (1, 2):
        raise UnsupportedDegree(f"extension degree {r} not in {{1, 2}}")
    if not isprime(p):
        raise NonPrime(f"{p} is not prime")
    if p < 5:
        raise SmallCharacteristic(f"characteristic {p} < 5")
    q = p**r
    if q > cap:
        raise CapExceeded(f"q = {q} exceeds cap {cap}")
    n = _smallest_nonresidue(p) if r == 2 else None
    spec = FieldSpec(p=p, r=r, q=q, nonresidue=n)

    order = q - 1
    cofactors = [order // ell for ell in factorint(order)]

    def is_generator(code):
        return all(_raw_pow(code, e, p, r, n) != 1 for e in cofactors)

    g = None
    for c0 in range(p):
        for c1 in range(p if r == 2 else 1):
            code = c0 + p * c1
            if code and is_generator(code):
                g = code
                break
        if g is not None:
            break

    exp = np.empty(order, dtype=np.int64)
    x = 1
    for k in range(order):
        exp[k] = x
        x = _raw_mul(x, g, p, r, n)
    ind = np.full(q, -1, dtype=np.int64)
    ind[exp] = np.arange(order, dtype=np.int64)
    return FieldTable(spec, g, exp, ind)


def field_for_q(q: int, cap: int = DEFAULT_CAP) -> FieldTable:
    """Field of order q where q is p or p^2."""
    fac = factorint(q)
    if len(fac) != 1:
        raise NonPrime(f"{q} is not a prime power")
    ((p, r),) = fac.items()
    return make_field(p, r, cap)


def cube_data(ft: FieldTable):
    """Cube roots of unity and a counter for solutions of x**3 = v.

    Returns ``(roots, count)`` where ``roots`` is a frozenset of codes and
    ``count(v)`` gives ``#{x in F_q : x^3 = v}`` (works on arrays too).
    """
    cubes = np.asarray(ft.cube(ft.elements()))
    counts = np.bincount(cubes, minlength=ft.q)
    roots = frozenset(int(x) for x in np.nonzero(cubes == 1)[0])

    def cube_root_count(v):
        return _as_out(counts[np.asarray(v, dtype=np.int64)])

    return roots, cube_root_count
