"""Multiplicative characters, Jacobi sums and Greene's hypergeometric sums.

Characters of F_q^x are indexed by ``j mod q-1`` with
``chi_j(g^k) = zeta^(j*k)`` and ``chi_j(0) = 0`` for every j (the trivial
character included).  The root of unity ``zeta`` lives in the integers
modulo an auxiliary prime ``ell = 1 (mod q-1)``, so every character sum is
an exact residue mod ``ell``.  Integer values are recovered by lifting the
residue into the Hasse window, which is unique because ``ell > 8q``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from sympy import factorint, isprime

from .errors import LiftOutOfRange, NoCubicCharacter
from .ffield import FieldTable

_CHUNK_CELLS = 1 << 22


def auxiliary_prime(q: int) -> int:
    """Smallest prime ell = 1 (mod q-1) with ell > 8q."""
    n = q - 1
    ell = (8 * q // n + 1) * n + 1
    while not isprime(ell):
        ell += n
    return ell


def _root_of_unity(n: int, ell: int) -> int:
    cofactors = [n // f for f in factorint(n)]
    a = 2
    while True:
        z = pow(a, (ell - 1) // n, ell)
        if all(pow(z, c, ell) != 1 for c in cofactors):
            return z
        a += 1


class CycloContext:
    """Embedding of the (q-1)-st roots of unity into Z/ell.

    ``pows[k] = zeta**k mod ell`` for ``0 <= k < q-1``.  The Jacobi table
    used by the batch evaluator is built lazily and then kept.
    """

    def __init__(self, ft: FieldTable, ell: int | None = None, threads: int = 1):
        n = ft.q - 1
        if ell is None:
            ell = auxiliary_prime(ft.q)
        if not isprime(ell) or ell % n != 1 or ell <= 8 * ft.q:
            raise ValueError(f"ell = {ell} is not a valid auxiliary prime for q = {ft.q}")
        self.ft = ft
        self.ell = ell
        self.zeta = _root_of_unity(n, ell)
        self.threads = max(1, int(threads))
        pows = np.empty(n, dtype=np.int64)
        z = 1
        for k in range(n):
            pows[k] = z
            z = z * self.zeta % ell
        pows.setflags(write=False)
        self.pows = pows
        self._jacobi = None

    @property
    def n(self) -> int:
        return self.ft.q - 1

    def __repr__(self):
        return f"CycloContext(q={self.ft.q}, ell={self.ell}, zeta={self.zeta})"

    def jacobi_table(self) -> "JacobiTable":
        if self._jacobi is None:
            self._jacobi = jacobi_table(self)
        return self._jacobi


def cubic_index(ft: FieldTable) -> int:
    """Index (q-1)/3 of the cubic character psi_3."""
    if (ft.q - 1) % 3:
        raise NoCubicCharacter(f"q = {ft.q} is not 1 mod 3")
    return (ft.q - 1) // 3


def char_eval(ctx: CycloContext, j: int, x):
    """chi_j(x) as a residue mod ell; zero at x = 0."""
    x = np.asarray(x, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64) % ctx.n
    k = j * ctx.ft.ind[x] % ctx.n
    out = np.where(x == 0, 0, ctx.pows[k])
    return int(out) if out.ndim == 0 else out


def jacobi_sum(ctx: CycloContext, A: int, B: int) -> int:
    """J(A, conj B) = sum_x A(x) * conj(B)(1 - x), computed directly."""
    ft, n = ctx.ft, ctx.n
    x = np.arange(2, ft.q, dtype=np.int64)
    x = x[x != 1]
    one_minus = np.asarray(ft.sub(1, x))
    keep = one_minus != 0
    a = ft.ind[x[keep]]
    b = ft.ind[one_minus[keep]]
    e = ((A % n) * a - (B % n) * b) % n
    return int(ctx.pows[e].sum() % ctx.ell)


def greene_binomial_scaled(ctx: CycloContext, A: int, B: int) -> int:
    """q * binom(A, B) = B(-1) * J(A, conj B)."""
    sign = ctx.pows[(B % ctx.n) * (ctx.n // 2) % ctx.n]
    return int(sign * jacobi_sum(ctx, A, B) % ctx.ell)


def greene_sum(ctx: CycloContext, tops, bottoms, x: int) -> int:
    """Raw embedded sum behind Greene's nF(n-1).

    Returns ``S = sum_chi q*binom(A1 chi, chi) * prod_i q*binom(A_i chi, B_{i-1} chi) * chi(x)``
    mod ell, so that ``F = S / ((q-1) * q**(n-1))``.  No integer lift is
    attempted.  Cost is O(q^2) per call.
    """
    if len(tops) != len(bottoms) + 1:
        raise ValueError("need one more top character than bottom characters")
    ell = ctx.ell
    lowers = [0] + [int(b) for b in bottoms]
    total = 0
    for j in range(ctx.n):
        cx = char_eval(ctx, j, x)
        if cx == 0:
            continue
        term = cx
        for A, B in zip(tops, lowers):
            term = term * greene_binomial_scaled(ctx, A + j, B + j) % ell
        total = (total + term) % ell
    return total


def cyclic_transform(ctx: CycloContext, coeffs: np.ndarray, ks) -> np.ndarray:
    """out[i] = sum_j coeffs[j] * zeta^(j*ks[i]) mod ell.

    Dense O(len(ks) * (q-1)) evaluation in row chunks; zero coefficients are
    skipped.  Chunks are independent, so a thread pool gives identical
    output for any thread count.
    """
    n, ell, pows = ctx.n, ctx.ell, ctx.pows
    coeffs = np.asarray(coeffs, dtype=np.int64) % ell
    ks = np.asarray(ks, dtype=np.int64) % n
    js = np.nonzero(coeffs)[0].astype(np.int64)
    cs = coeffs[js]
    out = np.zeros(len(ks), dtype=np.int64)
    if len(js) == 0 or len(ks) == 0:
        return out
    # keep partial sums below 2**63
    assert (ell - 1) ** 2 * len(js) < 2**63
    rows = max(1, _CHUNK_CELLS // len(js))
    starts = range(0, len(ks), rows)

    def work(s):
        kk = ks[s:s + rows]
        e = np.multiply.outer(kk, js) % n
        out[s:s + rows] = (pows[e] * cs).sum(axis=1) % ell

    if ctx.threads > 1:
        with ThreadPoolExecutor(ctx.threads) as pool:
            list(pool.map(work, starts))
    else:
        for s in starts:
            work(s)
    return out


@dataclass(frozen=True)
class JacobiTable:
    """Scaled binomials indexed by character j.

    ``top[j] = q*binom(psi3 chi_j, chi_j)`` and
    ``conj[j] = q*binom(conj(psi3) chi_j, chi_j)``, residues mod ell.
    """
    top: np.ndarray
    conj: np.ndarray


def _binomial_column(ctx: CycloContext, t: int) -> np.ndarray:
    # q*binom(chi_t chi_j, chi_j) for every j via one histogram + transform:
    # sum_x zeta^(t a_x) zeta^(j (a_x - b_x)), a_x = ind x, b_x = ind(1-x).
    ft, n, ell = ctx.ft, ctx.n, ctx.ell
    x = np.arange(2, ft.q, dtype=np.int64)
    one_minus = np.asarray(ft.sub(1, x))
    keep = one_minus != 0
    a = ft.ind[x[keep]]
    b = ft.ind[one_minus[keep]]
    d = (a - b) % n
    w = ctx.pows[(t * a) % n]
    hist = np.zeros(n, dtype=np.int64)
    np.add.at(hist, d, w)
    vals = cyclic_transform(ctx, hist % ell, np.arange(n))
    odd = np.arange(n) % 2 == 1
    vals[odd] = (ell - vals[odd]) % ell
    return vals


def jacobi_table(ctx: CycloContext) -> JacobiTable:
    t = cubic_index(ctx.ft)
    top = _binomial_column(ctx, t)
    conj = _binomial_column(ctx, 2 * t)
    top.setflags(write=False)
    conj.setflags(write=False)
    return JacobiTable(top, conj)


def hasse_bound(q: int) -> int:
    """floor(2*sqrt(q)) by integer arithmetic."""
    return math.isqrt(4 * q)


def lift(ctx: CycloContext, residue, bound: int):
    """Centered lift of residues mod ell; raise if any falls outside +-bound."""
    ell = ctx.ell
    v = np.asarray(residue, dtype=np.int64) % ell
    v = np.where(v > ell // 2, v - ell, v)
    if np.any(np.abs(v) > bound):
        bad = int(v.flat[np.argmax(np.abs(v))])
        raise LiftOutOfRange(f"lifted value {bad} outside window +-{bound} (q = {ctx.ft.q})")
    return int(v) if v.ndim == 0 else v


def hess_2f1(ctx: CycloContext, lam: int) -> int:
    """n(lam) = q * 2F1(psi3, conj psi3; eps | lam^3)_q as an integer.

    The character sum over chi is evaluated term by term against the Jacobi
    table; the batch path :func:`hess_2f1_all` shares only that table.
    """
    cubic_index(ctx.ft)
    ft, ell, n = ctx.ft, ctx.ell, ctx.n
    jt = ctx.jacobi_table()
    arg = ft.cube(lam)
    if arg == 0:
        return 0
    chis = char_eval(ctx, np.arange(n), arg)
    s = int((jt.top * jt.conj % ell * chis % ell).sum() % ell)
    val = s * pow(n, -1, ell) % ell
    return lift(ctx, val, hasse_bound(ft.q) + 1)


def hess_2f1_all(ctx: CycloContext) -> np.ndarray:
    """n(lam) for every lam in F_q, as an int64 array indexed by code.

    Only the (q-1)/3 distinct cube logs are transformed, so the total cost
    is three dense transforms of size O(q^2).
    """
    cubic_index(ctx.ft)
    ft, ell, n = ctx.ft, ctx.ell, ctx.n
    jt = ctx.jacobi_table()
    coeffs = jt.top * jt.conj % ell
    ks = np.arange(0, n, 3, dtype=np.int64)
    sums = cyclic_transform(ctx, coeffs, ks)
    vals = lift(ctx, sums * pow(n, -1, ell) % ell, hasse_bound(ft.q) + 1)
    out = np.zeros(ft.q, dtype=np.int64)
    lam = ft.nonzero()
    out[lam] = vals[(3 * ft.ind[lam] % n) // 3]
    return out


def hess_2f1_float(ft: FieldTable, lam: int, tol: float = 1e-6) -> int:
    """Floating-point evaluation of n(lam) with complex roots of unity.

    Debug channel only: independent of the modular embedding, O(q^2).
    Raises if the result is not within ``tol`` of an integer.
    """
    t = cubic_index(ft)
    n = ft.q - 1
    zeta = np.exp(2j * np.pi * np.arange(n) / n)
    x = np.arange(2, ft.q, dtype=np.int64)
    one_minus = np.asarray(ft.sub(1, x))
    keep = one_minus != 0
    a = ft.ind[x[keep]]
    b = ft.ind[one_minus[keep]]
    arg = ft.cube(lam)
    if arg == 0:
        return 0
    k = ft.ind[arg]
    total = 0j
    for j in range(n):
        sign = -1 if j % 2 else 1
        top = sign * zeta[((t + j) * a - j * b) % n].sum()
        conj = sign * zeta[((2 * t + j) * a - j * b) % n].sum()
        total += top * conj * zeta[j * k % n]
    value = total / n
    if abs(value.imag) > tol or abs(value.real - round(value.real)) > tol:
        raise LiftOutOfRange(f"float evaluation {value} is not integral")
    return int(round(value.real))
