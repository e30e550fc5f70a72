"""Hessian curves x^3 + y^3 + 1 = lam*x*y: point counts, traces, classes.

Also holds the brute-force census of short Weierstrass curves used as an
independent oracle for the class-number formulas at small q.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import OracleScaleExceeded, SingularCurve
from .ffield import FieldTable, cube_data

CENSUS_MAX_Q = 64


def is_singular(ft: FieldTable, lam: int) -> bool:
    return ft.cube(lam) == ft.from_int(27)


def _check(ft, lam):
    if is_singular(ft, lam):
        raise SingularCurve(f"lam^3 = 27 for lam = {ft.coords(lam)} over F_{ft.q}")


@dataclass(frozen=True)
class HessianCurve:
    ft: FieldTable
    lam: int

    @property
    def singular(self) -> bool:
        return is_singular(self.ft, self.lam)


@dataclass
class TraceTable:
    """Frobenius traces a(lam) for every nonsingular lam.

    ``values`` is indexed by field code; ``valid`` marks lam^3 != 27.
    """
    q: int
    values: np.ndarray
    valid: np.ndarray

    def __getitem__(self, lam):
        if not self.valid[lam]:
            raise SingularCurve(f"no trace at singular parameter {lam}")
        return int(self.values[lam])

    def __len__(self):
        return int(self.valid.sum())

    def keys(self):
        return [int(x) for x in np.nonzero(self.valid)[0]]

    def items(self):
        return [(lam, int(self.values[lam])) for lam in self.keys()]

    def traces(self) -> np.ndarray:
        return self.values[self.valid]


def count_points(ft: FieldTable, lam: int) -> int:
    """Projective F_q-points on the Hessian curve, by direct enumeration."""
    _check(ft, lam)
    xs = ft.elements()
    c = np.asarray(ft.cube(xs))
    lhs = ft.add(ft.add(c[:, None], c[None, :]), 1)
    rhs = ft.mul(lam, ft.mul(xs[:, None], xs[None, :]))
    affine = int(np.count_nonzero(lhs == rhs))
    roots, _ = cube_data(ft)
    return affine + len(roots)


def trace(ft: FieldTable, lam: int) -> int:
    return ft.q + 1 - count_points(ft, lam)


def trace_all(ft: FieldTable, chunk: int = 256) -> TraceTable:
    """Traces of every Hessian curve from one O(q^2) histogram.

    Points with xy != 0 are binned by lam = (x^3 + y^3 + 1)/(xy); the xy = 0
    points (2 * #{y : y^3 = -1}) and the points at infinity (#{w : w^3 = 1})
    do not depend on lam.
    """
    q, n = ft.q, ft.order
    roots, cube_count = cube_data(ft)
    c = cube_count(ft.from_int(-1))
    nz = ft.nonzero()
    cubes = np.asarray(ft.cube(nz))
    hist = np.zeros(q, dtype=np.int64)
    for s in range(0, len(nz), chunk):
        xs = nz[s:s + chunk]
        num = ft.add(ft.add(cubes[s:s + chunk, None], cubes[None, :]), 1)
        num = np.asarray(num)
        logs = (ft.ind[num] - ft.ind[xs][:, None] - ft.ind[nz][None, :]) % n
        lam = np.where(num == 0, 0, ft.exp[logs])
        hist += np.bincount(lam.ravel(), minlength=q)
    values = q + 1 - (hist + 2 * c + len(roots))
    valid = np.asarray(ft.cube(ft.elements())) != ft.from_int(27)
    values = np.where(valid, values, 0)
    return TraceTable(q, values, valid)


def trace_at_zero(ft: FieldTable) -> int:
    """a(0) for x^3 + y^3 + 1 = 0 in O(q): pair the cube-root counts of u and -1-u."""
    roots, cube_count = cube_data(ft)
    u = ft.elements()
    affine = int(np.sum(np.asarray(cube_count(u)) * np.asarray(cube_count(ft.sub(ft.from_int(-1), u)))))
    return ft.q + 1 - affine - len(roots)


def j_invariant(ft: FieldTable, lam: int) -> int:
    """lam^3 (lam^3 + 216)^3 / (lam^3 - 27)^3 in F_q."""
    _check(ft, lam)
    l3 = ft.cube(lam)
    num = ft.mul(l3, ft.cube(ft.add(l3, ft.from_int(216))))
    den = ft.cube(ft.sub(l3, ft.from_int(27)))
    return ft.div(num, den)


def a_lambda(ft: FieldTable, lam: int) -> int:
    """A_lam = lam (lam^3 + 6^3); vanishes exactly when j = 0."""
    return ft.mul(lam, ft.add(ft.cube(lam), ft.from_int(216)))


def b_lambda(ft: FieldTable, lam: int) -> int:
    """B_lam = lam^6 - 540 lam^3 - 18^3; vanishes exactly when j = 1728."""
    l3 = ft.cube(lam)
    return ft.sub(ft.sub(ft.mul(l3, l3), ft.mul(ft.from_int(540), l3)), ft.from_int(18**3))


def weierstrass_model(ft: FieldTable, lam: int) -> tuple[int, int]:
    """Coefficients (A, B) of y^2 = x^3 + A x + B isomorphic to E_lam.

    With d = lam/3: A = -27 d (d^3 + 8), B = 54 (d^6 - 20 d^3 - 8).
    """
    _check(ft, lam)
    d = ft.div(lam, ft.from_int(3))
    d3 = ft.cube(d)
    A = ft.mul(ft.from_int(-27), ft.mul(d, ft.add(d3, ft.from_int(8))))
    B = ft.mul(ft.from_int(54), ft.sub(ft.sub(ft.mul(d3, d3), ft.mul(ft.from_int(20), d3)), ft.from_int(8)))
    return A, B


def twist_orbit_key(ft: FieldTable, A, B):
    """Canonical representative of {(u^4 A, u^6 B) : u in F_q^x}.

    Returns the minimal code ``A' * q + B'`` over the orbit; works on arrays.
    """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    n = ft.order
    best = None
    indA, indB = ft.ind[A], ft.ind[B]
    for k in range(n):
        a2 = np.where(A == 0, 0, ft.exp[(indA + 4 * k) % n])
        b2 = np.where(B == 0, 0, ft.exp[(indB + 6 * k) % n])
        key = a2 * ft.q + b2
        best = key if best is None else np.minimum(best, key)
    return int(best) if best.ndim == 0 else best


def iso_fingerprint_partition(ft: FieldTable, traces: TraceTable | None = None, exact: bool = False):
    """Partition the nonsingular lam by isomorphism fingerprint.

    With ``exact=False`` the key is ``(j, trace)``.  With ``exact=True`` the
    key is the twist orbit of the Weierstrass model, which decides
    F_q-isomorphism exactly.  Returns ``{key: [lam, ...]}``.
    """
    if traces is None:
        traces = trace_all(ft)
    lams = np.array(traces.keys(), dtype=np.int64)
    if exact:
        A, B = zip(*(weierstrass_model(ft, int(l)) for l in lams))
        keys = twist_orbit_key(ft, np.array(A), np.array(B))
        keys = [int(k) for k in np.atleast_1d(keys)]
    else:
        keys = [(j_invariant(ft, int(l)), traces[int(l)]) for l in lams]
    blocks = defaultdict(list)
    for key, lam in zip(keys, lams):
        blocks[key].append(int(lam))
    return dict(blocks)


def expected_block_size(ft: FieldTable, lam: int) -> int:
    """Size of the isomorphism set of E_lam predicted by the cardinality lemmas."""
    if ft.q % 3 == 2:
        return 1
    if a_lambda(ft, lam) == 0:
        return 4
    if b_lambda(ft, lam) == 0:
        return 6
    return 12


def cardinality_discrepancies(ft: FieldTable, exact: bool = False, traces: TraceTable | None = None):
    """List of (lam, block size, expected size) where the two disagree."""
    blocks = iso_fingerprint_partition(ft, traces=traces, exact=exact)
    bad = []
    for members in blocks.values():
        for lam in members:
            want = expected_block_size(ft, lam)
            if len(members) != want:
                bad.append((lam, len(members), want))
    return sorted(bad)


# ---------------------------------------------------------------------------
# Weierstrass census oracle


@dataclass
class CurveClass:
    rep: tuple[int, int]
    j: int
    trace: int
    t3: int
    size: int


@dataclass
class CurveCensus:
    q: int
    classes: list[CurveClass] = field(default_factory=list)
    singular_pairs: int = 0

    def count(self, trace: int, t3_min: int = 1) -> int:
        return sum(1 for c in self.classes if c.trace == trace and c.t3 >= t3_min)


def _sqrt_table(ft: FieldTable):
    roots = defaultdict(list)
    for y in range(ft.q):
        roots[ft.mul(y, y)].append(y)
    return roots


def weierstrass_points(ft: FieldTable, a: int, b: int, roots=None):
    """Affine points of y^2 = x^3 + a x + b (point at infinity excluded)."""
    roots = roots or _sqrt_table(ft)
    xs = ft.elements()
    rhs = ft.add(ft.add(ft.cube(xs), ft.mul(a, xs)), b)
    return [(int(x), y) for x, f in zip(xs, rhs) for y in roots.get(int(f), ())]


def weierstrass_trace(ft: FieldTable, a: int, b: int) -> int:
    xs = ft.elements()
    rhs = np.asarray(ft.add(ft.add(ft.cube(xs), ft.mul(a, xs)), b))
    sq = np.asarray(ft.is_square(rhs))
    affine = int(np.sum(np.where(rhs == 0, 1, np.where(sq, 2, 0))))
    return ft.q - affine


def ec_add(ft: FieldTable, a: int, P, Q):
    """Group law on y^2 = x^3 + a x + b; None is the point at infinity."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if ft.add(y1, y2) == 0:
            return None
        num = ft.add(ft.mul(3, ft.mul(x1, x1)), a)
        slope = ft.div(num, ft.mul(2, y1))
    else:
        slope = ft.div(ft.sub(y2, y1), ft.sub(x2, x1))
    x3 = ft.sub(ft.sub(ft.mul(slope, slope), x1), x2)
    y3 = ft.sub(ft.mul(slope, ft.sub(x1, x3)), y1)
    return (x3, y3)


def three_torsion_count(ft: FieldTable, a: int, b: int, roots=None) -> int:
    """#{P in E(F_q) : 3P = O}, the point at infinity included."""
    count = 1
    for P in weierstrass_points(ft, a, b, roots):
        if ec_add(ft, a, ec_add(ft, a, P, P), P) is None:
            count += 1
    return count


def weierstrass_j(ft: FieldTable, a: int, b: int) -> int:
    a3 = ft.mul(4, ft.cube(a))
    den = ft.add(a3, ft.mul(ft.from_int(27), ft.mul(b, b)))
    return ft.div(ft.mul(ft.from_int(1728), a3), den)


def census(ft: FieldTable) -> CurveCensus:
    """All isomorphism classes of nonsingular y^2 = x^3 + a x + b over F_q.

    Classes are orbits of (a, b) ~ (u^4 a, u^6 b).  Each class records its
    trace from a direct point count and its 3-torsion count from the group
    law on every rational point.
    """
    q = ft.q
    if q > CENSUS_MAX_Q:
        raise OracleScaleExceeded(f"census limited to q <= {CENSUS_MAX_Q}, got {q}")
    aa, bb = np.meshgrid(ft.elements(), ft.elements(), indexing="ij")
    aa, bb = aa.ravel(), bb.ravel()
    disc = np.asarray(ft.add(ft.mul(4, ft.cube(aa)), ft.mul(ft.from_int(27), ft.mul(bb, bb))))
    ok = disc != 0
    keys = twist_orbit_key(ft, aa[ok], bb[ok])
    uniq, sizes = np.unique(keys, return_counts=True)
    roots = _sqrt_table(ft)
    out = CurveCensus(q=q, singular_pairs=int((~ok).sum()))
    for key, size in zip(uniq, sizes):
        a, b = int(key) // q, int(key) % q
        out.classes.append(CurveClass(
            rep=(a, b),
            j=weierstrass_j(ft, a, b),
            trace=weierstrass_trace(ft, a, b),
            t3=three_torsion_count(ft, a, b, roots),
            size=int(size),
        ))
    return out
