import numpy as np
import pytest

from hessian_hgf.charsum import hasse_bound
from hessian_hgf.errors import OracleScaleExceeded, SingularCurve
from hessian_hgf.ffield import field_for_q
from hessian_hgf.hessian import (
    a_lambda,
    b_lambda,
    cardinality_discrepancies,
    census,
    count_points,
    expected_block_size,
    iso_fingerprint_partition,
    j_invariant,
    three_torsion_count,
    trace,
    trace_all,
    trace_at_zero,
    twist_orbit_key,
    weierstrass_j,
    weierstrass_model,
    weierstrass_points,
    weierstrass_trace,
)


def loop_count(p, lam):
    """Projective points of x^3 + y^3 + z^3 = lam xyz over F_p by plain loops."""
    pts = 0
    for x in range(p):
        for y in range(p):
            if (x**3 + y**3 + 1 - lam * x * y) % p == 0:
                pts += 1
    # z = 0: x^3 + y^3 = 0 with (x : y : 0), y = 1 after scaling
    pts += sum(1 for x in range(p) if (x**3 + 1) % p == 0)
    return pts


def test_count_examples():
    f7 = field_for_q(7)
    assert count_points(f7, 0) == 9
    assert trace(f7, 0) == -1
    with pytest.raises(SingularCurve):
        count_points(f7, 3)
    assert count_points(field_for_q(5), 0) == loop_count(5, 0)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_count_matches_loops(p):
    ft = field_for_q(p)
    for lam in range(p):
        if (lam**3 - 27) % p == 0:
            continue
        assert count_points(ft, lam) == loop_count(p, lam)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 19, 25, 31, 49])
def test_trace_all_agrees_pointwise(q):
    ft = field_for_q(q)
    tt = trace_all(ft)
    assert tt.keys() == [lam for lam in range(q) if ft.cube(lam) != ft.from_int(27)]
    for lam, a in tt.items():
        assert a == trace(ft, lam)
    assert trace_at_zero(ft) == tt[0]


def test_trace_table_shapes():
    assert trace_all(field_for_q(7)).keys() == [0, 1, 2, 4]
    t5 = trace_all(field_for_q(5))
    assert t5.keys() == [0, 1, 2, 4]
    with pytest.raises(SingularCurve):
        t5[3]


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 19, 25, 31, 49])
def test_hasse_and_congruences(q):
    tt = trace_all(field_for_q(q))
    a = tt.traces()
    assert np.all(np.abs(a) <= hasse_bound(q))
    mod = 9 if q % 3 == 1 else 3
    assert np.all((a - q - 1) % mod == 0)


def test_j_examples():
    f7 = field_for_q(7)
    assert j_invariant(f7, 0) == 0
    assert j_invariant(f7, 1) == 0
    assert all(b_lambda(f7, lam) != 0 for lam in range(7))


@pytest.mark.parametrize("q", [5, 11, 17, 23, 29])
def test_q2_mod3_j_zero_has_trace_zero(q):
    ft = field_for_q(q)
    for lam, a in trace_all(ft).items():
        if j_invariant(ft, lam) == 0:
            assert a == 0


def test_q2_mod3_j1728_occurs_exactly_when_p_is_11_mod_12():
    # B_lam = 0 gives lam^3 = 270 +- 162 sqrt(3), solvable iff (3|p) = 1
    from sympy import primerange
    for p in primerange(5, 200):
        if p % 3 != 2:
            continue
        ft = field_for_q(p)
        tt = trace_all(ft)
        hits = [lam for lam in tt.keys() if j_invariant(ft, lam) == ft.from_int(1728)]
        assert [lam for lam in tt.keys() if b_lambda(ft, lam) == 0] == hits
        assert bool(hits) == (p % 12 == 11)
        assert all(tt[lam] == 0 for lam in hits)


@pytest.mark.parametrize("q", [7, 13, 19, 25, 31])
def test_j_zero_iff_a_lambda_vanishes(q):
    ft = field_for_q(q)
    for lam in trace_all(ft).keys():
        assert (j_invariant(ft, lam) == 0) == (a_lambda(ft, lam) == 0)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 25, 31])
def test_weierstrass_model_is_exact(q):
    ft = field_for_q(q)
    tt = trace_all(ft)
    for lam, a in tt.items():
        A, B = weierstrass_model(ft, lam)
        assert weierstrass_j(ft, A, B) == j_invariant(ft, lam)
        assert weierstrass_trace(ft, A, B) == a


def test_weierstrass_model_symbolic_j():
    import sympy as sp
    lam = sp.symbols("lam")
    d = lam / 3
    A = -27 * d * (d**3 + 8)
    B = 54 * (d**6 - 20 * d**3 - 8)
    j = 1728 * 4 * A**3 / (4 * A**3 + 27 * B**2)
    target = lam**3 * (lam**3 + 216) ** 3 / (lam**3 - 27) ** 3
    assert sp.simplify(j - target) == 0


def test_partition_examples():
    f7 = field_for_q(7)
    blocks = iso_fingerprint_partition(f7)
    assert list(blocks.values()) == [[0, 1, 2, 4]]
    assert all(a_lambda(f7, lam) == 0 for lam in (0, 1, 2, 4))


@pytest.mark.parametrize("q", [7, 13, 19, 25, 31])
def test_block_sizes_q1(q):
    ft = field_for_q(q)
    assert cardinality_discrepancies(ft) == []
    assert cardinality_discrepancies(ft, exact=True) == []
    for members in iso_fingerprint_partition(ft).values():
        assert len(members) in (4, 6, 12)


@pytest.mark.parametrize("q", [5, 11, 17, 23])
def test_block_sizes_q2(q):
    ft = field_for_q(q)
    exact = iso_fingerprint_partition(ft, exact=True)
    assert all(len(m) == 1 for m in exact.values())
    # (j, trace) can only merge distinct classes with trace zero
    tt = trace_all(ft)
    for members in iso_fingerprint_partition(ft).values():
        if len(members) > 1:
            assert all(tt[lam] == 0 for lam in members)


def test_q5_fingerprint_collision():
    ft = field_for_q(5)
    blocks = iso_fingerprint_partition(ft)
    assert sorted(sorted(b) for b in blocks.values() if len(b) > 1) == [[0, 4]]
    assert expected_block_size(ft, 0) == 1


def test_twist_orbit_key_is_invariant():
    ft = field_for_q(13)
    A, B = 3, 5
    k = twist_orbit_key(ft, A, B)
    for u in range(1, 13):
        assert twist_orbit_key(ft, ft.mul(ft.power(u, 4), A), ft.mul(ft.power(u, 6), B)) == k


def test_census_scale_guard():
    with pytest.raises(OracleScaleExceeded):
        census(field_for_q(67))


@pytest.mark.parametrize("q", [5, 7, 13])
def test_census_is_consistent(q):
    ft = field_for_q(q)
    cen = census(ft)
    assert sum(c.size for c in cen.classes) + cen.singular_pairs == q * q
    for c in cen.classes:
        assert c.t3 in (1, 3, 9)
        a, b = c.rep
        for u in (2, 3):
            a2, b2 = ft.mul(ft.power(u, 4), a), ft.mul(ft.power(u, 6), b)
            assert weierstrass_trace(ft, a2, b2) == c.trace
            assert weierstrass_j(ft, a2, b2) == c.j
            assert three_torsion_count(ft, a2, b2) == c.t3


def test_weierstrass_trace_matches_points():
    ft = field_for_q(11)
    for a, b in [(1, 1), (2, 7), (0, 3)]:
        assert weierstrass_trace(ft, a, b) == 11 + 1 - (len(weierstrass_points(ft, a, b)) + 1)


def test_hessian_traces_in_census():
    # q = 7: Hessian traces are realised by classes with full 3-torsion
    ft = field_for_q(7)
    cen = census(ft)
    full = {c.trace for c in cen.classes if c.t3 == 9}
    assert set(trace_all(ft).traces().tolist()) <= full
