import numpy as np
import pytest

from quillen.errors import MatrixCapExceeded, NotACover
from quillen.homology import RawComplex, betti_of_complex, betti_of_poset, \
    induced_map, kunneth_check, mv_rank_audit, sparse_rank
from quillen.posets import Poset, PosetMap, join_posets, make_map, \
    order_complex
from quillen.pposets import ap_poset, bouc_poset

from conftest import bundled


def antichain(n):
    return Poset(list(range(n)), [0] * n)


def test_betti_ap_small():
    # the four standing small cases
    assert betti_of_poset(ap_poset(bundled("sym4"), 2)).is_zero()
    bv = betti_of_poset(ap_poset(bundled("alt5"), 2))
    assert (bv.get(0), bv.get(1)) == (4, 0)
    bv = betti_of_poset(ap_poset(bundled("sym5"), 2))
    assert (bv.get(0), bv.get(1)) == (0, 16)
    bv = betti_of_poset(ap_poset(bundled("d10"), 2))
    assert bv.get(0) == 4


def test_betti_bouc_small():
    B = bouc_poset(bundled("sym4"), 2)
    assert B.n == 4
    assert betti_of_poset(B).is_zero()
    B = bouc_poset(bundled("sym5"), 2)
    assert B.n == 30
    bv = betti_of_poset(B)
    assert (bv.get(0), bv.get(1)) == (0, 16)
    B = bouc_poset(bundled("sym5"), 3)
    assert B.reduced_euler() == 9
    assert betti_of_poset(B).get(0) == 9


def test_spheres_by_joins():
    # n-fold join of two-point antichains is an (n-1)-sphere
    s0 = antichain(2)
    assert betti_of_poset(s0).get(0) == 1
    s1 = join_posets([s0, antichain(2)])
    bv = betti_of_poset(s1)
    assert (bv.get(0), bv.get(1)) == (0, 1)
    s2 = join_posets([s1, antichain(2)])
    bv = betti_of_poset(s2)
    assert (bv.get(0), bv.get(1), bv.get(2)) == (0, 0, 1)


def test_empty_poset():
    E = antichain(0)
    bv = betti_of_poset(E)
    assert bv.minus1 == 1
    assert bv.chi == -1
    assert bv.top_degree() == -1


def test_zero_vector_top_degree():
    bv = betti_of_poset(ap_poset(bundled("sym4"), 2))
    assert bv.top_degree() is None


def test_kunneth_including_empty():
    rep = kunneth_check(antichain(3), antichain(2))
    assert rep.ok
    rep = kunneth_check(antichain(0), antichain(2))
    assert rep.ok
    rep = kunneth_check(ap_poset(bundled("sym4"), 2),
                        ap_poset(bundled("alt5"), 2))
    assert rep.ok


def test_induced_identity(ap2_sym5):
    f = PosetMap(ap2_sym5, ap2_sym5, np.arange(ap2_sym5.n, dtype=np.int64))
    rep = induced_map(f)
    assert rep.rank(1) == 16
    assert rep.mono_through(1) and rep.epi_through(1)
    assert not rep.is_zero()


def test_induced_zero_inclusion(sym5, ap2_sym5):
    from quillen.groups import detect_components
    comps, _ = detect_components(sym5)
    apA = ap_poset(comps[0], 2)
    f = make_map(apA, ap2_sym5, lambda E: E)
    rep = induced_map(f)
    assert rep.is_zero()
    assert rep.source_betti.get(0) == 4
    assert rep.target_betti.get(1) == 16


def test_induced_collapse_to_point():
    P = antichain(3)
    Q = antichain(1)
    f = make_map(P, Q, lambda e: Q.elements[0])
    rep = induced_map(f)
    assert rep.is_zero()


def test_dd_zero_and_euler(ap2_sym5):
    K = order_complex(ap2_sym5)
    raw = RawComplex.from_simplicial(K)
    raw.verify_dd_zero(sample=10 ** 9)
    assert raw.euler() == K.reduced_euler()


def test_sparse_rank_small():
    # rank of [[1,2],[2,4]] is 1, exactly
    cols = [[(0, 1), (1, 2)], [(0, 2), (1, 4)]]
    assert sparse_rank(cols) == 1
    cols = [[(0, 1)], [(1, 1)]]
    assert sparse_rank(cols) == 2


def test_work_cap():
    P = ap_poset(bundled("sym5"), 2)
    with pytest.raises(MatrixCapExceeded):
        betti_of_poset(Poset(P.elements, P.up), work_cap=1, reduce_first=False)


def test_mv_rank_audit(sym4):
    # cover the degree-4 poset by the members meeting the normal Klein
    # subgroup and the members not inside it
    U = ap_poset(sym4, 2)
    V = sym4.group.subgroup_from_rows([[1, 0, 3, 2], [2, 3, 0, 1]])
    ids_Y = np.array([i for i, E in enumerate(U.elements)
                      if np.intersect1d(E.midx, V.midx).size > 1],
                     dtype=np.int64)
    ids_Z = np.array([i for i, E in enumerate(U.elements)
                      if not E.is_subset_of(V)], dtype=np.int64)
    audit = mv_rank_audit(U, ids_Y, ids_Z)
    assert audit.ok
    assert audit.chi_additive


def test_mv_not_a_cover(sym4):
    U = ap_poset(sym4, 2)
    with pytest.raises(NotACover):
        mv_rank_audit(U, np.arange(3), np.arange(2, 5))
