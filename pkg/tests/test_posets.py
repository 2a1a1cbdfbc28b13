import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quillen.errors import NotAnActionByAutomorphisms, NotOrderPreserving
from quillen.posets import Poset, PosetMap, beat_point_core, fixed_subposet, \
    join_posets, make_map, order_complex
from quillen.pposets import ap_poset

from conftest import bundled


def poset_from_pairs(n, pairs):
    """Strict order from generating pairs (a < b), transitively closed.

    Relabels along a topological order, since poset ids must form a
    linear extension.  Returns None if the pairs close into a cycle.
    """
    lt = [set() for _ in range(n)]
    for a, b in pairs:
        lt[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in range(n):
            new = set()
            for b in lt[a]:
                new |= lt[b]
            if not new <= lt[a]:
                lt[a] |= new
                changed = True
    for a in range(n):
        if a in lt[a]:
            return None
    order = sorted(range(n), key=lambda a: len({b for b in range(n)
                                                if a in lt[b]}))
    pos = {orig: k for k, orig in enumerate(order)}
    up = [0] * n
    for a in range(n):
        for b in lt[a]:
            up[pos[a]] |= 1 << pos[b]
    return Poset(list(range(n)), up, validate=True)


def brute_chain_counts(P):
    counts = []
    for size in range(1, P.n + 1):
        c = 0
        for combo in itertools.combinations(range(P.n), size):
            if all(P.lt(a, b) for a, b in zip(combo, combo[1:])):
                c += 1
        if c:
            counts.append(c)
        else:
            break
    return counts


def test_chain_poset():
    P = poset_from_pairs(3, [(0, 1), (1, 2)])
    assert P.height() == 2
    assert P.reduced_euler() == 0
    core, _, _ = beat_point_core(P)
    assert core.n == 1


def test_antichain():
    P = poset_from_pairs(4, [])
    assert P.height() == 0
    assert P.reduced_euler() == 3


def test_chain_counts_match_complex():
    P = ap_poset(bundled("sym4"), 2)
    K = order_complex(P)
    assert P.chain_counts() == K.simplex_counts


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        max_size=8))))
def test_random_poset_chain_counts(case):
    n, pairs = case
    pairs = [(a, b) for a, b in pairs if a != b]
    P = poset_from_pairs(n, pairs)
    if P is None:       # the pairs closed into a cycle
        return
    assert P.chain_counts() == brute_chain_counts(P)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        max_size=8))))
def test_random_poset_core_euler(case):
    n, pairs = case
    pairs = [(a, b) for a, b in pairs if a != b]
    P = poset_from_pairs(n, pairs)
    if P is None:
        return
    core, inc, ret = beat_point_core(P)
    assert core.reduced_euler() == P.reduced_euler()
    assert len(inc) == core.n
    assert len(ret) == P.n


def test_join_chain_convolution():
    A = poset_from_pairs(2, [])
    B = poset_from_pairs(3, [(0, 1)])
    J = join_posets([A, B])
    assert J.n == 5
    ca, cb, cj = A.chain_counts(), B.chain_counts(), J.chain_counts()

    def aug(c, k):
        if k == -1:
            return 1
        return c[k] if 0 <= k < len(c) else 0
    for k in range(-1, J.n):
        expect = sum(aug(ca, i) * aug(cb, k - 1 - i) for i in range(-1, k + 1))
        assert aug(cj, k) == expect


def test_join_order():
    A = poset_from_pairs(2, [])
    B = poset_from_pairs(2, [])
    J = join_posets([A, B], tag_elements=True)
    # every element of the first factor lies below every element of the second
    for a in range(2):
        for b in range(2, 4):
            assert J.leq(a, b)
            assert not J.leq(b, a)


def test_induced():
    P = poset_from_pairs(4, [(0, 1), (1, 2), (0, 3)])
    sub, ids = P.induced(np.array([0, 2], dtype=np.int64))
    assert sub.n == 2
    assert sub.leq(0, 1)


def test_make_map_validates():
    P = poset_from_pairs(3, [(0, 1), (0, 2)])
    Q = poset_from_pairs(2, [(0, 1)])
    f = make_map(P, Q, lambda e: Q.elements[0])
    assert list(f.table) == [0, 0, 0]
    # order-reversing target assignment is rejected
    with pytest.raises(NotOrderPreserving):
        PosetMap(P, Q, np.array([1, 0, 0]))


def test_posetmap_compose():
    P = poset_from_pairs(2, [(0, 1)])
    f = PosetMap(P, P, np.array([0, 1]))
    g = f.compose(f)
    assert list(g.table) == [0, 1]


def test_fixed_subposet_validation():
    P = poset_from_pairs(3, [(0, 1)])
    with pytest.raises(NotAnActionByAutomorphisms):
        fixed_subposet(P, [np.array([1, 0, 2])])   # swaps comparable pair
    sub, ids = fixed_subposet(P, [np.array([0, 1, 2])])
    assert sub.n == 3


def test_beat_core_alt5_antichain():
    P = ap_poset(bundled("alt5"), 2)
    core, _, _ = beat_point_core(P)
    assert core.n == 5
    assert core.height() == 0


def test_order_complex_counts():
    P = poset_from_pairs(3, [(0, 1), (0, 2)])
    K = order_complex(P)
    assert K.simplex_counts == [3, 2]
    assert K.dimension() == 1
    assert K.reduced_euler() == 0
