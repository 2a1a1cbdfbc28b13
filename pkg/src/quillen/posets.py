"""Finite posets, order complexes, beat-point reduction.

A Poset stores, for each element id, the bitset of strictly larger ids.
Ids are always assigned along a linear extension (i < j whenever
element i is below element j), which makes chains id-increasing and
keeps joins and induced subposets cheap.

The order complex K(P) has the nonempty chains of P as simplices.  Beat
points (elements with a unique upper or unique lower cover) can be
removed one at a time without changing the homotopy type of K(P); the
composite retraction is returned alongside the reduced poset so induced
maps can be transported to the core.
"""

import heapq

import numpy as np

from .bits import iter_bits
from .errors import (
    IndexOutOfRange,
    NotAnActionByAutomorphisms,
    NotAntisymmetric,
    NotOrderPreserving,
    NotTransitiveAfterClosure,
    ParentMismatch,
    SimplexCapExceeded,
)

DEFAULT_SIMPLEX_CAP = 50_000_000


class Poset:
    """Finite poset with ids in a linear extension."""

    def __init__(self, elements, up, validate=False):
        self.elements = tuple(elements)
        self.up = list(up)
        self.n = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != self.n:
            raise NotAntisymmetric("duplicate element labels")
        self._down = None
        self._covers = None
        self._cache = {}
        if validate:
            self._validate()

    def _validate(self):
        for i in range(self.n):
            if self.up[i] >> self.n:
                raise IndexOutOfRange(f"relation bit beyond n at {i}")
            if (self.up[i] >> i) & 1:
                raise NotAntisymmetric(f"element {i} above itself")
            if self.up[i] & ((1 << i) - 1):
                raise NotAntisymmetric(f"ids not a linear extension at {i}")
            acc = 0
            for j in iter_bits(self.up[i]):
                acc |= self.up[j]
            if acc & ~self.up[i]:
                raise NotTransitiveAfterClosure(f"transitivity fails at {i}")

    def __repr__(self):
        return f"<Poset n={self.n}>"

    def leq(self, i, j):
        return i == j or bool((self.up[i] >> j) & 1)

    def lt(self, i, j):
        return bool((self.up[i] >> j) & 1)

    @property
    def down(self):
        if self._down is None:
            down = [0] * self.n
            for i in range(self.n):
                for j in iter_bits(self.up[i]):
                    down[j] |= 1 << i
            self._down = down
        return self._down

    def covers(self):
        """covers()[i] = sorted list of upper covers of i."""
        if self._covers is None:
            out = []
            for i in range(self.n):
                cov = []
                m = self.up[i]
                while m:
                    j = (m & -m).bit_length() - 1  # smallest id = minimal
                    cov.append(j)
                    m &= ~((1 << j) | self.up[j])
                out.append(cov)
            self._covers = out
        return self._covers

    def lower_covers(self):
        cov = self.covers()
        out = [[] for _ in range(self.n)]
        for i in range(self.n):
            for j in cov[i]:
                out[j].append(i)
        return out

    def cover_edges(self):
        return [(i, j) for i in range(self.n) for j in self.covers()[i]]

    def induced(self, ids):
        """Induced subposet on the given ids (any order; sorted internally).

        Returns (subposet, inc) where inc[k] = original id of element k.
        """
        ids = np.unique(np.asarray(ids, dtype=np.int64))
        if ids.size and (ids[0] < 0 or ids[-1] >= self.n):
            raise IndexOutOfRange("induced ids out of range")
        newid = {int(o): k for k, o in enumerate(ids)}
        mask = 0
        for o in ids:
            mask |= 1 << int(o)
        up = []
        for o in ids:
            m = self.up[int(o)] & mask
            acc = 0
            for j in iter_bits(m):
                acc |= 1 << newid[j]
            up.append(acc)
        sub = Poset([self.elements[int(o)] for o in ids], up)
        return sub, ids

    def chain_counts(self):
        """Number of chains per dimension (dim d = chains with d+1 elements)."""
        if "chain_counts" in self._cache:
            return self._cache["chain_counts"]
        down = self.down
        counts = []
        level = [1] * self.n
        while any(level):
            counts.append(sum(level))
            nxt = [0] * self.n
            for z in range(self.n):
                if not down[z]:
                    continue
                s = 0
                for w in iter_bits(down[z]):
                    s += level[w]
                nxt[z] = s
            level = nxt
        self._cache["chain_counts"] = counts
        return counts

    def reduced_euler(self):
        chi = -1
        for d, c in enumerate(self.chain_counts()):
            chi += c if d % 2 == 0 else -c
        return chi

    def height(self):
        return len(self.chain_counts()) - 1


def close_relation(n, pairs):
    """Transitive closure of a relation given as (small, large) id pairs.

    Returns up bitsets; raises NotAntisymmetric on a cycle.  Ids must
    already be a linear extension candidate order; pairs may go either
    way and are reoriented, with i == j pairs rejected.
    """
    direct = [0] * n
    for a, b in pairs:
        if a == b:
            raise NotAntisymmetric(f"element {a} related to itself")
        direct[a] |= 1 << b
    # DFS closure with cycle detection
    up = [None] * n
    state = [0] * n  # 0 new, 1 active, 2 done
    for start in range(n):
        if state[start] == 2:
            continue
        stack = [(start, iter_bits(direct[start]))]
        state[start] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if state[w] == 1:
                    raise NotAntisymmetric(f"cycle through elements {v} and {w}")
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter_bits(direct[w])))
                    advanced = True
                    break
            if not advanced:
                acc = direct[v]
                for w in iter_bits(direct[v]):
                    acc |= up[w]
                up[v] = acc
                state[v] = 2
                stack.pop()
    return up


def build_poset(elements, pairs, close=True):
    """Poset from element labels and order pairs (label_small, label_large).

    With close=True the transitive closure is taken; otherwise the input
    must already be transitively closed (NotTransitiveAfterClosure).
    Elements are reordered along a linear extension; original label order
    breaks ties deterministically.
    """
    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    if len(pos) != len(elements):
        raise NotAntisymmetric("duplicate element labels")
    idx_pairs = []
    for a, b in pairs:
        if a not in pos or b not in pos:
            raise IndexOutOfRange(f"pair ({a!r}, {b!r}) uses unknown elements")
        idx_pairs.append((pos[a], pos[b]))
    n = len(elements)
    up0 = close_relation(n, idx_pairs)
    if not close:
        for i in range(n):
            acc = 0
            for a, b in idx_pairs:
                if a == i:
                    acc |= 1 << b
            if acc != up0[i]:
                raise NotTransitiveAfterClosure(
                    f"input relation not transitively closed at {elements[i]!r}")
    # topological order: Kahn with smallest original index first
    indeg = [0] * n
    for i in range(n):
        for j in iter_bits(up0[i]):
            indeg[j] += 1
    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        i = heapq.heappop(heap)
        order.append(i)
        for j in iter_bits(up0[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    rank = {o: k for k, o in enumerate(order)}
    up = [0] * n
    for i in range(n):
        acc = 0
        for j in iter_bits(up0[i]):
            acc |= 1 << rank[j]
        up[rank[i]] = acc
    return Poset([elements[o] for o in order], up)


def join_posets(posets, tag_elements=True):
    """Join: disjoint union with everything in an earlier factor below
    everything in a later factor.  Elements become (factor_index, label)
    unless tag_elements is False and labels are already unique."""
    offsets = []
    total = 0
    for P in posets:
        offsets.append(total)
        total += P.n
    full = (1 << total) - 1
    elements = []
    up = []
    for k, P in enumerate(posets):
        off = offsets[k]
        later = full & ~((1 << (off + P.n)) - 1)
        for i in range(P.n):
            elements.append((k, P.elements[i]) if tag_elements else P.elements[i])
            up.append((P.up[i] << off) | later)
    return Poset(elements, up)


class SimplicialComplex:
    """Simplices per dimension, each a strictly increasing tuple of vertex ids."""

    def __init__(self, dims):
        self.dims = [list(d) for d in dims]
        while self.dims and not self.dims[-1]:
            self.dims.pop()
        self._index = None

    @property
    def simplex_counts(self):
        return [len(d) for d in self.dims]

    def dimension(self):
        return len(self.dims) - 1

    def size(self):
        return sum(len(d) for d in self.dims)

    def index_maps(self):
        if self._index is None:
            self._index = [
                {s: k for k, s in enumerate(d)} for d in self.dims]
        return self._index

    def reduced_euler(self):
        chi = -1
        for d, simps in enumerate(self.dims):
            chi += len(simps) if d % 2 == 0 else -len(simps)
        return chi

    def union(self, other):
        dims = []
        for d in range(max(len(self.dims), len(other.dims))):
            a = self.dims[d] if d < len(self.dims) else []
            b = other.dims[d] if d < len(other.dims) else []
            dims.append(sorted(set(a) | set(b)))
        return SimplicialComplex(dims)

    def is_subcomplex_of(self, other):
        oi = other.index_maps()
        for d, simps in enumerate(self.dims):
            if d >= len(other.dims):
                return len(simps) == 0
            idx = oi[d]
            if any(s not in idx for s in simps):
                return False
        return True


def order_complex(P, cap=DEFAULT_SIMPLEX_CAP):
    """All nonempty chains of P, as a SimplicialComplex over P's ids."""
    up = P.up
    dims = []
    total = 0
    level = [(i,) for i in range(P.n)]
    while level:
        total += len(level)
        if total > cap:
            raise SimplexCapExceeded(
                f"order complex exceeds {cap} simplices")
        dims.append(sorted(level))
        nxt = []
        for ch in level:
            for j in iter_bits(up[ch[-1]]):
                nxt.append(ch + (j,))
        level = nxt
    return SimplicialComplex(dims)


# -- poset maps -----------------------------------------------------------------


class PosetMap:
    """Order-preserving map between posets, stored as an id table."""

    def __init__(self, source, target, table, validate=True):
        self.source = source
        self.target = target
        self.table = np.asarray(table, dtype=np.int64)
        if self.table.shape != (source.n,):
            raise NotOrderPreserving("table length does not match source")
        if self.table.size and (self.table.min() < 0 or self.table.max() >= target.n):
            raise IndexOutOfRange("map table value out of range")
        if validate:
            up_s, up_t = source.up, target.up
            t = [int(v) for v in self.table]
            for i in range(source.n):
                fi = t[i]
                for j in iter_bits(up_s[i]):
                    fj = t[j]
                    if fi != fj and not ((up_t[fi] >> fj) & 1):
                        raise NotOrderPreserving(
                            f"{i} < {j} maps to incomparable {fi}, {fj}")

    def __call__(self, i):
        return int(self.table[i])

    def compose(self, inner):
        """self ∘ inner."""
        if inner.target is not self.source:
            raise ParentMismatch("composition type mismatch")
        return PosetMap(inner.source, self.target,
                        self.table[inner.table], validate=False)

    def is_identity(self):
        return self.source is self.target and np.array_equal(
            self.table, np.arange(self.source.n))


def make_map(source, target, fn):
    """PosetMap from a label function; fn may also return a target id."""
    table = np.empty(source.n, dtype=np.int64)
    for i, e in enumerate(source.elements):
        v = fn(e)
        if v in target.index:
            table[i] = target.index[v]
        elif isinstance(v, (int, np.integer)):
            table[i] = int(v)
        else:
            raise IndexOutOfRange(f"image {v!r} not in target poset")
    return PosetMap(source, target, table)


def check_action_tables(P, tables):
    """Validate that each table is an order-automorphism of P."""
    ident = np.arange(P.n)
    for t in tables:
        t = np.asarray(t)
        if t.shape != (P.n,) or not np.array_equal(np.sort(t), ident):
            raise NotAnActionByAutomorphisms("table is not a bijection on ids")
        for i in range(P.n):
            img = 0
            for j in iter_bits(P.up[i]):
                img |= 1 << int(t[j])
            if img != P.up[int(t[i])]:
                raise NotAnActionByAutomorphisms(
                    f"table does not preserve order at {i}")


def fixed_subposet(P, tables, validate=True):
    """Induced subposet of points fixed by every table.

    Returns (subposet, inc ids array)."""
    if validate:
        check_action_tables(P, tables)
    fixed = np.arange(P.n)
    for t in tables:
        t = np.asarray(t)
        fixed = fixed[t[fixed] == fixed]
    return P.induced(fixed)


# -- beat point reduction ----------------------------------------------------------


def beat_point_core(P):
    """Remove beat points until none remain.

    Returns (core, inc, ret): core the reduced Poset, inc[k] = original id
    of core element k, ret[i] = core id that original element i retracts
    to.  Removal order is deterministic (smallest eligible id first), and
    K(core) is homotopy equivalent to K(P) with ret the induced retraction.
    """
    n = P.n
    upc = [set(c) for c in P.covers()]
    downc = [set() for _ in range(n)]
    for i in range(n):
        for j in upc[i]:
            downc[j].add(i)
    alive_bits = (1 << n) - 1
    alive = [True] * n
    ret_ptr = list(range(n))
    heap = list(range(n))
    heapq.heapify(heap)

    def test_and_remove(x):
        nonlocal alive_bits
        if len(upc[x]) == 1:
            u = next(iter(upc[x]))
            partners = downc[x]
            other = u
        elif len(downc[x]) == 1:
            d = next(iter(downc[x]))
            partners = upc[x]
            other = d
        else:
            return []
        ret_ptr[x] = other
        alive[x] = False
        alive_bits &= ~(1 << x)
        up_beat = len(upc[x]) == 1
        for q in list(upc[x]):
            downc[q].discard(x)
        for q in list(downc[x]):
            upc[q].discard(x)
        touched = set(partners)
        touched.add(other)
        # new covers: between each partner and `other`
        for q in partners:
            a, b = (q, other) if up_beat else (other, q)
            if (P.up[a] & P.down[b] & alive_bits) == 0:
                upc[a].add(b)
                downc[b].add(a)
        return touched

    while heap:
        x = heapq.heappop(heap)
        if not alive[x]:
            continue
        touched = test_and_remove(x)
        for q in touched:
            if alive[q]:
                heapq.heappush(heap, q)

    kept = np.array([i for i in range(n) if alive[i]], dtype=np.int64)
    core, inc = P.induced(kept)
    coreid = {int(o): k for k, o in enumerate(kept)}
    ret = np.empty(n, dtype=np.int64)
    for i in range(n):
        j = i
        seen = []
        while not alive[j]:
            seen.append(j)
            j = ret_ptr[j]
        for s in seen:
            ret_ptr[s] = j
        ret[i] = coreid[j]
    return core, inc, ret
