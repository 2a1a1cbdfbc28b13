"""Exact rational homology of simplicial complexes, and induced maps.

All homology here is reduced and over Q, computed from integer boundary
matrices with exact arithmetic (no floating point anywhere).  Ranks come
from a sparse elimination that first runs a coreduction pass (repeatedly
consuming rows and columns with a single unit entry, which creates no
fill), then falls back to fraction-free Bareiss elimination with
Markowitz-style pivoting.

Induced maps on homology are extracted two ways:
  * rank profiles via the mapping cone of the chain map (works at scale,
    returns ranks only);
  * explicit matrices via column reduction over Q on small complexes.
Both routes are kept side by side; their agreement is a test invariant.
"""

import heapq
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import MatrixCapExceeded, NotACover
from .posets import SimplicialComplex, order_complex

DEFAULT_WORK_CAP = 400_000_000


def thread_count():
    """Worker count for independent eliminations (QG_THREADS, default 1)."""
    try:
        return max(1, int(os.environ.get("QG_THREADS", "1")))
    except ValueError:
        return 1


# -- raw chain complexes ---------------------------------------------------------


class RawComplex:
    """Integer chain complex given by cell counts and boundary columns.

    counts maps degree -> number of cells, cols maps degree k -> list of
    columns of the boundary C_k -> C_{k-1}, each column a list of
    (row, value).  Augmented simplicial complexes store the empty simplex
    in degree -1.
    """

    def __init__(self, counts, cols):
        self.counts = dict(counts)
        self.cols = dict(cols)

    @classmethod
    def from_simplicial(cls, K):
        counts = {-1: 1}
        cols = {}
        for d, simps in enumerate(K.dims):
            counts[d] = len(simps)
        if K.dims:
            cols[0] = [[(0, 1)] for _ in K.dims[0]]
        idx_maps = K.index_maps()
        for k in range(1, len(K.dims)):
            idx = idx_maps[k - 1]
            level = []
            for s in K.dims[k]:
                col = []
                sign = 1
                for t in range(len(s)):
                    face = s[:t] + s[t + 1:]
                    col.append((idx[face], sign))
                    sign = -sign
                level.append(col)
            cols[k] = level
        return cls(counts, cols)

    def count(self, k):
        return self.counts.get(k, 0)

    def columns(self, k):
        return self.cols.get(k, [])

    @property
    def top(self):
        live = [k for k, c in self.counts.items() if c]
        return max(live) if live else -2

    @property
    def bottom(self):
        live = [k for k, c in self.counts.items() if c]
        return min(live) if live else -1

    def euler(self):
        """Alternating sum of cell counts over every stored degree."""
        return sum(c if k % 2 == 0 else -c for k, c in self.counts.items())

    def verify_dd_zero(self, sample=2000):
        """Check composite boundaries vanish, on a deterministic sample."""
        for k in sorted(self.cols):
            if k - 1 not in self.cols:
                continue
            cols_k = self.cols[k]
            cols_km1 = self.cols[k - 1]
            n = len(cols_k)
            step = max(1, n // max(1, sample))
            for j in range(0, n, step):
                acc = {}
                for i, v in cols_k[j]:
                    for i2, v2 in cols_km1[i]:
                        acc[i2] = acc.get(i2, 0) + v * v2
                assert all(v == 0 for v in acc.values()), \
                    f"boundary composite nonzero at degree {k}, column {j}"


# -- sparse exact rank ------------------------------------------------------------


def sparse_rank(columns, work_cap=DEFAULT_WORK_CAP):
    """Rank over Q of an integer matrix given as columns of (row, val).

    Unit coreduction first (no fill), then fraction-free elimination with
    pivots chosen greedily by fill cost, preferring unit entries.  Raises
    MatrixCapExceeded when the update count passes work_cap.
    """
    cols = {}
    rows = {}
    for j, col in enumerate(columns):
        d = {}
        for i, v in col:
            if v:
                d[i] = d.get(i, 0) + v
        d = {i: v for i, v in d.items() if v}
        if d:
            cols[j] = d
            for i in d:
                rows.setdefault(i, set()).add(j)
    rank = 0
    work = 0

    col_q = [j for j, d in cols.items() if len(d) == 1]
    row_q = [i for i, s in rows.items() if len(s) == 1]

    def drop_row(i):
        # delete row i outright (used when its unit entry was the pivot)
        for j in rows[i]:
            d = cols[j]
            del d[i]
            if not d:
                del cols[j]
            elif len(d) == 1:
                col_q.append(j)
        del rows[i]

    def drop_col(j):
        for i in cols[j]:
            s = rows[i]
            s.discard(j)
            if not s:
                del rows[i]
            elif len(s) == 1:
                row_q.append(i)
        del cols[j]

    while col_q or row_q:
        while col_q:
            j = col_q.pop()
            if j not in cols or len(cols[j]) != 1:
                continue
            i, v = next(iter(cols[j].items()))
            if v not in (1, -1):
                continue
            # pivot (i, j): the column has only this entry, so eliminating
            # clears row i from every other column with no fill
            rank += 1
            rows[i].discard(j)
            del cols[j]
            drop_row(i)
        while row_q:
            i = row_q.pop()
            if i not in rows or len(rows[i]) != 1:
                continue
            j = next(iter(rows[i]))
            if cols[j].get(i) not in (1, -1):
                continue
            rank += 1
            del cols[j][i]
            del rows[i]
            if not cols[j]:
                del cols[j]
            else:
                drop_col(j)

    # phase B: elimination on what remains.  While every pivot is a unit,
    # plain integer row reduction suffices (no divisions, no global
    # scaling).  The first non-unit pivot switches to fraction-free
    # Bareiss mode, which must update every column each step.
    prev_piv = 1
    bareiss = False
    heap = [(len(d), j) for j, d in cols.items()]
    heapq.heapify(heap)

    def pick_pivot():
        stash = []
        found = None
        while heap:
            ln, j = heapq.heappop(heap)
            d = cols.get(j)
            if d is None:
                continue
            if len(d) != ln:
                heapq.heappush(heap, (len(d), j))
                continue
            best = None
            for i in sorted(d, key=lambda i: (len(rows[i]), i)):
                if abs(d[i]) == 1:
                    best = i
                    break
            if best is None:
                stash.append((ln, j))
                continue
            found = (best, j)
            break
        for item in stash:
            heapq.heappush(heap, item)
        if found:
            return found
        # no unit entry anywhere: take the smallest entry by magnitude
        best = None
        for j in sorted(cols):
            for i in sorted(cols[j]):
                v = abs(cols[j][i])
                key = (v, len(cols[j]), len(rows[i]), j, i)
                if best is None or key < best[0]:
                    best = (key, i, j)
        return (best[1], best[2]) if best else None

    while cols:
        picked = pick_pivot()
        if picked is None:
            break
        pi, pj = picked
        pcol = cols.pop(pj)
        pval = pcol[pi]
        for i in pcol:
            s = rows.get(i)
            if s is not None:
                s.discard(pj)
                if not s:
                    del rows[i]
        piv_row_cols = rows.pop(pi, set())
        if not bareiss and pval not in (1, -1):
            bareiss = True
            prev_piv = 1
        if not bareiss:
            # unit pivot, plain mode: col_j -= (factor / pval) * pcol
            for j in sorted(piv_row_cols):
                d = cols.get(j)
                if d is None:
                    continue
                factor = d.pop(pi, 0) * pval
                for i in pcol:
                    if i == pi:
                        continue
                    old = d.get(i, 0)
                    nv = old - factor * pcol[i]
                    work += 1
                    if nv:
                        if not old:
                            rows.setdefault(i, set()).add(j)
                        d[i] = nv
                    elif old:
                        del d[i]
                        s = rows.get(i)
                        if s is not None:
                            s.discard(j)
                            if not s:
                                del rows[i]
                if not d:
                    del cols[j]
                else:
                    heapq.heappush(heap, (len(d), j))
                if work > work_cap:
                    raise MatrixCapExceeded(
                        f"elimination work exceeded {work_cap}")
        else:
            # fraction-free mode: every column is updated each step
            for j in sorted(cols):
                d = cols[j]
                factor = d.pop(pi, 0)
                support = set(d) | set(pcol) if factor else set(d)
                support.discard(pi)
                for i in support:
                    old = d.get(i, 0)
                    nv = pval * old - factor * pcol.get(i, 0)
                    if prev_piv == -1:
                        nv = -nv
                    elif prev_piv != 1:
                        q, r = divmod(nv, prev_piv)
                        assert r == 0, "fraction-free division failed"
                        nv = q
                    work += 1
                    if nv:
                        if not old:
                            rows.setdefault(i, set()).add(j)
                        d[i] = nv
                    elif old:
                        del d[i]
                        s = rows.get(i)
                        if s is not None:
                            s.discard(j)
                            if not s:
                                del rows[i]
                if not d:
                    del cols[j]
                else:
                    heapq.heappush(heap, (len(d), j))
                if work > work_cap:
                    raise MatrixCapExceeded(
                        f"elimination work exceeded {work_cap}")
            prev_piv = pval
        rank += 1
    return rank


# -- Betti numbers -----------------------------------------------------------------


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers over Q.  tilde[k] is degree k >= 0; minus1 is
    the degree -1 number (nonzero only for an empty complex)."""
    tilde: tuple
    minus1: int
    chi: int

    def get(self, k):
        if k == -1:
            return self.minus1
        if 0 <= k < len(self.tilde):
            return self.tilde[k]
        return 0

    def is_zero(self):
        return self.minus1 == 0 and all(b == 0 for b in self.tilde)

    def nonzero_degrees(self):
        out = [-1] if self.minus1 else []
        out += [k for k, b in enumerate(self.tilde) if b]
        return out

    def top_degree(self):
        nz = self.nonzero_degrees()
        return nz[-1] if nz else None

    def __str__(self):
        body = "(" + ", ".join(str(b) for b in self.tilde) + ")"
        if self.minus1:
            body += f" [deg -1: {self.minus1}]"
        return body


def _rank_profile(raw, degrees, work_cap):
    nt = thread_count()
    if nt > 1 and len(degrees) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=nt) as ex:
            futs = {k: ex.submit(sparse_rank, raw.columns(k), work_cap)
                    for k in degrees}
            return {k: f.result() for k, f in futs.items()}
    return {k: sparse_rank(raw.columns(k), work_cap) for k in degrees}


def betti_of_raw(raw, work_cap=DEFAULT_WORK_CAP):
    """Reduced Betti vector of a raw complex, with an exact Euler check."""
    top = raw.top
    if top < -1:
        return BettiVector(tilde=(), minus1=1, chi=-1)
    degrees = [k for k in range(0, top + 1)]
    ranks = _rank_profile(raw, degrees, work_cap)
    ranks[top + 1] = 0
    tilde = tuple(raw.count(k) - ranks[k] - ranks[k + 1]
                  for k in range(0, top + 1))
    minus1 = raw.count(-1) - ranks.get(0, 0)
    chi = raw.euler()
    alt = -minus1 + sum(b if k % 2 == 0 else -b for k, b in enumerate(tilde))
    assert alt == chi, f"Euler-Poincare mismatch: {alt} != {chi}"
    return BettiVector(tilde=tilde, minus1=minus1, chi=chi)


def betti_of_complex(K, work_cap=DEFAULT_WORK_CAP, check_boundary=True):
    """Reduced Betti vector of a SimplicialComplex (exact, over Q)."""
    raw = RawComplex.from_simplicial(K)
    if check_boundary:
        raw.verify_dd_zero()
    return betti_of_raw(raw, work_cap=work_cap)


def betti_of_poset(P, work_cap=DEFAULT_WORK_CAP, reduce_first=True):
    """Reduced Betti vector of the order complex of P.

    By default collapses P to its beat-point core first (same homotopy
    type, usually far smaller).  Cached on the poset.
    """
    key = ("betti", reduce_first)
    if key in P._cache:
        return P._cache[key]
    if reduce_first:
        from .posets import beat_point_core
        core, _, _ = beat_point_core(P)
        K = order_complex(core)
    else:
        K = order_complex(P)
    bv = betti_of_complex(K, work_cap=work_cap,
                          check_boundary=K.size() < 200_000)
    if reduce_first:
        # the collapse preserves the homotopy type, so the reduced Euler
        # characteristic from chain counts on P itself must agree
        assert bv.chi == P.reduced_euler(), \
            "core collapse changed the Euler characteristic"
    P._cache[key] = bv
    return bv


# -- chain maps and induced maps -----------------------------------------------------


def chain_map_from_poset_map(f, KS, KT):
    """Per-degree columns of the chain map induced by a PosetMap.

    Poset ids sit in linear extensions, so the image of a chain is a
    nondecreasing id tuple; degenerate images (repeats) map to 0, and all
    surviving coefficients are +1.
    """
    table = f.table
    tidx = KT.index_maps()
    colmaps = {-1: [[(0, 1)]]}
    for k, simps in enumerate(KS.dims):
        cols = []
        if k < len(KT.dims):
            idx = tidx[k]
            for s in simps:
                img = tuple(int(table[v]) for v in s)
                if all(img[t] < img[t + 1] for t in range(len(img) - 1)):
                    cols.append([(idx[img], 1)])
                else:
                    cols.append([])
        else:
            cols = [[] for _ in simps]
        colmaps[k] = cols
    return colmaps


def mapping_cone(rawS, rawT, colmaps):
    """Algebraic mapping cone of a chain map: Cone_k = T_k ⊕ S_{k-1}."""
    counts = {}
    cols = {}
    bottom = min(rawT.bottom, rawS.bottom + 1, -1)
    top = max(rawT.top, rawS.top + 1)
    for k in range(bottom, top + 1):
        counts[k] = rawT.count(k) + rawS.count(k - 1)
    for k in range(bottom + 1, top + 1):
        level = [list(c) for c in rawT.columns(k)]
        if len(level) < rawT.count(k):
            level += [[] for _ in range(rawT.count(k) - len(level))]
        offs = rawT.count(k - 1)
        fmap = colmaps.get(k - 1, [])
        scols = rawS.columns(k - 1)
        for j in range(rawS.count(k - 1)):
            col = list(fmap[j]) if j < len(fmap) else []
            if j < len(scols):
                col = col + [(offs + i, -v) for i, v in scols[j]]
            level.append(col)
        cols[k] = level
    return RawComplex(counts, cols)


def cone_rank_profile(rawS, rawT, colmaps, bettiS, bettiT,
                      work_cap=DEFAULT_WORK_CAP):
    """Ranks of the induced maps on reduced homology, degree by degree.

    Reads them off the long exact sequence of the mapping cone:
        dim H_k(Cone) = (b̃_k T - r_k) + (b̃_{k-1} S - r_{k-1}).
    Returns dict degree -> rank.  Recovered ranks are checked against
    0 <= r_k <= min(b̃_k S, b̃_k T); the sampled boundary check on the
    cone catches malformed chain maps with a clearer message first.
    """
    cone = mapping_cone(rawS, rawT, colmaps)
    cone.verify_dd_zero(sample=500)
    top = cone.top
    if top < -1:
        return {}
    degrees = list(range(cone.bottom + 1, top + 2))
    ranks_d = _rank_profile(cone, degrees, work_cap)
    out = {}
    r_prev = 0
    for k in range(cone.bottom, max(rawS.top, rawT.top) + 1):
        hcone_k = cone.count(k) - ranks_d.get(k, 0) - ranks_d.get(k + 1, 0)
        r_k = bettiT.get(k) - hcone_k + bettiS.get(k - 1) - r_prev
        assert 0 <= r_k <= min(bettiS.get(k), bettiT.get(k)), \
            f"cone rank recursion out of range at degree {k}: {r_k}"
        out[k] = r_k
        r_prev = r_k
    return out


# -- explicit homology bases (small complexes) ----------------------------------------


def _reduce_columns(columns, track=False):
    """Column reduction over Q with the lowest-one convention low = max row.

    Returns (R, V, lowmap): R the reduced columns (dict row -> Fraction),
    V the change of basis (dict col -> Fraction) when track is set, and
    lowmap sending each occupied low row to its owning column.
    """
    R = []
    V = []
    lowmap = {}
    for j, col in enumerate(columns):
        r = {i: Fraction(v) for i, v in col if v}
        v = {j: Fraction(1)} if track else None
        while r:
            low = max(r)
            if low not in lowmap:
                break
            j2 = lowmap[low]
            r2 = R[j2]
            c = r[low] / r2[low]
            for i, val in r2.items():
                nv = r.get(i, Fraction(0)) - c * val
                if nv:
                    r[i] = nv
                else:
                    r.pop(i, None)
            if track:
                for i, val in V[j2].items():
                    nv = v.get(i, Fraction(0)) - c * val
                    if nv:
                        v[i] = nv
                    else:
                        v.pop(i, None)
        R.append(r)
        V.append(v)
        if r:
            lowmap[max(r)] = j
    return R, V, lowmap


class HomologyBasis:
    """Explicit basis of reduced H_k for a small raw complex.

    Stores cycle representatives (as chain dicts) together with echelon
    data that lets arbitrary cycles be expressed in the homology basis.
    """

    def __init__(self, raw, k):
        self.raw = raw
        self.k = k
        nk = raw.count(k)
        if raw.columns(k):
            R, V, _ = _reduce_columns(raw.columns(k), track=True)
            self.cycles = [V[j] for j in range(nk) if not R[j]]
        else:
            self.cycles = [{j: Fraction(1)} for j in range(nk)]
        Rb, _, _ = _reduce_columns(raw.columns(k + 1), track=False)
        self.bech = {}
        for r in Rb:
            if r:
                self.bech[max(r)] = r
        self.reps = []
        self.hech = []
        for z in self.cycles:
            red = self._reduce(dict(z))
            if red:
                self.hech.append((max(red), red, len(self.reps)))
                self.reps.append(z)

    def _reduce(self, vec, record=None):
        while vec:
            low = max(vec)
            pivot = self.bech.get(low)
            coef_idx = None
            if pivot is None:
                for hlow, hvec, hidx in self.hech:
                    if hlow == low:
                        pivot = hvec
                        coef_idx = hidx
                        break
            if pivot is None:
                return vec
            coef = vec[low] / pivot[low]
            if record is not None and coef_idx is not None:
                record[coef_idx] = record.get(coef_idx, Fraction(0)) + coef
            for i, val in pivot.items():
                nv = vec.get(i, Fraction(0)) - coef * val
                if nv:
                    vec[i] = nv
                else:
                    vec.pop(i, None)
        return vec

    @property
    def dim(self):
        return len(self.reps)

    def coords(self, vec):
        """Coordinates of a cycle in the homology basis, or None if the
        vector does not reduce to zero (not a cycle up to boundaries)."""
        record = {}
        rem = self._reduce(dict(vec), record=record)
        if rem:
            return None
        return [record.get(i, Fraction(0)) for i in range(len(self.reps))]


@dataclass
class HomologyMapReport:
    """Induced map on reduced homology, per degree."""
    source_betti: BettiVector
    target_betti: BettiVector
    ranks: dict
    matrices: dict = None     # degree -> tuple of row tuples of Fractions
    method: str = "cone"

    def rank(self, k):
        return self.ranks.get(k, 0)

    def is_zero(self):
        return all(r == 0 for r in self.ranks.values())

    def nonzero(self):
        return not self.is_zero()

    def flags(self, k):
        r = self.rank(k)
        bs, bt = self.source_betti.get(k), self.target_betti.get(k)
        return {
            "zero": r == 0,
            "injective": r == bs,
            "surjective": r == bt,
            "isomorphism": r == bs == bt,
        }

    def epi_through(self, n):
        """Surjective on reduced homology in every degree <= n."""
        return all(self.rank(k) == self.target_betti.get(k)
                   for k in range(-1, n + 1))

    def mono_through(self, n):
        """Injective on reduced homology in every degree <= n."""
        return all(self.rank(k) == self.source_betti.get(k)
                   for k in range(-1, n + 1))


MATRIX_SIZE_LIMIT = 40_000


def induced_map(f, KS=None, KT=None, want_matrices=None,
                work_cap=DEFAULT_WORK_CAP):
    """Induced map on reduced homology of a PosetMap.

    Uses explicit bases (with matrices) when the complexes are small,
    otherwise mapping-cone ranks.  Pass want_matrices to force a route.
    """
    if KS is None:
        KS = order_complex(f.source)
    if KT is None:
        KT = order_complex(f.target)
    colmaps = chain_map_from_poset_map(f, KS, KT)
    rawS = RawComplex.from_simplicial(KS)
    rawT = RawComplex.from_simplicial(KT)
    return induced_map_from_chain(rawS, rawT, colmaps,
                                  want_matrices=want_matrices,
                                  work_cap=work_cap,
                                  sizes=KS.size() + KT.size())


def induced_map_from_chain(rawS, rawT, colmaps, want_matrices=None,
                           work_cap=DEFAULT_WORK_CAP, sizes=None,
                           bettiS=None, bettiT=None):
    if bettiS is None:
        bettiS = betti_of_raw(rawS, work_cap=work_cap)
    if bettiT is None:
        bettiT = betti_of_raw(rawT, work_cap=work_cap)
    if want_matrices is None:
        if sizes is None:
            sizes = sum(rawS.counts.values()) + sum(rawT.counts.values())
        want_matrices = sizes <= MATRIX_SIZE_LIMIT
    if not want_matrices:
        ranks = cone_rank_profile(rawS, rawT, colmaps, bettiS, bettiT,
                                  work_cap)
        return HomologyMapReport(bettiS, bettiT, ranks, method="cone")
    ranks = {}
    mats = {}
    lo = min(rawS.bottom, rawT.bottom)
    hi = max(rawS.top, rawT.top)
    for k in range(lo, hi + 1):
        bs, bt = bettiS.get(k), bettiT.get(k)
        if bs == 0 or bt == 0:
            ranks[k] = 0
            mats[k] = tuple(tuple(Fraction(0) for _ in range(bs))
                            for _ in range(bt))
            continue
        HS = HomologyBasis(rawS, k)
        HT = HomologyBasis(rawT, k)
        assert HS.dim == bs and HT.dim == bt, "basis dimension mismatch"
        fmap = colmaps.get(k, [])
        image_coords = []
        for z in HS.reps:
            img = {}
            for j, c in z.items():
                for i, v in (fmap[j] if j < len(fmap) else []):
                    img[i] = img.get(i, Fraction(0)) + c * v
            img = {i: v for i, v in img.items() if v}
            coords = HT.coords(img)
            assert coords is not None, \
                "image of a cycle is not a cycle modulo boundaries"
            image_coords.append(coords)
        mat = tuple(tuple(image_coords[j][i] for j in range(bs))
                    for i in range(bt))
        mats[k] = mat
        ranks[k] = _dense_rank_fractions(image_coords, bt)
    return HomologyMapReport(bettiS, bettiT, ranks, matrices=mats,
                             method="basis")


def _dense_rank_fractions(cols, nrows):
    m = [list(c) for c in cols]
    rank = 0
    used = set()
    for col in m:
        piv = next((i for i in range(nrows)
                    if i not in used and col[i]), None)
        if piv is None:
            continue
        rank += 1
        used.add(piv)
        for other in m:
            if other is col or not other[piv]:
                continue
            c = other[piv] / col[piv]
            for i in range(nrows):
                other[i] -= c * col[i]
    return rank


# -- Kunneth and Mayer-Vietoris --------------------------------------------------------


@dataclass
class KunnethReport:
    left: BettiVector
    right: BettiVector
    join: BettiVector
    expected: tuple          # degrees -1, 0, 1, ... of the join
    ok: bool


def kunneth_check(P, Q, joined=None, work_cap=DEFAULT_WORK_CAP):
    """b̃_n(join) = sum_{i+j=n-1} b̃_i(P) b̃_j(Q), checked exactly.

    The degree -1 convention makes this cover empty factors too."""
    from .posets import join_posets
    bP = betti_of_poset(P, work_cap=work_cap)
    bQ = betti_of_poset(Q, work_cap=work_cap)
    if joined is None:
        joined = join_posets([P, Q])
    bJ = betti_of_poset(joined, work_cap=work_cap)
    top = len(bP.tilde) + len(bQ.tilde) + 1
    expected = tuple(
        sum(bP.get(i) * bQ.get(n - 1 - i) for i in range(-1, n + 1))
        for n in range(-1, top + 1))
    actual = tuple(bJ.get(n) for n in range(-1, top + 1))
    return KunnethReport(left=bP, right=bQ, join=bJ, expected=expected,
                         ok=actual == expected)


def direct_sum_raw(rawA, rawB):
    """Direct sum of two raw complexes (both augmentations kept)."""
    counts = {}
    cols = {}
    lo = min(rawA.bottom, rawB.bottom)
    hi = max(rawA.top, rawB.top)
    for k in range(lo, hi + 1):
        counts[k] = rawA.count(k) + rawB.count(k)
    for k in range(lo + 1, hi + 1):
        offs = rawA.count(k - 1)
        level = [list(c) for c in rawA.columns(k)]
        if len(level) < rawA.count(k):
            level += [[] for _ in range(rawA.count(k) - len(level))]
        for col in rawB.columns(k):
            level.append([(offs + i, v) for i, v in col])
        cols[k] = level
    return RawComplex(counts, cols)


@dataclass
class MVRankAudit:
    ok: bool
    degrees: dict            # k -> per-degree numbers and consistency flag
    chi_additive: bool


def mv_rank_audit(U, ids_Y, ids_Z, work_cap=DEFAULT_WORK_CAP):
    """Mayer-Vietoris consistency audit for a chain-level cover of U.

    ids_Y and ids_Z index two subposets whose union is U and such that
    every chain of U lies wholly inside one part (checked; NotACover
    otherwise).  Verifies, degree by degree,
      b̃_k(U) = [b̃_k Y + b̃_k Z - rank α_k] + [b̃_{k-1}(Y ∩ Z) - rank α_{k-1}]
    where α is induced by the two inclusions H̃(Y ∩ Z) -> H̃(Y) ⊕ H̃(Z),
    plus additivity of the reduced Euler characteristic.
    """
    ids_Y = np.unique(np.asarray(ids_Y, dtype=np.int64))
    ids_Z = np.unique(np.asarray(ids_Z, dtype=np.int64))
    inY = np.zeros(U.n, dtype=bool)
    inY[ids_Y] = True
    inZ = np.zeros(U.n, dtype=bool)
    inZ[ids_Z] = True
    if not np.all(inY | inZ):
        raise NotACover("subposets do not cover the target")
    mask_z_only = 0
    for i in np.nonzero(inZ & ~inY)[0]:
        mask_z_only |= 1 << int(i)
    for i in np.nonzero(inY & ~inZ)[0]:
        i = int(i)
        if (U.up[i] & mask_z_only) or (U.down[i] & mask_z_only):
            raise NotACover(
                "a chain of the target mixes elements private to each part")
    PY, incY = U.induced(ids_Y)
    PZ, incZ = U.induced(ids_Z)
    ids_I = np.intersect1d(ids_Y, ids_Z)
    PI, _ = U.induced(ids_I)
    KY = order_complex(PY)
    KZ = order_complex(PZ)
    KI = order_complex(PI)
    rawY = RawComplex.from_simplicial(KY)
    rawZ = RawComplex.from_simplicial(KZ)
    rawI = RawComplex.from_simplicial(KI)
    rawYZ = direct_sum_raw(rawY, rawZ)
    bU = betti_of_poset(U, work_cap=work_cap)
    bY = betti_of_raw(rawY, work_cap=work_cap)
    bZ = betti_of_raw(rawZ, work_cap=work_cap)
    bI = betti_of_raw(rawI, work_cap=work_cap)
    bYZ = betti_of_raw(rawYZ, work_cap=work_cap)
    posY = {int(o): k for k, o in enumerate(incY)}
    posZ = {int(o): k for k, o in enumerate(incZ)}
    idxY = KY.index_maps()
    idxZ = KZ.index_maps()
    colmaps = {-1: [[(0, 1), (rawY.count(-1), 1)]]}
    for k, simps in enumerate(KI.dims):
        offs = rawY.count(k)
        cols = []
        for s in simps:
            orig = tuple(int(ids_I[v]) for v in s)
            sy = tuple(posY[o] for o in orig)
            sz = tuple(posZ[o] for o in orig)
            cols.append([(idxY[k][sy], 1), (offs + idxZ[k][sz], 1)])
        colmaps[k] = cols
    ranks = cone_rank_profile(rawI, rawYZ, colmaps, bI, bYZ, work_cap)
    degrees = {}
    ok = True
    hi = 1 + max(len(bU.tilde), len(bY.tilde), len(bZ.tilde), len(bI.tilde))
    for k in range(0, hi):
        lhs = bU.get(k)
        rhs = (bY.get(k) + bZ.get(k) - ranks.get(k, 0)) + (
            bI.get(k - 1) - ranks.get(k - 1, 0))
        degrees[k] = {
            "bU": bU.get(k), "bY": bY.get(k), "bZ": bZ.get(k),
            "bI": bI.get(k), "alpha": ranks.get(k, 0),
            "consistent": lhs == rhs,
        }
        ok = ok and lhs == rhs
    chi_additive = (PI.reduced_euler() + U.reduced_euler()
                    == PY.reduced_euler() + PZ.reduced_euler())
    return MVRankAudit(ok=ok and chi_additive, degrees=degrees,
                       chi_additive=chi_additive)
