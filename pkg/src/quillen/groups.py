"""Finite permutation groups with full element tables.

Everything downstream (poset construction, homology of p-subgroup posets)
works with element *indices* into a fully enumerated group.  That is viable
because the groups of interest here stay well under the order cap, and it
makes subgroup algebra (centralizers, normalizers, conjugation) plain
vectorized numpy over the element table.

Conventions:
  * composition (p*q)(x) = p(q(x)), i.e. q acts first;
  * element 0 is the identity;
  * a Subgroup is a sorted array of member indices into its parent group,
    always containing 0.
"""

import numpy as np

from .bits import bits_from_indices
from .errors import (
    ActorDoesNotNormalize,
    ComponentsUndetectable,
    EnumerationCapExceeded,
    NotPrime,
    OrderCapExceeded,
    ParentMismatch,
    SubgroupNotContained,
)

DEFAULT_ORDER_CAP = 500_000


def _as_perm_rows(gen_rows, degree):
    rows = np.asarray(gen_rows, dtype=np.int16)
    if rows.ndim == 1:
        rows = rows.reshape(1, -1)
    if rows.size == 0:
        rows = np.arange(degree, dtype=np.int16).reshape(1, -1)
    return rows


class PermGroup:
    """A finite permutation group, fully enumerated."""

    def __init__(self, perms, gen_indices, name=""):
        self.perms = np.ascontiguousarray(perms, dtype=np.int16)
        self.order, self.degree = self.perms.shape
        self.gens = tuple(int(g) for g in gen_indices)
        self.name = name
        self._index = {self.perms[i].tobytes(): i for i in range(self.order)}
        self._inv = None
        self._orders = None
        self._conj_maps = {}
        self._cache = {}

    @classmethod
    def generate(cls, gen_rows, degree, name="", order_cap=DEFAULT_ORDER_CAP):
        """Enumerate the group generated by the given permutation rows."""
        rows = _as_perm_rows(gen_rows, degree)
        ident = np.arange(degree, dtype=np.int16)
        index = {ident.tobytes(): 0}
        elems = [ident]
        # dedupe generators, keep their future indices
        gen_rows_u = []
        for r in rows:
            key = np.ascontiguousarray(r, dtype=np.int16).tobytes()
            if key not in index and all(key != g.tobytes() for g in gen_rows_u):
                gen_rows_u.append(np.ascontiguousarray(r, dtype=np.int16))
        frontier = np.array([0], dtype=np.int64)
        table = [ident]
        while frontier.size:
            P = np.stack([table[i] for i in frontier])
            new = []
            for g in gen_rows_u + ([] if gen_rows_u else []):
                prod = P[:, g]  # rows f∘g
                for r in prod:
                    key = r.tobytes()
                    if key not in index:
                        index[key] = len(table)
                        table.append(r.copy())
                        new.append(len(table) - 1)
                        if len(table) > order_cap:
                            raise OrderCapExceeded(
                                f"group order exceeds cap {order_cap}")
            frontier = np.array(new, dtype=np.int64)
        perms = np.stack(table)
        gen_idx = [index[g.tobytes()] for g in gen_rows_u]
        if not gen_idx:
            gen_idx = [0]
        return cls(perms, gen_idx, name=name)

    def __repr__(self):
        nm = self.name or "PermGroup"
        return f"<{nm}: order {self.order}, degree {self.degree}>"

    # -- element table access ------------------------------------------------

    def lookup_row(self, row):
        return self._index[np.ascontiguousarray(row, dtype=np.int16).tobytes()]

    def lookup_rows(self, rows):
        rows = np.ascontiguousarray(rows, dtype=np.int16)
        idx = self._index
        return np.fromiter(
            (idx[rows[i].tobytes()] for i in range(rows.shape[0])),
            dtype=np.int64, count=rows.shape[0])

    def compose(self, i, j):
        """Index of perms[i] ∘ perms[j]."""
        return self.lookup_row(self.perms[i][self.perms[j]])

    @property
    def inv(self):
        if self._inv is None:
            arg = np.argsort(self.perms, axis=1).astype(np.int16)
            self._inv = self.lookup_rows(arg)
        return self._inv

    def element_orders(self):
        if self._orders is None:
            ident = np.arange(self.degree, dtype=np.int16)
            orders = np.zeros(self.order, dtype=np.int64)
            orders[0] = 1
            cur = self.perms.copy()
            unresolved = np.nonzero(orders == 0)[0]
            k = 1
            while unresolved.size:
                done = np.all(cur[unresolved] == ident, axis=1)
                orders[unresolved[done]] = k
                unresolved = unresolved[~done]
                if unresolved.size:
                    cur[unresolved] = np.take_along_axis(
                        self.perms[unresolved], cur[unresolved], axis=1)
                    k += 1
            self._orders = orders
        return self._orders

    def p_elements(self, p):
        """Indices of elements of order exactly p, ascending."""
        return np.nonzero(self.element_orders() == p)[0]

    # -- conjugation ----------------------------------------------------------

    def conj_batch(self, g, idx):
        """Indices of g x g^-1 for each x in idx."""
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size == 0:
            return idx
        grow = self.perms[g]
        ginv = self.perms[self.inv[g]]
        rows = grow[self.perms[idx][:, ginv]]
        return self.lookup_rows(rows)

    def conj_map(self, g):
        """Full map i -> index of g e_i g^-1, cached per g."""
        g = int(g)
        if g not in self._conj_maps:
            self._conj_maps[g] = self.conj_batch(g, np.arange(self.order))
        return self._conj_maps[g]

    # -- subgroup constructors -------------------------------------------------

    def full(self):
        if "full" not in self._cache:
            self._cache["full"] = Subgroup(
                self, np.arange(self.order, dtype=np.int64), gens=self.gens)
        return self._cache["full"]

    def subgroup(self, gen_indices):
        """Subgroup generated by the given element indices."""
        gens = tuple(sorted({int(g) for g in gen_indices} - {0}))
        members = close_indices(self, gens)
        return Subgroup(self, members, gens=gens if gens else (0,))

    def subgroup_from_rows(self, gen_rows):
        idx = [self.lookup_row(r) for r in _as_perm_rows(gen_rows, self.degree)]
        return self.subgroup(idx)


def close_indices(group, gen_indices):
    """Member indices of the subgroup generated by gen_indices (BFS)."""
    member = np.zeros(group.order, dtype=bool)
    member[0] = True
    gens = [g for g in gen_indices if g != 0]
    frontier = np.array([0], dtype=np.int64)
    grows = [group.perms[g] for g in gens]
    while frontier.size:
        P = group.perms[frontier]
        fresh = []
        for g in grows:
            idx = group.lookup_rows(P[:, g])
            for i in idx:
                if not member[i]:
                    member[i] = True
                    fresh.append(i)
        frontier = np.array(fresh, dtype=np.int64)
    return np.nonzero(member)[0].astype(np.int64)


class Subgroup:
    """A subgroup given by its sorted member-index array (0 always present)."""

    __slots__ = ("group", "midx", "gens", "_key", "_cache")

    def __init__(self, group, member_indices, gens=None):
        self.group = group
        self.midx = np.asarray(member_indices, dtype=np.int64)
        if self.midx.size == 0 or self.midx[0] != 0:
            self.midx = np.unique(np.append(self.midx, 0))
        self.gens = tuple(int(g) for g in gens) if gens is not None else None
        self._key = None
        self._cache = {}

    @property
    def order(self):
        return int(self.midx.size)

    @property
    def key(self):
        if self._key is None:
            self._key = self.midx.tobytes()
        return self._key

    @property
    def bits(self):
        if "bits" not in self._cache:
            self._cache["bits"] = bits_from_indices(self.midx)
        return self._cache["bits"]

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.group is self.group
                and other.key == self.key)

    def __hash__(self):
        return hash((id(self.group), self.key))

    def __repr__(self):
        return f"<Subgroup order {self.order} of {self.group.name or 'G'}>"

    def contains_index(self, i):
        pos = np.searchsorted(self.midx, i)
        return pos < self.midx.size and self.midx[pos] == i

    def contains_indices(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        pos = np.searchsorted(self.midx, idx)
        pos = np.clip(pos, 0, self.midx.size - 1)
        return self.midx[pos] == idx

    def is_subset_of(self, other):
        if other.group is not self.group:
            raise ParentMismatch("subgroups of different groups")
        if self.order > other.order:
            return False
        return bool(np.all(other.contains_indices(self.midx)))

    def generating_set(self):
        """Small generating set (greedy over members), cached."""
        if self.gens is not None:
            return self.gens
        if "gens" not in self._cache:
            gens = []
            known = np.array([0], dtype=np.int64)
            for i in self.midx:
                if i == 0:
                    continue
                pos = np.searchsorted(known, i)
                if pos < known.size and known[pos] == i:
                    continue
                gens.append(int(i))
                known = close_indices(self.group, gens)
                if known.size == self.order:
                    break
            self._cache["gens"] = tuple(gens) if gens else (0,)
        return self._cache["gens"]

    def conjugate(self, g):
        """The subgroup g S g^-1."""
        new_idx = np.sort(self.group.conj_batch(g, self.midx))
        gens = None
        if self.gens is not None:
            gens = tuple(int(x) for x in self.group.conj_batch(g, np.array(self.gens)))
        return Subgroup(self.group, new_idx, gens=gens)

    def intersection(self, other):
        if other.group is not self.group:
            raise ParentMismatch("subgroups of different groups")
        return Subgroup(self.group, np.intersect1d(self.midx, other.midx))

    def element_orders(self):
        return self.group.element_orders()[self.midx]

    def is_cyclic(self):
        return bool(np.max(self.element_orders()) == self.order)

    def is_abelian(self):
        if "abelian" not in self._cache:
            gens = self.generating_set()
            ok = all(self.group.compose(a, b) == self.group.compose(b, a)
                     for i, a in enumerate(gens) for b in gens[i + 1:])
            self._cache["abelian"] = ok
        return self._cache["abelian"]


def as_subgroup(g):
    if isinstance(g, PermGroup):
        return g.full()
    if isinstance(g, Subgroup):
        return g
    raise TypeError(f"expected PermGroup or Subgroup, got {type(g)!r}")


def require_contained(ambient, sub):
    if not sub.is_subset_of(ambient):
        raise SubgroupNotContained(
            f"subgroup of order {sub.order} not inside ambient of order {ambient.order}")


# -- centralizers, normalizers, products --------------------------------------


def centralizer(ambient, target):
    """C_ambient(target) as a Subgroup.  target: Subgroup or element indices."""
    ambient = as_subgroup(ambient)
    G = ambient.group
    if isinstance(target, Subgroup):
        if target.group is not G:
            raise ParentMismatch("centralizer across different groups")
        tgens = target.generating_set()
    else:
        tgens = [int(t) for t in np.atleast_1d(np.asarray(target, dtype=np.int64))]
    cand = ambient.midx
    P = G.perms[cand]
    mask = np.ones(cand.size, dtype=bool)
    for t in tgens:
        trow = G.perms[t]
        mask &= np.all(P[:, trow] == trow[P], axis=1)
    return Subgroup(G, cand[mask])


def normalizer(ambient, target):
    """N_ambient(target) as a Subgroup."""
    ambient = as_subgroup(ambient)
    target = as_subgroup(target)
    G = ambient.group
    if target.group is not G:
        raise ParentMismatch("normalizer across different groups")
    cand = ambient.midx
    P = G.perms[cand]
    Pinv = G.perms[G.inv[cand]]
    mask = np.ones(cand.size, dtype=bool)
    for t in target.generating_set():
        trow = G.perms[t]
        conj = np.take_along_axis(P[:, trow], Pinv, axis=1)  # g t g^-1 rowwise
        idx = G.lookup_rows(conj)
        mask &= target.contains_indices(idx)
    return Subgroup(G, cand[mask])


def subgroup_product(a, b):
    """Subgroup generated by a ∪ b (equals the set product when one normalizes)."""
    if a.group is not b.group:
        raise ParentMismatch("product across different groups")
    return a.group.subgroup(tuple(a.generating_set()) + tuple(b.generating_set()))


def center(sub):
    sub = as_subgroup(sub)
    return centralizer(sub, sub)


def derived_subgroup(sub):
    """Commutator subgroup: normal closure in sub of generator commutators."""
    sub = as_subgroup(sub)
    G = sub.group
    gens = sub.generating_set()
    comms = set()
    for a in gens:
        for b in gens:
            ab = G.compose(a, b)
            ba = G.compose(b, a)
            comms.add(G.compose(G.inv[ba], ab))  # (ba)^-1 (ab) = [a,b] up to convention
    comms.discard(0)
    return normal_closure(sub, sorted(comms))


def normal_closure(ambient, seed_indices):
    """Smallest subgroup of ambient containing the seeds and normal in ambient."""
    ambient = as_subgroup(ambient)
    G = ambient.group
    gens = list(dict.fromkeys(int(s) for s in seed_indices if s != 0))
    K = close_indices(G, gens)
    agens = ambient.generating_set()
    while True:
        grew = False
        for g in agens:
            conj = G.conj_batch(g, K)
            outside = conj[~_in_sorted(K, conj)]
            if outside.size:
                gens.extend(int(x) for x in outside[:3])
                K = close_indices(G, gens)
                grew = True
        if not grew:
            return Subgroup(G, K, gens=tuple(gens) if gens else (0,))


def _in_sorted(sorted_arr, vals):
    pos = np.searchsorted(sorted_arr, vals)
    pos = np.clip(pos, 0, sorted_arr.size - 1)
    return sorted_arr[pos] == vals


# -- conjugacy classes and normal subgroups -----------------------------------


def conjugacy_classes(sub):
    """Conjugacy classes of sub (as arrays of member indices), by smallest member."""
    sub = as_subgroup(sub)
    if "classes" in sub._cache:
        return sub._cache["classes"]
    G = sub.group
    gens = sub.generating_set()
    midx = sub.midx
    pos_of = {int(i): k for k, i in enumerate(midx)}
    assigned = np.zeros(midx.size, dtype=bool)
    classes = []
    for k in range(midx.size):
        if assigned[k]:
            continue
        orbit = [int(midx[k])]
        assigned[k] = True
        frontier = [int(midx[k])]
        while frontier:
            batch = np.array(frontier, dtype=np.int64)
            frontier = []
            for g in gens:
                for i in G.conj_batch(g, batch):
                    kk = pos_of[int(i)]
                    if not assigned[kk]:
                        assigned[kk] = True
                        orbit.append(int(i))
                        frontier.append(int(i))
        classes.append(np.array(sorted(orbit), dtype=np.int64))
    sub._cache["classes"] = classes
    return classes


def normal_subgroups(sub):
    """All normal subgroups, as the lattice generated by class closures.

    Every normal subgroup is a join of normal closures of the conjugacy
    classes it contains, so closing the class closures under pairwise
    product yields the full set.
    """
    sub = as_subgroup(sub)
    if "normals" in sub._cache:
        return sub._cache["normals"]
    G = sub.group
    found = {}
    triv = Subgroup(G, np.array([0], dtype=np.int64), gens=(0,))
    found[triv.key] = triv
    for cls in conjugacy_classes(sub):
        if cls.size == 1 and cls[0] == 0:
            continue
        N = normal_closure(sub, [int(cls[0])])
        found.setdefault(N.key, N)
    # close under join
    worklist = list(found.values())
    while worklist:
        A = worklist.pop()
        for B in list(found.values()):
            J = subgroup_product(A, B)
            if J.key not in found:
                found[J.key] = J
                worklist.append(J)
    out = sorted(found.values(), key=lambda s: (s.order, s.key))
    sub._cache["normals"] = out
    return out


def minimal_normal_subgroups(sub):
    normals = [N for N in normal_subgroups(sub) if N.order > 1]
    out = []
    for N in normals:
        if not any(M.order < N.order and M.is_subset_of(N) for M in normals):
            out.append(N)
    return out


def is_simple(sub):
    sub = as_subgroup(sub)
    return sub.order > 1 and len(normal_subgroups(sub)) == 2


# -- Sylow subgroups and p-cores ------------------------------------------------


def _check_prime(p):
    p = int(p)
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise NotPrime(f"{p} is not prime")
    return p


def sylow_subgroup(sub, p):
    """A Sylow p-subgroup, grown inside successive normalizers.

    While the current p-subgroup P is not Sylow, its normalizer contains a
    p-element outside P (the image of P's normalizer mod P has order
    divisible by p), and adjoining one multiplies |P| by p.
    """
    sub = as_subgroup(sub)
    p = _check_prime(p)
    key = ("sylow", p)
    if key in sub._cache:
        return sub._cache[key]
    G = sub.group
    orders = G.element_orders()[sub.midx]
    target = sub.order
    while target % p == 0:
        target //= p
    # p-part of |sub| is sub.order // target
    P = Subgroup(G, np.array([0], dtype=np.int64), gens=(0,))
    gens = []
    while sub.order // P.order % p == 0 and P.order < sub.order // target:
        N = normalizer(sub, P) if P.order > 1 else sub
        n_orders = G.element_orders()[N.midx]
        is_ppower = np.ones(N.midx.size, dtype=bool)
        for k, o in enumerate(n_orders):
            o = int(o)
            while o % p == 0:
                o //= p
            is_ppower[k] = (o == 1)
        cands = N.midx[is_ppower & ~P.contains_indices(N.midx)]
        y = int(cands[0])
        gens.append(y)
        P = G.subgroup(gens)
    sub._cache[key] = P
    return P


def p_core(sub, p, method="sylow"):
    """O_p(sub): the largest normal p-subgroup.

    method "sylow": intersect a Sylow with conjugates until normal (the
    result is a normal p-subgroup containing every normal p-subgroup).
    method "lattice": largest p-subgroup among the normal subgroups.
    """
    sub = as_subgroup(sub)
    p = _check_prime(p)
    G = sub.group
    if method == "lattice":
        best = Subgroup(G, np.array([0], dtype=np.int64), gens=(0,))
        for N in normal_subgroups(sub):
            o = N.order
            while o % p == 0:
                o //= p
            if o == 1 and N.order > best.order:
                best = N
        return best
    key = ("pcore", p)
    if key in sub._cache:
        return sub._cache[key]
    K = sylow_subgroup(sub, p)
    agens = sub.generating_set()
    while True:
        for g in agens:
            Kg = K.conjugate(g)
            if Kg.key != K.key:
                K = K.intersection(Kg)
                break
        else:
            sub._cache[key] = K
            return K


def hyperelementary_check(sub, q):
    """Is sub q-hyperelementary: O^q(sub) (generated by q'-elements) cyclic?

    Returns (bool, evidence dict).
    """
    sub = as_subgroup(sub)
    q = _check_prime(q)
    orders = sub.element_orders()
    qprime = sub.midx[np.asarray(orders) % q != 0]
    K = sub.group.subgroup(
        [int(i) for i in qprime]) if qprime.size else sub.group.subgroup([])
    cyclic = K.is_cyclic()
    return cyclic, {
        "q": q,
        "oq_order": K.order,
        "oq_cyclic": cyclic,
        "index": sub.order // K.order,
    }


# -- conjugation actions --------------------------------------------------------


class ConjugationAction:
    """Conjugation of `actor` on a normalized subgroup `target`.

    The image is materialized as a PermGroup acting faithfully on a
    tracking set of parent elements (the full member list when target is
    small, otherwise actor-stable generator orbits chosen smallest-first).
    The factorization |actor| = |kernel| * |image| is verified, which
    guards the tracking-set optimization.
    """

    def __init__(self, actor, target, track_cap=3000):
        actor = as_subgroup(actor)
        target = as_subgroup(target)
        G = actor.group
        if target.group is not G:
            raise ParentMismatch("action across different groups")
        agens = actor.generating_set()
        N = normalizer(actor, target)
        if N.order != actor.order:
            raise ActorDoesNotNormalize(
                f"actor (order {actor.order}) does not normalize target "
                f"(normalizer has order {N.order})")
        self.actor = actor
        self.target = target
        self.kernel = centralizer(actor, target)
        expected = actor.order // self.kernel.order

        track = None
        if target.order <= track_cap:
            track = target.midx
        else:
            # orbits of target generators under actor, smallest classes first
            tgens = sorted(
                target.generating_set(),
                key=lambda t: actor.order // centralizer(actor, [t]).order)
            acc = np.empty(0, dtype=np.int64)
            for t in tgens:
                orb = _orbit_under_conj(G, agens, t)
                acc = np.union1d(acc, orb)
                if acc.size > track_cap * 4:
                    track = target.midx  # give up, be exact
                    break
                img = self._try_build(G, agens, acc, expected)
                if img is not None:
                    track = acc
                    break
            if track is None:
                track = target.midx
        self.tracking = np.asarray(track, dtype=np.int64)
        img = self._try_build(G, agens, self.tracking, expected)
        if img is None:
            raise ActorDoesNotNormalize(
                "internal: tracking action kernel mismatch")
        self.image = img
        self._proj_cache = {}

    @staticmethod
    def _try_build(G, agens, track, expected_order):
        rows = []
        for a in agens:
            conj = G.conj_batch(a, track)
            pos = np.searchsorted(track, conj)
            if np.any(pos >= track.size) or np.any(track[np.clip(pos, 0, track.size - 1)] != conj):
                return None  # not closed, caller extends
            rows.append(pos.astype(np.int16))
        img = PermGroup.generate(np.array(rows, dtype=np.int16) if rows else [],
                                 degree=int(track.size),
                                 name="conj-image")
        if img.order != expected_order:
            return None
        return img

    def project_index(self, g):
        """Image-group index of the automorphism induced by parent element g."""
        g = int(g)
        if g not in self._proj_cache:
            G = self.actor.group
            conj = G.conj_batch(g, self.tracking)
            pos = np.searchsorted(self.tracking, conj).astype(np.int16)
            self._proj_cache[g] = self.image.lookup_row(pos)
        return self._proj_cache[g]

    def project_subgroup(self, E):
        """Image of a subgroup of the actor, as a Subgroup of self.image."""
        gens = [self.project_index(g) for g in E.generating_set()]
        return self.image.subgroup(gens)


def _orbit_under_conj(G, agens, seed):
    seen = {int(seed)}
    frontier = [int(seed)]
    while frontier:
        batch = np.array(frontier, dtype=np.int64)
        frontier = []
        for g in agens:
            for i in G.conj_batch(g, batch):
                i = int(i)
                if i not in seen:
                    seen.add(i)
                    frontier.append(i)
    return np.array(sorted(seen), dtype=np.int64)


def conjugation_action(actor, target, track_cap=3000):
    return ConjugationAction(actor, target, track_cap=track_cap)


# -- components ------------------------------------------------------------------


def is_quasisimple(sub):
    """Perfect and simple modulo center."""
    sub = as_subgroup(sub)
    if sub.order == 1:
        return False
    if derived_subgroup(sub).order != sub.order:
        return False
    Z = center(sub)
    if Z.order == 1:
        return is_simple(sub)
    # simple mod center: every normal subgroup is central or everything
    for N in normal_subgroups(sub):
        if N.order != sub.order and not N.is_subset_of(Z):
            return False
    return True


def detect_components(group, declared=None):
    """The components (subnormal quasisimple subgroups) of a group.

    Detection walks minimal normal subgroups and splits the nonabelian ones
    into their simple factors; the result is verified by checking that the
    generalized Fitting subgroup built from it is self-centralizing.  If
    verification fails and no declared components were given, raises
    ComponentsUndetectable.  Declared components are verified quasisimple
    and returned flagged as declared.

    Returns (components, flag) with flag in {"detected", "declared"}.
    """
    sub = as_subgroup(group)
    G = sub.group
    if declared is not None:
        comps = []
        for d in declared:
            c = d if isinstance(d, Subgroup) else G.subgroup(d)
            require_contained(sub, c)
            if not is_quasisimple(c):
                raise ComponentsUndetectable(
                    f"declared component of order {c.order} is not quasisimple")
            comps.append(c)
        comps.sort(key=lambda c: (c.order, c.key))
        return comps, "declared"

    if "components" in sub._cache:
        return sub._cache["components"], "detected"

    comps = []
    for M in minimal_normal_subgroups(sub):
        if M.is_abelian():
            continue
        if is_simple(M):
            comps.append(M)
        else:
            for F in minimal_normal_subgroups(M):
                if not (is_simple(F) and not F.is_abelian()):
                    raise ComponentsUndetectable(
                        "nonabelian minimal normal subgroup does not split "
                        "into nonabelian simple factors")
                comps.append(F)

    # verify: F*(G) = F(G) * (product of components) is self-centralizing
    fit_gens = []
    for p in _prime_divisors(sub.order):
        Op = p_core(sub, p)
        fit_gens.extend(Op.generating_set())
    for c in comps:
        fit_gens.extend(c.generating_set())
    fstar = G.subgroup([g for g in fit_gens if g != 0]) if fit_gens else G.subgroup([])
    C = centralizer(sub, fstar)
    if not C.is_subset_of(fstar):
        raise ComponentsUndetectable(
            "generalized Fitting subgroup is not self-centralizing; "
            "pass declared components")
    comps.sort(key=lambda c: (c.order, c.key))
    sub._cache["components"] = comps
    return comps, "detected"


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- elementary abelian p-subgroups ------------------------------------------------

DEFAULT_ENUM_CAP = 1_000_000


def _commuting_matrix(G, pel):
    """comm[i, j] = does pel[i] commute with pel[j]."""
    P = G.perms[pel]
    comm = np.zeros((pel.size, pel.size), dtype=bool)
    for k in range(pel.size):
        xrow = G.perms[pel[k]]
        comm[k] = np.all(P[:, xrow] == xrow[P], axis=1)
    return comm


def elementary_abelian_subgroups(sub, p, cap=DEFAULT_ENUM_CAP):
    """All nontrivial elementary abelian p-subgroups, ascending rank.

    Returns a list of Subgroups, deterministically ordered by (order,
    member tuple).  BFS by rank: a rank r+1 subgroup B arises uniquely
    as <A, z> where z is B's largest nontrivial member and A a hyperplane
    avoiding z, so extending every A by commuting p-elements larger than
    all of A's members and deduplicating member tuples finds everything.
    """
    sub = as_subgroup(sub)
    p = _check_prime(p)
    ckey = ("elab", p, cap)
    if ckey in sub._cache:
        return sub._cache[ckey]
    G = sub.group
    orders = G.element_orders()
    pel = sub.midx[orders[sub.midx] == p]
    out = []
    if pel.size == 0:
        sub._cache[ckey] = out
        return out
    comm = _commuting_matrix(G, pel)
    pos_of = {int(x): k for k, x in enumerate(pel)}

    # rank 1: one subgroup per <x>, keyed by its sorted nontrivial members
    if p == 2:
        members = pel.reshape(-1, 1)
        gens = [(int(x),) for x in pel]
        masks = comm.copy()
    else:
        seen = set()
        rows, gens = [], []
        for x in pel:
            powers = [int(x)]
            cur = int(x)
            for _ in range(p - 2):
                cur = G.compose(cur, int(x))
                powers.append(cur)
            row = tuple(sorted(powers))
            if row not in seen:
                seen.add(row)
                rows.append(row)
                gens.append((int(x),))
        order_key = sorted(range(len(rows)), key=lambda i: rows[i])
        rows = [rows[i] for i in order_key]
        gens = [gens[i] for i in order_key]
        members = np.array(rows, dtype=np.int64)
        masks = np.stack([
            np.all(comm[[pos_of[m] for m in row]], axis=0) for row in rows])

    total = members.shape[0]
    if total > cap:
        raise EnumerationCapExceeded(f"{total} rank-1 subgroups exceeds cap {cap}")
    levels = [(members, gens, masks)]

    while True:
        members, gens, masks = levels[-1]
        maxes = members.max(axis=1)
        pair_sub, pair_z = [], []
        for k in range(members.shape[0]):
            cand = np.nonzero(masks[k] & (pel > maxes[k]))[0]
            if cand.size:
                pair_sub.append(np.full(cand.size, k, dtype=np.int64))
                pair_z.append(cand)
        if not pair_sub:
            break
        pair_sub = np.concatenate(pair_sub)
        pair_z = np.concatenate(pair_z)
        width = members.shape[1]
        new_width = width + (width + 1) * (p - 1)
        blocks = [members[pair_sub]]
        zidx = pel[pair_z]
        # powers of z and products a * z^e for a in A
        zpow = zidx.copy()
        for e in range(1, p):
            if e > 1:
                zpow = G.lookup_rows(
                    np.take_along_axis(G.perms[zidx], G.perms[zpow], axis=1))
            blocks.append(zpow.reshape(-1, 1))
            Arows = G.perms[members[pair_sub].reshape(-1)]
            zrows = G.perms[np.repeat(zpow, width)]
            prod = G.lookup_rows(np.take_along_axis(Arows, zrows, axis=1))
            blocks.append(prod.reshape(-1, width))
        new_members = np.sort(np.concatenate(blocks, axis=1), axis=1)
        assert new_members.shape[1] == new_width
        new_members, first = np.unique(new_members, axis=0, return_index=True)
        new_gens = [gens[pair_sub[i]] + (int(pel[pair_z[i]]),) for i in first]
        new_masks = masks[pair_sub[first]] & comm[pair_z[first]]
        total += new_members.shape[0]
        if total > cap:
            raise EnumerationCapExceeded(
                f"elementary abelian count exceeds cap {cap}")
        levels.append((new_members, new_gens, new_masks))

    for members, gens, _ in levels:
        for k in range(members.shape[0]):
            midx = np.empty(members.shape[1] + 1, dtype=np.int64)
            midx[0] = 0
            midx[1:] = members[k]
            out.append(Subgroup(G, midx, gens=gens[k]))
    sub._cache[ckey] = out
    return out


def p_rank(sub, p):
    """Largest r with an elementary abelian p-subgroup of order p^r."""
    sub = as_subgroup(sub)
    P = sylow_subgroup(sub, p)
    if P.order == 1:
        return 0
    elab = elementary_abelian_subgroups(P, p)
    best = max(s.order for s in elab)
    r = 0
    while best > 1:
        best //= p
        r += 1
    return r


def _fp_subspaces(p, r, dims=None):
    """Bases (lists of coefficient row tuples) of subspaces of F_p^r in RREF.

    dims: iterable of dimensions wanted (default 1..r-1, the proper
    nontrivial ones).
    """
    from itertools import combinations, product as iproduct
    if dims is None:
        dims = range(1, r)
    out = []
    for k in dims:
        if k < 0 or k > r:
            continue
        if k == 0:
            out.append(())
            continue
        for pivots in combinations(range(r), k):
            free_pos = [(i, j) for i in range(k) for j in range(r)
                        if j > pivots[i] and j not in pivots]
            for vals in iproduct(range(p), repeat=len(free_pos)):
                rows = [[0] * r for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), v in zip(free_pos, vals):
                    rows[i][j] = v
                out.append(tuple(tuple(row) for row in rows))
    return out


_SUBSPACE_CACHE = {}


def subgroups_of_elementary_abelian(E):
    """All proper nontrivial subgroups of an elementary abelian Subgroup.

    Returns a list of sorted nontrivial-member index tuples.  Works by
    coordinatizing E over F_p and enumerating subspaces in RREF.
    """
    from itertools import product as iproduct
    G = E.group
    n = E.order
    p = int(G.element_orders()[E.midx[1]]) if n > 1 else 2
    r, m = 0, n
    while m > 1:
        m //= p
        r += 1
    if r <= 1:
        return []
    # coordinatize: el2vec[element index] = F_p^r coordinates
    el2vec = {0: (0,) * r}
    vec2el = {(0,) * r: 0}
    basis = []
    for x in E.midx[1:]:
        x = int(x)
        if x in el2vec:
            continue
        i = len(basis)
        basis.append(x)
        items = list(el2vec.items())
        xe = 0
        for e in range(1, p):
            xe = G.compose(x, xe)
            for el, vec in items:
                nel = G.compose(xe, el)
                nvec = vec[:i] + (e,) + vec[i + 1:]
                el2vec[nel] = nvec
                vec2el[nvec] = nel
        if len(el2vec) == n:
            break
    assert len(basis) == r and len(el2vec) == n
    key = (p, r)
    if key not in _SUBSPACE_CACHE:
        _SUBSPACE_CACHE[key] = _fp_subspaces(p, r)
    subs = []
    for rows in _SUBSPACE_CACHE[key]:
        k = len(rows)
        mem = []
        for coeffs in iproduct(range(p), repeat=k):
            if all(c == 0 for c in coeffs):
                continue
            vec = tuple(sum(c * row[j] for c, row in zip(coeffs, rows)) % p
                        for j in range(r))
            mem.append(vec2el[vec])
        subs.append(tuple(sorted(mem)))
    return subs
