"""Posets of p-subgroups of a finite group and the maps that compare them.

Covers the poset of nontrivial elementary abelian p-subgroups, the poset
of nontrivial p-radical subgroups, posets of images under a conjugation
action, posets of purely outer p-subgroups, and, for a conjugation orbit
of components, the centralizer chain with its join-of-factors target
space and the projection maps into it.  The checker layer interrogates
the rational homology of these posets and maps.
"""

from dataclasses import dataclass

import numpy as np

from .bits import iter_bits
from .errors import (
    CenterHasPTorsion,
    ComponentsUndetectable,
    EmptyFactor,
    IndexOutOfRange,
    WrongArity,
)
from .groups import (
    DEFAULT_ENUM_CAP,
    ConjugationAction,
    Subgroup,
    _check_prime,
    as_subgroup,
    center,
    centralizer,
    conjugation_action,
    detect_components,
    elementary_abelian_subgroups,
    normalizer,
    p_core,
    require_contained,
    subgroup_product,
    subgroups_of_elementary_abelian,
    sylow_subgroup,
)
from .homology import (
    DEFAULT_WORK_CAP,
    betti_of_complex,
    betti_of_poset,
    induced_map,
)
from .posets import (
    DEFAULT_SIMPLEX_CAP,
    Poset,
    PosetMap,
    SimplicialComplex,
    join_posets,
    make_map,
    order_complex,
)


# -- inclusion posets of subgroup families ---------------------------------------


def poset_from_subgroups(subs, closed_under_subgroups=False):
    """Inclusion poset of the distinct nontrivial subgroups in subs.

    Elements are ordered by (order, member tuple), a linear extension of
    inclusion.  With closed_under_subgroups=True the family must consist
    of elementary abelian subgroups and contain every nontrivial subgroup
    of each member; relations are then read off subgroup enumerations
    instead of pairwise subset tests.
    """
    seen = {}
    for S in subs:
        if S.order > 1 and S.key not in seen:
            seen[S.key] = S
    elems = sorted(seen.values(),
                   key=lambda S: (S.order, tuple(int(x) for x in S.midx)))
    n = len(elems)
    up = [0] * n
    if closed_under_subgroups:
        pos = {tuple(int(x) for x in S.midx[1:]): i for i, S in enumerate(elems)}
        for i, S in enumerate(elems):
            for t in subgroups_of_elementary_abelian(S):
                j = pos.get(t)
                if j is None:
                    raise IndexOutOfRange(
                        "family is not closed under nontrivial subgroups")
                up[j] |= 1 << i
    else:
        orders = [S.order for S in elems]
        bits = [S.bits for S in elems]
        for j in range(n):
            oj, bj = orders[j], bits[j]
            for i in range(j):
                if oj > orders[i] and oj % orders[i] == 0 and bits[i] & ~bj == 0:
                    up[i] |= 1 << j
    return Poset(elems, up)


def ap_poset(sub, p, cap=DEFAULT_ENUM_CAP):
    """Poset of nontrivial elementary abelian p-subgroups, cached on sub."""
    sub = as_subgroup(sub)
    p = _check_prime(p)
    key = ("ap-poset", p)
    if key not in sub._cache:
        elab = elementary_abelian_subgroups(sub, p, cap=cap)
        sub._cache[key] = poset_from_subgroups(elab, closed_under_subgroups=True)
    return sub._cache[key]


def meet_subposet(P, H):
    """Members of a subgroup poset meeting H nontrivially; (sub, inc ids)."""
    H = as_subgroup(H)
    ids = [i for i, S in enumerate(P.elements)
           if np.intersect1d(S.midx, H.midx).size > 1]
    return P.induced(np.array(ids, dtype=np.int64))


def subgroup_orbits(ambient, subs):
    """Orbits of a conjugation-stable list of subgroups under ambient.

    Returns a list of orbits, each a sorted list of indices into subs.
    """
    ambient = as_subgroup(ambient)
    bykey = {S.key: k for k, S in enumerate(subs)}
    gens = ambient.generating_set()
    orbits = []
    placed = [False] * len(subs)
    for k in range(len(subs)):
        if placed[k]:
            continue
        orb = [k]
        placed[k] = True
        queue = [subs[k]]
        while queue:
            S = queue.pop()
            for g in gens:
                T = S.conjugate(g)
                j = bykey.get(T.key)
                if j is None:
                    raise IndexOutOfRange(
                        "subgroup family is not stable under conjugation")
                if not placed[j]:
                    placed[j] = True
                    orb.append(j)
                    queue.append(subs[j])
        orbits.append(sorted(orb))
    return orbits


def conj_action_tables(P, S):
    """Permutation tables (one per generator of S) of S conjugating a poset
    of subgroups.  Raises if some conjugate leaves the poset."""
    S = as_subgroup(S)
    tables = []
    for g in S.generating_set():
        tab = np.empty(P.n, dtype=np.int64)
        for i, lbl in enumerate(P.elements):
            j = P.index.get(lbl.conjugate(g))
            if j is None:
                raise IndexOutOfRange(
                    "conjugation does not preserve the poset")
            tab[i] = j
        tables.append(tab)
    return tables


# -- radical p-subgroups ----------------------------------------------------------


def _p_subgroup_class_reps(P):
    """Subgroups of a p-group P up to P-conjugacy, including 1 and P.

    Extends each known representative by every element outside it; a new
    subgroup's whole P-class is marked seen at once, so each class is
    extended exactly once.  Every subgroup T arises from a representative
    of a maximal subgroup of a conjugate of T, so nothing is missed.
    """
    G = P.group
    trivial = Subgroup(G, np.array([0], dtype=np.int64), gens=(0,))
    reps = [trivial]
    seen = {trivial.key}
    pgens = P.generating_set()
    frontier = [trivial]
    while frontier:
        fresh = []
        for S in frontier:
            if S.order == P.order:
                continue
            smem = set(int(x) for x in S.midx)
            sgens = S.generating_set()
            for x in P.midx:
                x = int(x)
                if x in smem:
                    continue
                T = G.subgroup(sgens + (x,))
                if T.key in seen:
                    continue
                seen.add(T.key)
                queue = [T]
                while queue:
                    U = queue.pop()
                    for g in pgens:
                        V = U.conjugate(g)
                        if V.key not in seen:
                            seen.add(V.key)
                            queue.append(V)
                fresh.append(T)
        reps.extend(fresh)
        frontier = fresh
    return reps


def bouc_poset(sub, p):
    """Poset of nontrivial p-radical subgroups of sub.

    A p-subgroup R is radical when R is the p-core of its normalizer.
    Candidates are taken up to Sylow conjugacy, tested, and the radical
    classes expanded to full conjugacy classes under sub.
    """
    sub = as_subgroup(sub)
    p = _check_prime(p)
    key = ("bouc", p)
    if key in sub._cache:
        return sub._cache[key]
    radicals = {}
    P = sylow_subgroup(sub, p)
    if P.order > 1:
        gens = sub.generating_set()
        for S in _p_subgroup_class_reps(P):
            if S.order == 1 or S.key in radicals:
                continue
            N = normalizer(sub, S)
            if p_core(N, p).key != S.key:
                continue
            radicals[S.key] = S
            queue = [S]
            while queue:
                U = queue.pop()
                for g in gens:
                    V = U.conjugate(g)
                    if V.key not in radicals:
                        radicals[V.key] = V
                        queue.append(V)
    poset = poset_from_subgroups(radicals.values())
    sub._cache[key] = poset
    return poset


# -- image posets under a conjugation action ---------------------------------------


@dataclass
class ImagePoset:
    """Image of the p-subgroup poset of a normalizer under its action on L.

    poset has the nontrivial projections pi(E) as labels (Subgroups of
    action.image); embedded is the isomorphic copy of source = the
    p-subgroup poset of L, well defined because Z(L) has no p-torsion.
    """
    poset: Poset
    action: ConjugationAction
    host: Subgroup
    source: Poset
    embedded: PosetMap


def _check_embedded_copy(source, poset, f):
    imgs = set()
    for i, E in enumerate(source.elements):
        j = f(i)
        assert poset.elements[j].order == E.order, \
            "projection is not faithful on p-subgroups of L"
        imgs.add(j)
    assert len(imgs) == source.n, "embedded copy is not injective"
    mask = 0
    for j in imgs:
        mask |= 1 << j
    for i in range(source.n):
        expect = 0
        for k in iter_bits(source.up[i]):
            expect |= 1 << f(k)
        assert poset.up[f(i)] & mask == expect, \
            "embedded copy is not an induced subposet"


def image_poset_from_action(act, p, cap=DEFAULT_ENUM_CAP):
    """Image poset of an existing conjugation action (actor normalizes L)."""
    p = _check_prime(p)
    zorders = np.asarray(center(act.target).element_orders())
    if np.any(zorders % p == 0):
        raise CenterHasPTorsion(
            f"center of the target (order {center(act.target).order}) "
            f"has {p}-torsion")
    images = {}
    for E in elementary_abelian_subgroups(act.actor, p, cap=cap):
        S = act.project_subgroup(E)
        if S.order > 1 and S.key not in images:
            images[S.key] = S
    poset = poset_from_subgroups(images.values(), closed_under_subgroups=True)
    source = ap_poset(act.target, p, cap=cap)
    embedded = make_map(source, poset, act.project_subgroup)
    _check_embedded_copy(source, poset, embedded)
    return ImagePoset(poset=poset, action=act, host=act.actor,
                      source=source, embedded=embedded)


def image_poset(ambient, L, p, cap=DEFAULT_ENUM_CAP, track_cap=3000):
    """Poset of images of elementary abelian p-subgroups of N_ambient(L)
    in the automorphisms of L induced by conjugation.

    Requires Z(L) to have no p-torsion (CenterHasPTorsion otherwise).
    """
    ambient = as_subgroup(ambient)
    L = as_subgroup(L)
    require_contained(ambient, L)
    host = normalizer(ambient, L)
    act = conjugation_action(host, L, track_cap=track_cap)
    return image_poset_from_action(act, p, cap=cap)


def outers_in_image(ip):
    """Ids of members of an image poset meeting the inner automorphisms
    trivially, plus the inner-automorphism subgroup itself."""
    inn = ip.action.project_subgroup(ip.action.target)
    ids = [i for i, S in enumerate(ip.poset.elements)
           if np.intersect1d(S.midx, inn.midx).size == 1]
    return ids, inn


# -- purely outer p-subgroups -------------------------------------------------------


@dataclass
class OuterPoset:
    """Elementary abelian p-subgroups of N_ambient(L) meeting L * C_ambient(L)
    only in the identity."""
    poset: Poset
    host: Subgroup
    product: Subgroup
    cyclic_only: bool


def p_outer_poset(ambient, L, p, cap=DEFAULT_ENUM_CAP):
    ambient = as_subgroup(ambient)
    L = as_subgroup(L)
    require_contained(ambient, L)
    host = normalizer(ambient, L)
    LC = subgroup_product(L, centralizer(ambient, L))
    members = [A for A in elementary_abelian_subgroups(host, p, cap=cap)
               if np.intersect1d(A.midx, LC.midx).size == 1]
    poset = poset_from_subgroups(members, closed_under_subgroups=True)
    cyclic_only = bool(members) and all(A.order == p for A in members)
    return OuterPoset(poset=poset, host=host, product=LC,
                      cyclic_only=cyclic_only)


# -- orbit contexts -----------------------------------------------------------------


def _tag_poset(P, tag):
    return Poset([(tag, e) for e in P.elements], P.up)


@dataclass
class JoinData:
    """The join X of the chain factors, with its prefix joins W[i]."""
    X: Poset
    W: list
    active: list
    factor_posets: dict
    factor_of: np.ndarray
    blocks: dict
    base_vertex: dict


@dataclass
class JoinComplexes:
    """Order complex of X with the two distinguished subcomplexes: K0 has
    the chains that miss at least one nonempty factor, K0hat the chains
    lying in the star of some fixed factor vertex."""
    KX: SimplicialComplex
    K0: SimplicialComplex
    K0hat: SimplicialComplex
    k0hat_betti: object


class OrbitContext:
    """One conjugation orbit of components with its centralizer chain.

    Given an ambient group, a prime p, and an orbit {L_1, ..., L_t} of
    components under conjugation, fixes an order on the orbit, computes
    H (the intersection of the normalizers of the L_i), N = L_1 ... L_t,
    and the chain C_0 <= ... <= C_t = H where C_i centralizes the later
    components in H, and materializes on demand the p-subgroup posets of
    the chain, the image-poset factors, their join, and the projection
    maps between them.  Chain identities (components sit inside their
    chain member, action kernels march down the chain, H and N and C_G(N)
    are normal) are verified at construction time.
    """

    def __init__(self, group, p, components=None, orbit_index=0, order=None,
                 cap=DEFAULT_ENUM_CAP, track_cap=3000,
                 work_cap=DEFAULT_WORK_CAP):
        self.G = as_subgroup(group)
        self.p = _check_prime(p)
        self.cap = cap
        self.work_cap = work_cap
        comps, how = detect_components(self.G, declared=components)
        if not comps:
            raise ComponentsUndetectable("group has no components")
        self.components = comps
        self.components_how = how
        orbit_ids = subgroup_orbits(self.G, comps)
        orbits = [[comps[k] for k in orb] for orb in orbit_ids]
        for orb in orbits:
            orb.sort(key=lambda L: int(L.midx[1]))
        orbits.sort(key=lambda orb: int(orb[0].midx[1]))
        self.orbits = orbits
        if not 0 <= orbit_index < len(orbits):
            raise IndexOutOfRange(
                f"orbit index {orbit_index} out of range ({len(orbits)} orbits)")
        orb = list(orbits[orbit_index])
        if order is not None:
            order = [int(k) for k in order]
            if sorted(order) != list(range(len(orb))):
                raise WrongArity(
                    f"component order must be a permutation of 0..{len(orb) - 1}")
            orb = [orb[k] for k in order]
        self.orbit = orb
        self.t = len(orb)

        H = self.G
        for L in orb:
            H = H.intersection(normalizer(self.G, L))
        self.H = H
        N = orb[0]
        for L in orb[1:]:
            N = subgroup_product(N, L)
        self.N = N

        C = [None] * (self.t + 1)
        C[self.t] = H
        for i in range(self.t - 1, -1, -1):
            C[i] = centralizer(C[i + 1], orb[i])
        self.C = C
        if centralizer(self.G, N).key != C[0].key:
            raise ComponentsUndetectable(
                "centralizer chain does not bottom out at C_G(N); the "
                "components are not a full conjugation orbit")
        for i in range(1, self.t + 1):
            if not orb[i - 1].is_subset_of(C[i]):
                raise ComponentsUndetectable(
                    "a component does not centralize the later components")
        for S in (self.H, self.N, C[0]):
            if normalizer(self.G, S).order != self.G.order:
                raise ComponentsUndetectable(
                    "H, N or C_G(N) is not normal; orbit is incomplete")

        self.actions = [None]
        for i in range(1, self.t + 1):
            act = conjugation_action(C[i], orb[i - 1], track_cap=track_cap)
            if act.kernel.key != C[i - 1].key:
                raise ComponentsUndetectable(
                    "kernel of the chain action is not the chain predecessor")
            self.actions.append(act)
        self.cent = [None] + [centralizer(H, L) for L in orb]

        zorders = np.asarray(center(orb[0]).element_orders())
        self.center_p_prime = not bool(np.any(zorders % self.p == 0))
        self.p_divides_component = orb[0].order % self.p == 0
        self._cache = {}

    # -- posets --------------------------------------------------------------

    def ap_G(self):
        return ap_poset(self.G, self.p, cap=self.cap)

    def ap_H(self):
        return ap_poset(self.H, self.p, cap=self.cap)

    def ap_C(self, i):
        return ap_poset(self.C[i], self.p, cap=self.cap)

    def ap_component(self, i):
        """p-subgroup poset of L_i (1-based)."""
        return ap_poset(self.orbit[i - 1], self.p, cap=self.cap)

    def factor(self, i):
        """Image poset A_i of the chain action of C_i on L_i (1-based)."""
        if not 1 <= i <= self.t:
            raise IndexOutOfRange(f"factor index {i} out of 1..{self.t}")
        key = ("factor", i)
        if key not in self._cache:
            self._cache[key] = image_poset_from_action(
                self.actions[i], self.p, cap=self.cap)
        return self._cache[key]

    # -- the join and its subcomplexes ----------------------------------------

    def join(self):
        if "join" not in self._cache:
            tagged = {}
            apc0 = self.ap_C(0)
            if apc0.n:
                tagged[0] = _tag_poset(apc0, 0)
            for i in range(1, self.t + 1):
                fp = self.factor(i).poset
                if fp.n == 0:
                    raise EmptyFactor(
                        f"factor {i} is empty; p does not divide the "
                        f"component order")
                tagged[i] = _tag_poset(fp, i)
            active = sorted(tagged)
            W = []
            for i in range(self.t + 1):
                blocks = [tagged[j] for j in active if j <= i]
                W.append(join_posets(blocks, tag_elements=False)
                         if blocks else Poset([], []))
            X = W[self.t]
            factor_of = np.empty(X.n, dtype=np.int64)
            blocks = {}
            pos = 0
            for j in active:
                blocks[j] = (pos, pos + tagged[j].n)
                factor_of[pos:pos + tagged[j].n] = j
                pos += tagged[j].n
            base_vertex = {j: blocks[j][0] for j in active}
            self._cache["join"] = JoinData(
                X=X, W=W, active=active, factor_posets=tagged,
                factor_of=factor_of, blocks=blocks, base_vertex=base_vertex)
        return self._cache["join"]

    def complexes(self, simplex_cap=DEFAULT_SIMPLEX_CAP):
        """Order complex of X with the K0 and K0hat subcomplexes.

        K0hat (union of stars of one vertex per factor) is verified
        acyclic and to contain K0."""
        if "complexes" not in self._cache:
            jd = self.join()
            KX = order_complex(jd.X, cap=simplex_cap)
            nactive = len(jd.active)
            cmp_masks = [jd.X.up[jd.base_vertex[j]]
                         | jd.X.down[jd.base_vertex[j]]
                         | (1 << jd.base_vertex[j]) for j in jd.active]
            k0_dims, hat_dims = [], []
            for simps in KX.dims:
                keep0, keephat = [], []
                for s in simps:
                    touched = len(set(int(jd.factor_of[v]) for v in s))
                    if touched < nactive:
                        keep0.append(s)
                    sbits = 0
                    for v in s:
                        sbits |= 1 << v
                    if any(sbits & ~m == 0 for m in cmp_masks):
                        keephat.append(s)
                k0_dims.append(keep0)
                hat_dims.append(keephat)
            K0 = SimplicialComplex(k0_dims)
            K0hat = SimplicialComplex(hat_dims)
            assert K0.is_subcomplex_of(K0hat)
            bhat = betti_of_complex(K0hat, work_cap=self.work_cap)
            assert bhat.is_zero(), "union of factor stars is not acyclic"
            self._cache["complexes"] = JoinComplexes(
                KX=KX, K0=K0, K0hat=K0hat, k0hat_betti=bhat)
        return self._cache["complexes"]

    # -- projections -----------------------------------------------------------

    def projection_index(self, E, i=None):
        """Largest j <= i with E not centralizing L_j, or 0."""
        if i is None:
            i = self.t
        for j in range(i, 0, -1):
            if not E.is_subset_of(self.cent[j]):
                return j
        return 0

    def psi(self, i=None, verify=True):
        """The projection of the p-subgroup poset of C_i onto W[i].

        E goes to its image in the factor named by projection_index; with
        verify=True the equivalent description (smallest j with E inside
        C_j) is checked elementwise, and the order-preservation check of
        the PosetMap constructor is kept on.
        """
        if i is None:
            i = self.t
        key = ("psi", i)
        if key in self._cache:
            return self._cache[key]
        jd = self.join()
        source = self.ap_C(i)
        target = jd.W[i]
        labels = []
        for E in source.elements:
            k = self.projection_index(E, i)
            if verify:
                kk = i
                for j in range(0, i):
                    if E.is_subset_of(self.C[j]):
                        kk = j
                        break
                assert kk == k, \
                    "the two descriptions of the projection index disagree"
            labels.append((k, E) if k == 0
                          else (k, self.actions[k].project_subgroup(E)))
        table = np.array([target.index[lab] for lab in labels],
                         dtype=np.int64)
        self._cache[key] = PosetMap(source, target, table, validate=verify)
        return self._cache[key]

    # -- transfer maps between mixed joins ---------------------------------------

    def mixed_join(self, i, j):
        """T(i, j): the p-subgroup poset of C_i joined with factors i+1..j.

        The ambient block is tagged 'amb'; T(0, j) is W[j] itself."""
        if i == 0:
            return self.join().W[j]
        if not 1 <= i <= j <= self.t:
            raise IndexOutOfRange(f"mixed join indices ({i}, {j}) invalid")
        key = ("T", i, j)
        if key not in self._cache:
            jd = self.join()
            blocks = [_tag_poset(self.ap_C(i), "amb")]
            blocks += [jd.factor_posets[k] for k in range(i + 1, j + 1)]
            self._cache[key] = join_posets(blocks, tag_elements=False)
        return self._cache[key]

    def phi_step(self, i, j=None):
        """Transfer map T(i, j) -> T(i-1, j): the ambient part either stays
        (inside C_{i-1}) or projects into factor i; factor blocks are kept."""
        if j is None:
            j = i
        if not 1 <= i <= j <= self.t:
            raise IndexOutOfRange(f"transfer map indices ({i}, {j}) invalid")
        key = ("phi", i, j)
        if key in self._cache:
            return self._cache[key]
        source = self.mixed_join(i, j)
        target = self.mixed_join(i - 1, j)
        act = self.actions[i]
        Cprev = self.C[i - 1]
        amb_out = "amb" if i >= 2 else 0
        labels = []
        for tag, S in source.elements:
            if tag == "amb":
                if S.is_subset_of(Cprev):
                    labels.append((amb_out, S))
                else:
                    labels.append((i, act.project_subgroup(S)))
            else:
                labels.append((tag, S))
        table = np.array([target.index[lab] for lab in labels],
                         dtype=np.int64)
        self._cache[key] = PosetMap(source, target, table)
        return self._cache[key]


def verify_psi_tower(ctx):
    """The projections commute with the inclusions up the chain; checks
    every element of every chain poset, returns the number checked."""
    checked = 0
    for i in range(1, ctx.t + 1):
        lo, hi = ctx.psi(i - 1), ctx.psi(i)
        src_lo, src_hi = ctx.ap_C(i - 1), ctx.ap_C(i)
        for a, E in enumerate(src_lo.elements):
            b = src_hi.index[E]
            la = lo.target.elements[lo.table[a]]
            lb = hi.target.elements[hi.table[b]]
            assert la == lb, "projection does not commute with inclusion"
            checked += 1
    return checked


def verify_phi_factorization(ctx, i=None):
    """psi_i agrees elementwise with the composite of the transfer maps
    Phi_{1,i} o ... o Phi_{i,i}; returns the number of elements checked."""
    if i is None:
        i = ctx.t
    if i == 0:
        return 0
    comp = ctx.phi_step(i, i)
    for k in range(i - 1, 0, -1):
        comp = ctx.phi_step(k, i).compose(comp)
    psi = ctx.psi(i)
    assert comp.target is psi.target
    src = ctx.ap_C(i)
    Tii = ctx.mixed_join(i, i)
    for a in range(src.n):
        b = Tii.index[("amb", src.elements[a])]
        assert int(comp.table[b]) == int(psi.table[a]), \
            "transfer maps do not compose to the projection"
    return src.n


# -- the decomposition along H -------------------------------------------------------


@dataclass
class Decomposition:
    """B = Y u Z: Y the members of the ambient p-subgroup poset meeting H,
    Z those not inside H, Y0 their intersection, V0 the poset of meets
    E n H over Y0, inside the p-subgroup poset AH of H."""
    B: Poset
    Y: Poset
    Z: Poset
    Y0: Poset
    V0: Poset
    AH: Poset
    ids_Y: np.ndarray
    ids_Z: np.ndarray
    ids_Y0: np.ndarray
    ids_V0: np.ndarray
    a: PosetMap
    r: PosetMap
    r0: PosetMap
    b: PosetMap
    trivial: bool
    v0_in_diagonal: bool


def decomposition(ctx):
    if "decomp" in ctx._cache:
        return ctx._cache["decomp"]
    B = ctx.ap_G()
    H = ctx.H
    G = ctx.G.group
    inY, inZ, meets = [], [], {}
    for idx, E in enumerate(B.elements):
        m = np.intersect1d(E.midx, H.midx)
        if m.size > 1:
            inY.append(idx)
            meets[idx] = m
        if m.size < E.midx.size:
            inZ.append(idx)
    Y, ids_Y = B.induced(np.array(inY, dtype=np.int64))
    Z, ids_Z = B.induced(np.array(inZ, dtype=np.int64))
    ids_Y0 = np.intersect1d(ids_Y, ids_Z)
    Y0, _ = B.induced(ids_Y0)
    AH = ctx.ap_H()
    # the maps below are intersections and inclusions, all order-preserving
    rtab = np.array([AH.index[Subgroup(G, meets[int(o)])] for o in ids_Y],
                    dtype=np.int64)
    r = PosetMap(Y, AH, rtab, validate=False)
    posY = {int(o): k for k, o in enumerate(ids_Y)}
    y0_in_Y = np.array([posY[int(o)] for o in ids_Y0], dtype=np.int64)
    ids_V0 = np.unique(rtab[y0_in_Y])
    V0, _ = AH.induced(ids_V0)
    a = PosetMap(Y0, Y, y0_in_Y, validate=False)
    r0 = PosetMap(Y0, V0, np.searchsorted(ids_V0, rtab[y0_in_Y]),
                  validate=False)
    b = PosetMap(V0, AH, ids_V0, validate=False)
    trivial = len(inZ) == 0
    if ctx.t >= 2:
        D, _, dids = diagonal_poset(ctx)
        v0_in_diagonal = set(int(x) for x in ids_V0) <= set(int(x) for x in dids)
    else:
        v0_in_diagonal = ids_V0.size == 0
    ctx._cache["decomp"] = Decomposition(
        B=B, Y=Y, Z=Z, Y0=Y0, V0=V0, AH=AH,
        ids_Y=ids_Y, ids_Z=ids_Z, ids_Y0=ids_Y0, ids_V0=ids_V0,
        a=a, r=r, r0=r0, b=b, trivial=trivial,
        v0_in_diagonal=v0_in_diagonal)
    return ctx._cache["decomp"]


def diagonal_poset(ctx):
    """Members A of the p-subgroup poset of H whose meets with the
    component centralizers coincide for at least two components.

    Returns (poset, inclusion map into the poset of H, ids)."""
    if "diagonal" not in ctx._cache:
        AH = ctx.ap_H()
        ids = []
        for idx, A in enumerate(AH.elements):
            cuts = set()
            dup = False
            for j in range(1, ctx.t + 1):
                c = np.intersect1d(A.midx, ctx.cent[j].midx).tobytes()
                if c in cuts:
                    dup = True
                    break
                cuts.add(c)
            if dup:
                ids.append(idx)
        D, inc = AH.induced(np.array(ids, dtype=np.int64))
        dmap = PosetMap(D, AH, inc, validate=False)
        ctx._cache["diagonal"] = (D, dmap, inc)
    return ctx._cache["diagonal"]


def off_component_subposet(ctx):
    """Members of the p-subgroup poset of H lying inside no single component.

    Returns (poset, inclusion map into the poset of H, ids).  Not the same
    subposet as diagonal_poset: for two components this one is strictly
    larger (it keeps subgroups whose centralizer meets are distinct),
    while for three or more it misses the members of a single component,
    which satisfy the equal-centralizer condition through the other two."""
    if "off-component" not in ctx._cache:
        AH = ctx.ap_H()
        ids = [i for i, A in enumerate(AH.elements)
               if not any(A.is_subset_of(L) for L in ctx.orbit)]
        Dc, inc = AH.induced(np.array(ids, dtype=np.int64))
        cmap = PosetMap(Dc, AH, inc, validate=False)
        ctx._cache["off-component"] = (Dc, cmap, inc)
    return ctx._cache["off-component"]


# -- the standard equivalence on the inner part ----------------------------------------


def _convolve_reduced(bettis):
    """Degree -> rank of the join of spaces with the given reduced Betti
    vectors (degree n collects products over i + j = n - 1)."""
    acc = {-1: 1}
    for b in bettis:
        nxt = {}
        for d1, v1 in acc.items():
            for d2 in range(-1, len(b.tilde)):
                v2 = b.get(d2)
                if v1 and v2:
                    nxt[d1 + d2 + 1] = nxt.get(d1 + d2 + 1, 0) + v1 * v2
        acc = nxt
    return acc


@dataclass
class SubjoinReport:
    """psi restricted to the members inside H0 = C_H(N) L_1 ... L_t, landing
    on the join of the embedded factor copies."""
    h0: Subgroup
    image_matches_subjoin: bool
    map_report: object
    iso: bool
    subjoin_betti: object
    kunneth_ok: bool


def psi_h0_equivalence_report(ctx, work_cap=None):
    """Restrict the projection to the p-subgroups of H0 = C_H(N) L_1...L_t
    and verify it lands on the join of the embedded copies of the factor
    posets, isomorphically in rational homology, with the join's Betti
    numbers matching the product formula."""
    wc = work_cap or ctx.work_cap
    H0 = ctx.C[0]
    for L in ctx.orbit:
        H0 = subgroup_product(H0, L)
    AH = ctx.ap_H()
    psi = ctx.psi()
    jd = ctx.join()
    b0ids = np.array([i for i, E in enumerate(AH.elements)
                      if E.is_subset_of(H0)], dtype=np.int64)
    B0, _ = AH.induced(b0ids)
    expected = set()
    if 0 in jd.active:
        expected.update(range(*jd.blocks[0]))
    for i in range(1, ctx.t + 1):
        off = jd.blocks[i][0]
        expected.update(int(off + v) for v in ctx.factor(i).embedded.table)
    image_ids = set(int(psi.table[i]) for i in b0ids)
    matches = image_ids == expected
    Jids = np.array(sorted(expected), dtype=np.int64)
    J, _ = jd.X.induced(Jids)
    restricted = PosetMap(B0, J, np.searchsorted(Jids, psi.table[b0ids]),
                          validate=False)
    rep = induced_map(restricted, work_cap=wc)
    top = max(len(rep.source_betti.tilde), len(rep.target_betti.tilde))
    iso = all(rep.rank(k) == rep.source_betti.get(k) == rep.target_betti.get(k)
              for k in range(-1, top))
    factor_bettis = [betti_of_poset(ctx.ap_C(0), work_cap=wc)] \
        if 0 in jd.active else []
    factor_bettis += [betti_of_poset(ctx.ap_component(i), work_cap=wc)
                      for i in range(1, ctx.t + 1)]
    conv = _convolve_reduced(factor_bettis)
    bJ = betti_of_poset(J, work_cap=wc)
    degs = set(conv) | set(bJ.nonzero_degrees())
    kunneth_ok = all(bJ.get(d) == conv.get(d, 0) for d in degs)
    return SubjoinReport(h0=H0, image_matches_subjoin=matches,
                         map_report=rep, iso=iso, subjoin_betti=bJ,
                         kunneth_ok=kunneth_ok)
