"""Group spec files: a small JSON format describing how to build a group.

A spec is a JSON object with a "construction" field:

  generators      {"degree": n, "generators": ["(1 2)(3 4)", ...]}
  symmetric       {"degree": n}
  alternating     {"degree": n}
  cyclic          {"degree": n}
  dihedral        {"order": 2*m}          acts on m points
  direct_product  {"factors": [spec, ...]}
  semidirect      {"base": spec, "top": ["...", ...]}
                  top permutations act on the base's points and must
                  normalize the base
  subgroup_of     {"parent": spec, "generators": [...]}

plus optional "name", "order" (expected order, verified), "cap" (order
cap) and "components" (list of generator lists declaring quasisimple
subgroups, for groups whose components the detector cannot certify or
where a specific choice is wanted).

Cycle notation in files is 1-based; indices are 0-based internally.
"""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import MalformedSpec
from .groups import DEFAULT_ORDER_CAP, PermGroup, Subgroup, close_indices
from .perms import parse_cycles

BUNDLED = [
    "alt5", "sym4", "sym5", "alt6", "sym6", "aut-alt6",
    "alt8", "sym8", "a8-in-s8", "d10", "l34", "a5xa5-e", "a5xa5-exr",
]


@dataclass
class GroupSpec:
    name: str
    raw: dict
    path: str = ""

    @classmethod
    def from_text(cls, text, name="", path=""):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedSpec(f"not valid JSON: {e}")
        if not isinstance(raw, dict) or "construction" not in raw:
            raise MalformedSpec("spec must be a JSON object with a 'construction' field")
        return cls(name=raw.get("name", name), raw=raw, path=path)


@dataclass
class GroupBundle:
    group: PermGroup
    components: list = None   # declared components as Subgroups, or None
    spec: GroupSpec = None


def _sym_gens(n):
    if n < 2:
        return []
    t = list(range(n)); t[0], t[1] = 1, 0
    c = list(range(1, n)) + [0]
    return [t, c] if n > 2 else [t]


def _alt_gens(n):
    if n < 3:
        return []
    return [[*range(i), i + 1, i + 2, i, *range(i + 3, n)] for i in range(n - 2)]


def _build_rows(raw, degree_hint=None):
    """Return (degree, generator rows) for a spec dict."""
    cons = raw.get("construction")
    if cons is None:
        raise MalformedSpec("spec has no construction field")
    if cons == "generators":
        degree = raw.get("degree", degree_hint)
        if degree is None:
            raise MalformedSpec("generators construction needs a degree")
        rows = [parse_cycles(s, degree) for s in raw.get("generators", [])]
        return degree, rows
    if cons == "symmetric":
        n = int(raw["degree"])
        return n, [np.array(g) for g in _sym_gens(n)]
    if cons == "alternating":
        n = int(raw["degree"])
        return n, [np.array(g) for g in _alt_gens(n)]
    if cons == "cyclic":
        n = int(raw["degree"])
        if n < 2:
            return 1, []
        return n, [np.roll(np.arange(n), -1)]
    if cons == "dihedral":
        order = int(raw["order"])
        if order < 6 or order % 2:
            raise MalformedSpec("dihedral order must be even and at least 6")
        m = order // 2
        rot = np.roll(np.arange(m), -1)
        ref = (-np.arange(m)) % m
        return m, [rot, ref]
    if cons == "direct_product":
        parts = [_build_rows(f)[:2] for f in raw["factors"]]
        degree = sum(d for d, _ in parts)
        rows = []
        off = 0
        for d, rs in parts:
            for r in rs:
                full = np.arange(degree)
                full[off:off + d] = np.asarray(r) + off
                rows.append(full)
            off += d
        return degree, rows
    if cons == "semidirect":
        degree, base_rows = _build_rows(raw["base"])
        top_rows = [parse_cycles(s, degree) for s in raw.get("top", [])]
        return degree, base_rows + top_rows, ("semidirect", base_rows, top_rows)
    if cons == "subgroup_of":
        degree, _ = _build_rows(raw["parent"])[:2]
        rows = [parse_cycles(s, degree) for s in raw.get("generators", [])]
        return degree, rows, ("subgroup_of", raw["parent"])
    raise MalformedSpec(f"unknown construction {cons!r}")


def build_group(spec, order_cap=None):
    """Build a GroupBundle from a GroupSpec (or raw dict)."""
    if isinstance(spec, dict):
        spec = GroupSpec(name=spec.get("name", ""), raw=spec)
    raw = spec.raw
    cap = order_cap or raw.get("cap", DEFAULT_ORDER_CAP)
    built = _build_rows(raw)
    degree, rows = built[0], built[1]
    extra = built[2] if len(built) > 2 else None
    G = PermGroup.generate(rows, degree, name=spec.name, order_cap=cap)

    if extra and extra[0] == "semidirect":
        base_rows = extra[1]
        base = G.subgroup([G.lookup_row(r) for r in base_rows])
        for t in extra[2]:
            ti = G.lookup_row(t)
            conj = base.conjugate(ti)
            if conj.key != base.key:
                raise MalformedSpec("semidirect top does not normalize the base")
        G._cache["semidirect_base"] = base
    if extra and extra[0] == "subgroup_of":
        pdeg, prows = _build_rows(extra[1])[:2]
        parent = PermGroup.generate(prows, pdeg, name="parent", order_cap=cap)
        for i in range(G.order):
            if G.perms[i].tobytes() not in parent._index:
                raise MalformedSpec("subgroup_of generators leave the parent group")

    expect = raw.get("order")
    if expect is not None and G.order != int(expect):
        raise MalformedSpec(
            f"spec {spec.name!r} expected order {expect}, built {G.order}")

    comps = None
    if "components" in raw:
        comps = []
        for gen_list in raw["components"]:
            idx = [G.lookup_row(parse_cycles(s, degree)) for s in gen_list]
            members = close_indices(G, [i for i in idx if i != 0])
            comps.append(Subgroup(G, members, gens=tuple(i for i in idx if i != 0) or (0,)))
    return GroupBundle(group=G, components=comps, spec=spec)


def load_group(name_or_path, order_cap=None):
    """Load a bundled spec by name, or any .spec file by path."""
    p = Path(str(name_or_path))
    if p.suffix == ".spec" and p.exists():
        text = p.read_text()
        return build_group(GroupSpec.from_text(text, name=p.stem, path=str(p)),
                           order_cap=order_cap)
    name = str(name_or_path)
    if name in BUNDLED:
        text = resources.files("quillen").joinpath(
            "data", f"{name}.spec").read_text()
        return build_group(GroupSpec.from_text(text, name=name), order_cap=order_cap)
    raise MalformedSpec(
        f"unknown group {name_or_path!r}; bundled names: {', '.join(BUNDLED)}")
