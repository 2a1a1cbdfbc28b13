"""Regenerate the bundled group spec files in src/quillen/data/.

Most bundled groups are plain constructions; the two that need actual
generator arithmetic are built here from scratch:

  aut-alt6   the full automorphism group of A6, realized as the
             projective semilinear group of the line over the 9-element
             field acting on its 10 points (Mobius maps plus the field
             automorphism);
  l34        PSL(3,4) acting on the 21 points of the projective plane
             over the 4-element field, via matrices modulo scalars.

Run from the repository root:  python3 scripts/make_bundled_specs.py
"""

import json
import sys
from itertools import product
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from quillen.perms import format_cycles

DATA = Path(__file__).resolve().parents[1] / "src" / "quillen" / "data"


# -- GF(9) = GF(3)[x] / (x^2 + 1), elements a + b x encoded as a + 3 b -----------------


def f9_add(u, v):
    return (u % 3 + v % 3) % 3 + 3 * ((u // 3 + v // 3) % 3)


def f9_mul(u, v):
    a, b = u % 3, u // 3
    c, d = v % 3, v // 3
    # (a + b x)(c + d x) with x^2 = -1
    return (a * c - b * d) % 3 + 3 * ((a * d + b * c) % 3)


def f9_inv(u):
    for v in range(1, 9):
        if f9_mul(u, v) == 1:
            return v
    raise ValueError(f"{u} has no inverse")


def aut_alt6_rows():
    """Generators of the projective semilinear group on the 10 points of
    the line over GF(9): point i < 9 is the field element i, point 9 is
    the point at infinity."""
    INF = 9

    def mobius(fn):
        return [fn(z) for z in range(10)]

    lam = 4  # 1 + x, a generator of the multiplicative group
    shift = mobius(lambda z: INF if z == INF else f9_add(z, 1))
    scale = mobius(lambda z: INF if z == INF else f9_mul(z, lam))
    invert = mobius(lambda z: 0 if z == INF else INF if z == 0 else f9_inv(z))
    # the cube map fixes GF(3) and negates the x part: a + b x -> a - b x
    frob = mobius(lambda z: INF if z == INF
                  else z % 3 + 3 * ((-(z // 3)) % 3))
    return [shift, scale, invert, frob]


# -- GF(4) = {0, 1, w, w^2} encoded as 0..3 with w^2 = w + 1 ---------------------------

GF4_MUL = np.zeros((4, 4), dtype=np.int64)
for a, b in product(range(1, 4), repeat=2):
    # multiplicative group is cyclic of order 3 on {1, 2, 3} ~ {1, w, w^2}
    GF4_MUL[a, b] = 1 + ((a - 1) + (b - 1)) % 3
GF4_ADD = np.array([[0, 1, 2, 3],
                    [1, 0, 3, 2],
                    [2, 3, 0, 1],
                    [3, 2, 1, 0]], dtype=np.int64)


def l34_rows():
    """Generators of PSL(3,4) on the 21 points of the projective plane:
    a transvection, a coordinate cycle, and a diagonal torus element,
    acting on normalized column vectors."""
    points = []
    for v in product(range(4), repeat=3):
        v = np.array(v, dtype=np.int64)
        nz = np.nonzero(v)[0]
        if nz.size and v[nz[0]] == 1:
            points.append(tuple(v))
    assert len(points) == 21
    index = {v: i for i, v in enumerate(points)}

    def normalize(v):
        nz = np.nonzero(v)[0]
        lead = v[nz[0]]
        inv = [0, 1, 3, 2][lead]  # inverses in the cyclic group of order 3
        return tuple(GF4_MUL[inv, x] for x in v)

    def perm_of(mat):
        row = np.empty(21, dtype=np.int64)
        for v, i in index.items():
            img = [0, 0, 0]
            for r in range(3):
                acc = 0
                for c in range(3):
                    acc = GF4_ADD[acc, GF4_MUL[mat[r][c], v[c]]]
                img[r] = acc
            row[i] = index[normalize(np.array(img))]
        return row

    T = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]   # transvection, det 1
    C = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]   # coordinate 3-cycle, det 1
    M = [[2, 0, 0], [0, 3, 0], [0, 0, 1]]   # diag(w, w^2, 1), det 1
    return [perm_of(m) for m in (T, C, M)]


def gen_spec(name, degree, rows, order, extra=None):
    spec = {"name": name, "construction": "generators", "degree": degree,
            "generators": [format_cycles(np.asarray(r)) for r in rows],
            "order": order}
    if extra:
        spec.update(extra)
    return spec


SPECS = {
    "alt5": {"name": "alt5", "construction": "alternating", "degree": 5,
             "order": 60},
    "sym4": {"name": "sym4", "construction": "symmetric", "degree": 4,
             "order": 24},
    "sym5": {"name": "sym5", "construction": "symmetric", "degree": 5,
             "order": 120},
    "alt6": {"name": "alt6", "construction": "alternating", "degree": 6,
             "order": 360},
    "sym6": {"name": "sym6", "construction": "symmetric", "degree": 6,
             "order": 720},
    "alt8": {"name": "alt8", "construction": "alternating", "degree": 8,
             "order": 20160},
    "sym8": {"name": "sym8", "construction": "symmetric", "degree": 8,
             "order": 40320},
    "a8-in-s8": {"name": "a8-in-s8", "construction": "symmetric",
                 "degree": 8, "order": 40320,
                 "components": [["(1 2 3)", "(2 3 4 5 6 7 8)"]]},
    "d10": {"name": "d10", "construction": "dihedral", "order": 10},
    "a5xa5-e": {
        "name": "a5xa5-e",
        "construction": "semidirect",
        "base": {"construction": "direct_product",
                 "factors": [{"construction": "alternating", "degree": 5},
                             {"construction": "alternating", "degree": 5}]},
        "top": ["(1 2)(6 7)"],
        "order": 7200,
    },
    "a5xa5-exr": {
        "name": "a5xa5-exr",
        "construction": "semidirect",
        "base": {"construction": "direct_product",
                 "factors": [{"construction": "alternating", "degree": 5},
                             {"construction": "alternating", "degree": 5}]},
        "top": ["(1 2)(6 7)", "(1 6)(2 7)(3 8)(4 9)(5 10)"],
        "order": 14400,
    },
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    specs = dict(SPECS)
    specs["aut-alt6"] = gen_spec("aut-alt6", 10, aut_alt6_rows(), 1440)
    specs["l34"] = gen_spec("l34", 21, l34_rows(), 20160)
    for name, spec in sorted(specs.items()):
        path = DATA / f"{name}.spec"
        path.write_text(json.dumps(spec, indent=1) + "\n")
        print(f"wrote {path.name}")
    # verify every file builds to its expected order
    from quillen.gspec import load_group
    for name in sorted(specs):
        bundle = load_group(DATA / f"{name}.spec")
        print(f"{name}: order {bundle.group.order}, degree {bundle.group.degree}")


if __name__ == "__main__":
    main()
