import json

import pytest

from quillen.errors import MalformedSpec, OrderCapExceeded
from quillen.gspec import BUNDLED, build_group, load_group

EXPECTED = {
    "alt5": (60, 5), "sym4": (24, 4), "sym5": (120, 5), "alt6": (360, 6),
    "sym6": (720, 6), "aut-alt6": (1440, 10), "alt8": (20160, 8),
    "sym8": (40320, 8), "a8-in-s8": (40320, 8), "d10": (10, 5),
    "l34": (20160, 21), "a5xa5-e": (7200, 10), "a5xa5-exr": (14400, 10),
}


def test_bundled_list_matches():
    assert sorted(BUNDLED) == sorted(EXPECTED)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_bundled_builds(name):
    b = load_group(name)
    order, degree = EXPECTED[name]
    assert b.group.order == order
    assert b.group.degree == degree


def test_constructions():
    assert build_group({"construction": "cyclic", "degree": 6}).group.order == 6
    assert build_group({"construction": "dihedral", "order": 14}).group.order == 14
    spec = {"construction": "direct_product",
            "factors": [{"construction": "cyclic", "degree": 2},
                        {"construction": "cyclic", "degree": 3}]}
    assert build_group(spec).group.order == 6
    spec = {"construction": "subgroup_of",
            "parent": {"construction": "symmetric", "degree": 4},
            "generators": ["(1 2 3)", "(2 3 4)"]}
    assert build_group(spec).group.order == 12


def test_semidirect():
    spec = {"construction": "semidirect",
            "base": {"construction": "cyclic", "degree": 3},
            "top": ["(2 3)"]}
    assert build_group(spec).group.order == 6


def test_order_verified():
    with pytest.raises(MalformedSpec):
        build_group({"construction": "cyclic", "degree": 4, "order": 5})


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        build_group({"construction": "symmetric", "degree": 8}, order_cap=100)


def test_file_roundtrip(tmp_path):
    spec = {"name": "k4", "construction": "generators", "degree": 4,
            "generators": ["(1 2)(3 4)", "(1 3)(2 4)"]}
    path = tmp_path / "k4.spec"
    path.write_text(json.dumps(spec))
    b = load_group(str(path))
    assert b.group.order == 4
    assert b.spec.name == "k4"


def test_declared_components_parsed():
    b = load_group("a8-in-s8")
    assert len(b.components) == 1
    assert b.components[0].order == 20160


def test_malformed():
    with pytest.raises(MalformedSpec):
        build_group({"construction": "nonsense"})
    with pytest.raises(MalformedSpec):
        build_group({"degree": 5})
