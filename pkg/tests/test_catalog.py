import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistspec.errors import DefinitionError
from twistspec.catalog import (GroupDefinition, abelian, alternating, build,
                               cyclic, dihedral, direct_product, from_json_dict,
                               holomorph_cyclic, load, m9, metacyclic,
                               quaternion_dicyclic, save, shipped_catalog,
                               sl2, slug, symmetric, write_catalog)


# -- builders -------------------------------------------------------------------

@pytest.mark.parametrize("defn,order,k", [
    (cyclic(4), 4, 4),
    (cyclic(1), 1, 1),
    (symmetric(4), 24, 5),
    (symmetric(2), 2, 2),
    (alternating(5), 60, 5),
    (dihedral(4), 8, 5),
    (dihedral(5), 10, 4),
    (quaternion_dicyclic(2), 8, 5),
    (quaternion_dicyclic(3), 12, 6),
    (abelian(2, 6), 12, 12),
    (metacyclic(7, 3, 2), 21, 5),
    (holomorph_cyclic(5), 20, 5),
    (holomorph_cyclic(2), 2, 2),
    (m9(), 72, 6),
    (sl2(3), 24, 7),
    (sl2(5), 120, 9),
    (direct_product(symmetric(3), cyclic(2)), 12, 6),
])
def test_builder_orders_and_class_numbers(defn, order, k):
    group = build(defn)
    assert group.order == order
    assert group.class_number() == k


def test_metacyclic_uses_small_degree_when_faithful():
    assert metacyclic(7, 3, 2).degree == 7
    # 2 has order 2 mod 3, so Z3 x| Z6 needs the regular action
    assert metacyclic(3, 6, 2).degree == 18
    assert build(metacyclic(3, 6, 2)).order == 18


def test_invalid_builder_parameters():
    with pytest.raises(DefinitionError):
        metacyclic(7, 3, 3)  # 3^3 = 27 != 1 mod 7
    with pytest.raises(DefinitionError):
        metacyclic(6, 2, 2)  # r not a unit
    with pytest.raises(DefinitionError):
        dihedral(2)
    with pytest.raises(DefinitionError):
        quaternion_dicyclic(1)
    with pytest.raises(DefinitionError):
        sl2(7)
    with pytest.raises(DefinitionError):
        holomorph_cyclic(1)
    with pytest.raises(DefinitionError):
        abelian(1, 2)


def test_holomorph_generator_counts():
    # unit group of Z15 is not cyclic: needs two unit generators
    assert len(holomorph_cyclic(15).generators) == 3
    # 2 is the smallest primitive root mod 5
    assert len(holomorph_cyclic(5).generators) == 2
    assert build(holomorph_cyclic(9)).class_number() == 10


def test_expected_block_mismatch_fails_loudly():
    bad = cyclic(4)
    bad.expected = {"order": 5}
    with pytest.raises(DefinitionError):
        build(bad)
    bad = cyclic(4)
    bad.expected = {"order": 4, "class_number": 3}
    with pytest.raises(DefinitionError):
        build(bad)


# -- file format -------------------------------------------------------------------

def test_round_trip(tmp_path):
    defn = symmetric(4)
    path = tmp_path / "s4.json"
    save(defn, path)
    loaded = load(path)
    assert loaded == defn


def test_file_contents_are_stable(tmp_path):
    path = tmp_path / "z2.json"
    save(cyclic(2), path)
    doc = json.loads(path.read_text())
    assert doc == {
        "name": "Z2",
        "degree": 2,
        "generators": [[2, 1]],
        "expected": {"order": 2, "class_number": 2},
    }


@pytest.mark.parametrize("doc,fragment", [
    ({"name": "X", "degree": 3}, "missing field"),
    ({"name": "X", "degree": 3, "generators": [[1, 1, 2]]}, "generator 1"),
    ({"name": "X", "degree": 3, "generators": [[2, 1]]}, "degree"),
    ({"name": "", "degree": 3, "generators": []}, "name"),
    ({"name": "X", "degree": 0, "generators": []}, "degree"),
    ({"name": "X", "degree": 2, "generators": [[2, 1]],
      "expected": {"size": 2}}, "unknown expected"),
    ({"name": "X", "degree": 2, "generators": [[2, 1]],
      "expected": {"order": -1}}, "positive"),
    ([1, 2], "object"),
])
def test_validation_diagnostics(doc, fragment):
    with pytest.raises(DefinitionError) as err:
        from_json_dict(doc)
    assert fragment in str(err.value)


def test_load_reports_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(DefinitionError) as err:
        load(path)
    assert "invalid JSON" in str(err.value)


def test_load_missing_file(tmp_path):
    with pytest.raises(DefinitionError):
        load(tmp_path / "absent.json")


names = st.text(
    alphabet=st.sampled_from("ABCxyz123()_,"), min_size=1, max_size=12
)
definitions = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.builds(
        GroupDefinition,
        name=names,
        degree=st.just(n),
        generators=st.lists(
            st.permutations(list(range(1, n + 1))).map(list),
            min_size=0, max_size=3),
    )
)


@settings(max_examples=50, deadline=None)
@given(definitions, st.booleans())
def test_round_trip_random_definitions(tmp_path_factory, defn, with_expected):
    if with_expected:
        defn.expected = {"order": build(defn).order}
    path = tmp_path_factory.mktemp("defs") / "g.json"
    save(defn, path)
    assert load(path) == defn


# -- shipped catalog -----------------------------------------------------------------

def test_shipped_catalog_shape(catalog_groups):
    defs = shipped_catalog()
    assert len(defs) == len(catalog_groups)
    assert len({d.name for d in defs}) == len(defs)
    for name, group in catalog_groups.items():
        assert group.order <= 120


def test_shipped_catalog_builds_with_expectations():
    # building asserts each expected block
    for defn in shipped_catalog():
        build(defn)


def test_write_catalog(tmp_path):
    paths = write_catalog(tmp_path)
    assert len(paths) == len(shipped_catalog())
    assert all(p.exists() for p in paths)
    reloaded = sorted(load(p).name for p in paths)
    assert reloaded == sorted(d.name for d in shipped_catalog())


def test_slug():
    assert slug("Hol(Z15)") == "hol_z15"
    assert slug("SL(2,5)") == "sl_2_5"
    assert slug("Z2xZ4") == "z2xz4"
