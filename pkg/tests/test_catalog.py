"""Built-in group registry, subgroup recipes, and external JSON entries."""

import dataclasses
import json

import pytest

from spreadcheck import catalog
from spreadcheck.errors import InvalidSubgroup, VerificationInconsistency
from spreadcheck.perm import Permutation
from spreadcheck.tables import generating_set, validate_subgroup

EXPECTED_NAMES = [
    "A5",
    "A5_3sets",
    "A6",
    "A6_3sets",
    "A7",
    "A7_3sets",
    "A8",
    "A8_3sets",
    "A9",
    "A9_3sets",
    "M11",
    "M12",
    "PSL(2,11)",
    "PSL(2,13)",
    "PSL(2,7)",
    "PSL(2,8)",
    "PSL(3,2)",
]

GROUP_ORDERS = {
    "A5": 60,
    "A6": 360,
    "A7": 2520,
    "A8": 20160,
    "A9": 181440,
    "PSL(2,7)": 168,
    "PSL(2,8)": 504,
    "PSL(2,11)": 660,
    "PSL(2,13)": 1092,
    "PSL(3,2)": 168,
    "M11": 7920,
    "M12": 95040,
}

SUBGROUP_ORDERS = {
    "A5": {"A4": 12, "V4": 4, "D10": 10, "C5": 5, "1": 1},
    "A6": {"F36": 36, "E9": 9},
    "A7": {"stab3": 72, "stab3_even": 36},
    "A8": {"stab3": 360, "stab3_even": 180},
    "A9": {"stab3": 2160, "stab3_even": 1080},
    "PSL(2,7)": {"F21": 21, "C7": 7},
    "PSL(3,2)": {"F21": 21, "C7": 7},
    "PSL(2,8)": {"F56": 56, "E8": 8},
    "PSL(2,11)": {"F55": 55, "C11": 11},
    "PSL(2,13)": {"F78": 78, "C13": 13},
    "M11": {"M10": 720, "A6": 360},
    "M12": {"2xS5": 240, "S5": 120},
}

THREE_SET_DEGREES = {
    "A5_3sets": 10,
    "A6_3sets": 20,
    "A7_3sets": 35,
    "A8_3sets": 56,
    "A9_3sets": 84,
}


def test_catalog_names():
    assert catalog.catalog_names() == EXPECTED_NAMES


def test_every_entry_validates():
    for name in catalog.catalog_names():
        catalog.validate_entry(catalog.load_entry(name))


@pytest.mark.parametrize("name", sorted(GROUP_ORDERS))
def test_group_orders(name):
    entry = catalog.load_entry(name)
    assert entry.known_order == GROUP_ORDERS[name]
    group = catalog.load_permutation_group(name)
    assert group.order() == GROUP_ORDERS[name]
    assert group.degree == entry.degree
    assert group.is_transitive()
    assert len(catalog.load_group_table(name)) == GROUP_ORDERS[name]


@pytest.mark.parametrize("name", sorted(SUBGROUP_ORDERS))
def test_subgroup_orders(name):
    table = catalog.load_group_table(name)
    for label, order in SUBGROUP_ORDERS[name].items():
        sub = catalog.resolve_subgroup(name, label)
        assert len(sub) == order
        assert validate_subgroup(table, sub) == sub


def test_supplement_pairs_are_normal_inclusions():
    for name in sorted(GROUP_ORDERS):
        table = catalog.load_group_table(name)
        for a_label, b_label in catalog.load_entry(name).supplement_pairs:
            a = catalog.resolve_subgroup(name, a_label)
            b = catalog.resolve_subgroup(name, b_label)
            assert b < a
            for g in generating_set(table, a):
                assert frozenset(table.conjugate(x, g) for x in b) == b


def test_two_point_labels():
    assert catalog.load_entry("A5").two_point_labels == ("C5", "A4")
    assert catalog.load_entry("PSL(2,7)").two_point_labels == ("C7",)


@pytest.mark.parametrize("name", sorted(THREE_SET_DEGREES))
def test_three_subset_actions(name):
    entry = catalog.load_entry(name)
    assert entry.degree == THREE_SET_DEGREES[name]
    group = catalog.load_permutation_group(name)
    assert group.degree == THREE_SET_DEGREES[name]
    base = name[: -len("_3sets")]
    assert group.order() == GROUP_ORDERS[base]
    assert group.is_transitive()
    assert entry.supplement_pairs == ()


def test_three_subset_stabilizer_order():
    group = catalog.load_permutation_group("A7_3sets")
    assert group.stabilizer(0).order() == 2520 // 35


def test_unknown_names_and_labels():
    with pytest.raises(ValueError):
        catalog.load_entry("E8(q)")
    with pytest.raises(ValueError):
        catalog.resolve_subgroup("A5", "B7")


def test_trivial_subgroup_label():
    assert catalog.resolve_subgroup("A5", "1") == frozenset({0})


def test_supplied_aut_images_must_lie_in_group():
    entry = catalog.load_entry("A7")
    table = catalog.load_group_table("A7")
    assert entry.aut_images is not None
    bad = dataclasses.replace(
        entry, aut_images=((Permutation.from_cycles(7, [[0, 1]]),),)
    )
    with pytest.raises(InvalidSubgroup):
        catalog.automorphisms_for_entry(bad, table)


D10_JSON = {
    "name": "D10ext",
    "degree": 5,
    "generators": [[[0, 1, 2, 3, 4]], [[1, 4], [2, 3]]],
    "known_order": 10,
    "subgroups": {"C5": [[[0, 1, 2, 3, 4]]]},
    "supplement_pairs": [["C5", "1"]],
    "two_point_labels": [],
}


class TestExternalEntries:
    def test_json_file_roundtrip(self, tmp_path):
        path = tmp_path / "D10ext.json"
        path.write_text(json.dumps(D10_JSON))
        entry = catalog.load_entry_file(path)
        assert entry.name == "D10ext"
        assert entry.known_order == 10
        assert entry.supplement_pairs == (("C5", "1"),)
        table = catalog.table_for_entry(entry)
        assert len(catalog.subgroup_for_entry(entry, table, "C5")) == 5
        assert catalog.subgroup_for_entry(entry, table, "1") == frozenset({0})
        with pytest.raises(ValueError):
            catalog.subgroup_for_entry(entry, table, "C2")

    def test_rejects_non_permutation_generator(self):
        bad = dict(D10_JSON, generators=[[0, 0, 1, 2, 3]])
        with pytest.raises(ValueError):
            catalog.entry_from_json(bad)

    def test_rejects_wrong_order(self):
        bad = dict(D10_JSON, known_order=11)
        with pytest.raises(VerificationInconsistency):
            catalog.entry_from_json(bad)

    def test_subgroup_generators_must_lie_in_group(self):
        data = dict(D10_JSON, subgroups={"bad": [[[0, 1]]]})
        entry = catalog.entry_from_json(data)
        table = catalog.table_for_entry(entry)
        with pytest.raises(InvalidSubgroup):
            catalog.subgroup_for_entry(entry, table, "bad")

    def test_environment_directory_and_cache_clearing(self, tmp_path, monkeypatch):
        path = tmp_path / "D10ext.json"
        path.write_text(json.dumps(D10_JSON))
        monkeypatch.setenv(catalog.ENV_CATALOG_DIR, str(tmp_path))
        entry = catalog.load_entry("D10ext")
        assert entry.known_order == 10
        assert catalog.load_entry("D10ext") is entry
        monkeypatch.delenv(catalog.ENV_CATALOG_DIR)
        assert catalog.load_entry("D10ext") is entry  # still cached
        catalog.clear_caches()
        with pytest.raises(ValueError):
            catalog.load_entry("D10ext")
