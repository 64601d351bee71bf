"""Witness verification, the subgroup-pair builder, and coset orbit reports."""

import pytest

from helpers import recheck_refutation, recheck_witness
from spreadcheck import catalog
from spreadcheck.diagonal import build_diagonal_group
from spreadcheck.errors import InvalidSubgroup
from spreadcheck.perm import Permutation, PermutationGroup
from spreadcheck.tables import build_group_table, subgroup_permutation_group
from spreadcheck.witness import (
    Multiset,
    Refutation,
    Witness,
    diagonal_witness,
    image_weight,
    orbit_bound_holds,
    orbit_count_pair,
    supplement_property,
    two_point_stabilizer_trivial,
    verify_witness,
    witness_from_subgroup_pair,
)


class TestMultiset:
    def test_basic_operations(self):
        m = Multiset((1, 0, 2, 0))
        assert m.cardinality == 3
        assert m.domain_size == 4
        assert m.support() == [0, 2]
        assert m.value(2) == 2
        assert (m + m).counts == (2, 0, 4, 0)
        assert (3 * m).counts == (3, 0, 6, 0)
        assert (m - m).counts == (0, 0, 0, 0)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Multiset((1, -1))
        with pytest.raises(ValueError):
            Multiset((1, 0)) - Multiset((0, 1))

    def test_domain_mismatch(self):
        with pytest.raises(ValueError):
            Multiset((1, 0)) + Multiset((1, 0, 0))

    def test_triviality(self):
        assert Multiset.uniform(5, 3).is_trivial
        assert Multiset.indicator([2], 5).is_trivial
        assert Multiset((0, 0, 0, 0)).is_trivial
        assert not Multiset.indicator([1, 3], 5).is_trivial

    def test_json_roundtrip(self):
        m = Multiset((0, 2, 0, 1, 0, 3))
        assert m.to_json() == {"1": 2, "3": 1, "5": 3}
        assert Multiset.from_json(m.to_json(), 6) == m

    def test_image_weight(self):
        m = Multiset((2, 0, 1, 5))
        assert image_weight([0, 2], m) == 3
        assert image_weight([], m) == 0


def _c6():
    return PermutationGroup([Permutation((1, 2, 3, 4, 5, 0))], 6)


class TestVerifyWitness:
    """The regular order-6 rotation group gives tiny hand-checkable cases."""

    def test_verified_witness(self):
        w = verify_witness(_c6(), {0, 3}, Multiset((2, 2, 2, 0, 0, 0)))
        assert isinstance(w, Witness)
        assert w.constant == 2
        assert w.to_json()["verified"] is True
        recheck_witness(w, sweep_cap=10)

    def test_set_trivial(self):
        group = _c6()
        for points in ({0}, set(range(6))):
            ref = verify_witness(group, points, Multiset((2, 2, 2, 0, 0, 0)))
            assert isinstance(ref, Refutation)
            assert ref.violation == "set-trivial"
            recheck_refutation(ref, group)

    def test_multiset_trivial(self):
        ref = verify_witness(_c6(), {0, 3}, Multiset.uniform(6, 2))
        assert ref.violation == "multiset-trivial"
        recheck_refutation(ref)

    def test_cardinality_must_divide_domain(self):
        ref = verify_witness(_c6(), {0, 3}, Multiset((1, 1, 1, 1, 0, 0)))
        assert ref.violation == "cardinality"
        assert ref.counterexample == {"cardinality": 4, "domain_size": 6}
        recheck_refutation(ref)

    def test_non_constant_carries_counterexample(self):
        group = _c6()
        ref = verify_witness(group, {0, 3}, Multiset.indicator([0, 1], 6))
        assert ref.violation == "non-constant"
        assert ref.counterexample["constant"] != ref.counterexample["image_weight"]
        recheck_refutation(ref, group)

    def test_requires_transitive_group(self):
        intransitive = PermutationGroup([Permutation((1, 0, 2, 3))], 4)
        with pytest.raises(ValueError):
            verify_witness(intransitive, {0, 1}, Multiset.uniform(4, 1))


class TestSubgroupPairBuilder:
    def test_pair_witness_on_rotation_group(self):
        t = build_group_table([Permutation((1, 2, 3, 4, 5, 0))], name="C6")
        group = PermutationGroup([Permutation((1, 2, 3, 4, 5, 0))], 6)
        a_pg = subgroup_permutation_group(t, frozenset({0, 2, 4}))
        b_pg = PermutationGroup.trivial(6)
        w = witness_from_subgroup_pair(group, a_pg, b_pg, 0, {0, 2, 4}, group_label="C6")
        assert isinstance(w, Witness)
        assert w.constant == 3
        assert w.multiset.counts == (3, 1, 0, 1, 0, 1)
        recheck_witness(w, sweep_cap=10)

    def test_block_not_covered_by_b(self):
        t = build_group_table([Permutation((1, 2, 3, 4, 5, 0))], name="C6")
        group = PermutationGroup([Permutation((1, 2, 3, 4, 5, 0))], 6)
        a_pg = subgroup_permutation_group(t, frozenset({0, 2, 4}))
        b_pg = PermutationGroup.trivial(6)
        ref = witness_from_subgroup_pair(group, a_pg, b_pg, 0, {0, 1}, group_label="C6")
        assert isinstance(ref, Refutation)
        assert ref.violation == "B-not-transitive-on-orbit"
        recheck_refutation(ref)

    def test_orbit_split_too_small(self):
        group = catalog.load_permutation_group("A5")
        t = catalog.load_group_table("A5")
        # natural 5-point action: the V4 orbit of 0 already fills the A4 orbit
        a4 = catalog.resolve_subgroup("A5", "A4")
        v4 = catalog.resolve_subgroup("A5", "V4")
        a_nat = PermutationGroup([t.elements[g] for g in a4], 5)
        b_nat = PermutationGroup([t.elements[g] for g in v4], 5)
        ref = witness_from_subgroup_pair(group, a_nat, b_nat, 0, {0, 1, 3, 4})
        assert ref.violation == "k-too-small"
        assert ref.counterexample["k"] == 1
        recheck_refutation(ref)

    def test_structural_violations_raise(self):
        s4 = PermutationGroup([Permutation.from_cycles(4, [[0, 1, 2, 3]]), Permutation.from_cycles(4, [[0, 1]])], 4)
        t4 = build_group_table(list(s4.generators), name="S4")
        s3 = frozenset(i for i in range(24) if t4.elements[i](3) == 3)
        c2 = frozenset({0, t4.index[Permutation.from_cycles(4, [[0, 1]]).images]})
        s3_pg = subgroup_permutation_group(t4, s3)
        c2_pg = subgroup_permutation_group(t4, c2)
        with pytest.raises(InvalidSubgroup):
            witness_from_subgroup_pair(s4, s3_pg, c2_pg, 0, {0, 1})
        with pytest.raises(InvalidSubgroup):
            witness_from_subgroup_pair(s4, s3_pg, s3_pg, 0, {0, 1})


DIAGONAL_CASES = {
    ("A5", "A4", "V4"): (12, 60, [0, 1, 3]),
    ("A5", "D10", "C5"): (10, 60, [0, 1, 2]),
    ("A6", "F36", "E9"): (36, 360, [0, 1, 4]),
    ("PSL(2,7)", "F21", "C7"): (21, 168, [0, 1, 3]),
    ("PSL(3,2)", "F21", "C7"): (21, 168, [0, 1, 3]),
    ("PSL(2,8)", "F56", "E8"): (56, 504, [0, 1, 7]),
}


@pytest.mark.parametrize("key", sorted(DIAGONAL_CASES))
def test_diagonal_witness_frozen_cases(key):
    name, a_label, b_label = key
    constant, cardinality, values = DIAGONAL_CASES[key]
    table = catalog.load_group_table(name)
    auts = catalog.load_automorphisms(name)
    w = diagonal_witness(
        table, auts, catalog.resolve_subgroup(name, a_label), catalog.resolve_subgroup(name, b_label)
    )
    assert isinstance(w, Witness)
    assert w.constant == constant
    assert w.multiset.cardinality == cardinality
    assert sorted(set(w.multiset.counts)) == values
    assert w.group_label == f"diag({name})"
    recheck_witness(w)


def test_diagonal_witness_rejects_bad_pairs():
    table = catalog.load_group_table("A5")
    auts = catalog.load_automorphisms("A5")
    c5 = catalog.resolve_subgroup("A5", "C5")
    a4 = catalog.resolve_subgroup("A5", "A4")
    with pytest.raises(InvalidSubgroup):
        diagonal_witness(table, auts, c5, c5)
    with pytest.raises(InvalidSubgroup):
        diagonal_witness(table, auts, a4, c5)


class TestSupplementProperty:
    def test_holds_for_a4_v4(self):
        t = catalog.load_group_table("A5")
        a4 = catalog.resolve_subgroup("A5", "A4")
        v4 = catalog.resolve_subgroup("A5", "V4")
        for scope in ("T", "Aut"):
            report = supplement_property(t, a4, v4, scope=scope, auts=catalog.load_automorphisms("A5"))
            assert report.holds
            assert report.scope == scope
            assert report.to_json() == {"holds": True, "scope": scope}

    def test_fails_for_c5_trivial(self):
        t = catalog.load_group_table("A5")
        c5 = catalog.resolve_subgroup("A5", "C5")
        report = supplement_property(t, c5, frozenset({0}))
        assert not report.holds
        assert report.failing_element == 2
        # recheck: A and B(A cap A^t) really differ at the failing conjugator
        from spreadcheck.tables import conjugate_subgroup, product_set

        meet = c5 & conjugate_subgroup(t, c5, report.failing_element)
        assert product_set(t, frozenset({0}), meet) != c5

    def test_scope_validation(self):
        t = catalog.load_group_table("A5")
        c5 = catalog.resolve_subgroup("A5", "C5")
        with pytest.raises(ValueError):
            supplement_property(t, c5, frozenset({0}), scope="G")
        with pytest.raises(ValueError):
            supplement_property(t, c5, frozenset({0}), scope="Aut")  # needs auts


COUNT_CASES = {
    ("A5", "A4", "V4"): (2, 2),
    ("A5", "D10", "C5"): (2, 2),
    ("A5", "C5", "1"): (4, 12),
    ("A7", "stab3", "stab3_even"): (4, 4),
    ("A8", "stab3", "stab3_even"): (4, 4),
    ("PSL(2,8)", "F56", "E8"): (2, 2),
    ("M11", "M10", "A6"): (2, 2),
}


@pytest.mark.parametrize("key", sorted(COUNT_CASES))
def test_orbit_count_pairs(key):
    name, a_label, b_label = key
    t = catalog.load_group_table(name)
    a = catalog.resolve_subgroup(name, a_label)
    b = catalog.resolve_subgroup(name, b_label)
    assert orbit_count_pair(t, a, b) == COUNT_CASES[key]


def test_orbit_count_requires_containment():
    t = catalog.load_group_table("A5")
    with pytest.raises(InvalidSubgroup):
        orbit_count_pair(t, catalog.resolve_subgroup("A5", "C5"), catalog.resolve_subgroup("A5", "V4"))


class TestTwoPointStabilizers:
    def test_c5_has_trivial_intersection(self):
        t = catalog.load_group_table("A5")
        c5 = catalog.resolve_subgroup("A5", "C5")
        found = two_point_stabilizer_trivial(t, c5)
        assert found is not None
        from spreadcheck.tables import conjugate_subgroup

        assert c5 & conjugate_subgroup(t, c5, found) == frozenset({0})
        assert not orbit_bound_holds(t, c5)

    def test_a4_never_trivial(self):
        t = catalog.load_group_table("A5")
        a4 = catalog.resolve_subgroup("A5", "A4")
        assert two_point_stabilizer_trivial(t, a4) is None
        assert orbit_bound_holds(t, a4)

    def test_requires_proper_subgroup(self):
        t = catalog.load_group_table("A5")
        with pytest.raises(InvalidSubgroup):
            two_point_stabilizer_trivial(t, frozenset(range(60)))
