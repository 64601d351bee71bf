"""Slow, obviously correct re-implementations used to cross-check the package."""

from __future__ import annotations

from spreadcheck.perm import Permutation
from spreadcheck.witness import Refutation, Witness, image_weight


def naive_elements(generators, degree, cap=200_000):
    """Plain breadth-first closure of a generating set, no stabilizer chain."""
    frontier = [Permutation.identity(degree)]
    seen = set(frontier)
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = p * g
                if q not in seen:
                    assert len(seen) < cap, "naive closure cap hit"
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def naive_orbit(generators, point):
    orbit = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for pt in frontier:
            for g in generators:
                img = g(pt)
                if img not in orbit:
                    orbit.add(img)
                    nxt.append(img)
        frontier = nxt
    return orbit


def sorted_tuple_set_orbit(group, points, cap=1_000_000):
    """Set orbit re-enumerated with sorted tuples instead of frozensets."""
    start = tuple(sorted(points))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for tup in frontier:
            for g in group.generators:
                img = tuple(sorted(g(p) for p in tup))
                if img not in seen:
                    assert len(seen) < cap, "set orbit cap hit"
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def full_sweep_weights(group, points, multiset, cap=20_000):
    """Image weights over every single group element, no set-orbit shortcut."""
    pts = sorted(points)
    return {image_weight([g(p) for p in pts], multiset) for g in group.elements(cap)}


def recheck_witness(witness: Witness, sweep_cap: int | None = None) -> None:
    """Independent pass over a verified witness.

    With sweep_cap set, walks all group elements; otherwise re-enumerates the
    set orbit with a different container type. Either way, every image weight
    must equal the stored constant, and the side conditions must hold.
    """
    n = witness.multiset.domain_size
    assert 1 < len(witness.points) < n
    assert not witness.multiset.is_trivial
    assert n % witness.multiset.cardinality == 0
    if sweep_cap is not None:
        weights = full_sweep_weights(witness.group, witness.points, witness.multiset, cap=sweep_cap)
    else:
        orbit = sorted_tuple_set_orbit(witness.group, witness.points)
        weights = {image_weight(tup, witness.multiset) for tup in orbit}
    assert weights == {witness.constant}


def recheck_refutation(ref: Refutation, group=None) -> None:
    """Confirm a refutation's counterexample by direct recomputation."""
    ce = ref.counterexample
    if ref.violation == "set-trivial":
        n = group.degree if group is not None else ref.multiset.domain_size
        assert len(ref.points) <= 1 or len(ref.points) >= n
    elif ref.violation == "multiset-trivial":
        assert ref.multiset.is_trivial
    elif ref.violation == "cardinality":
        assert ref.multiset.cardinality == ce["cardinality"]
        assert ce["domain_size"] % ce["cardinality"] != 0
    elif ref.violation == "non-constant":
        got = image_weight(ce["image"], ref.multiset)
        assert got == ce["image_weight"] != ce["constant"]
        if group is not None:
            assert tuple(sorted(ce["image"])) in sorted_tuple_set_orbit(group, ref.points)
    elif ref.violation == "k-too-small":
        assert ce["k"] < 2
    elif ref.violation == "B-not-transitive-on-orbit":
        assert ce["B_suborbit_size"] < ce["orbit_size"]
    else:
        raise AssertionError(f"unknown violation kind {ref.violation!r}")
