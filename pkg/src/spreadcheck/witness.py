"""Witness machinery for non-spreading permutation groups.

A transitive group G on Omega is shown non-spreading by exhibiting a witness:
a nontrivial point set X and a nontrivial multiset J over Omega whose
cardinality divides |Omega|, such that the J-weight of X^g is one constant for
every g in G.  The verifier here checks exactly that, quantifying over the
distinct images of X (the weight depends only on the image set, so running
over the set orbit is equivalent to running over all of G).

The builders produce witnesses from subgroup data: a subgroup pair B normal in
A inside a transitive G yields (X, Omega + k*B-orbit - A-orbit) provided B is
transitive on each A-orbit of the images meeting the A-orbit of a base point.
Applied to the diagonal action of a simple group T with A, B inside T itself,
this gives the standard witness (A, Omega + |A:B|*B - A).

The remaining operations quantify the supplement condition A = B(A cap A^t)
and its relatives: orbit counts of A and B on cosets, two-point stabilizer
scans, and the orbit-count lower bound for base size at least three.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .autos import AutomorphismGroup
from .diagonal import build_diagonal_group, subgroup_image_in_diagonal
from .errors import InvalidSubgroup, VerificationInconsistency
from .perm import DEFAULT_SET_ORBIT_CAP, PermutationGroup, compose
from .tables import (
    GroupTable,
    cauchy_frobenius_count,
    conjugate_subgroup,
    coset_space,
    generating_set,
    orbits_on_cosets,
    product_size,
    validate_subgroup,
)


@dataclass(frozen=True)
class Multiset:
    """A multiset over {0..n-1}, stored as a multiplicity vector."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("multiset multiplicities must be nonnegative")

    @classmethod
    def uniform(cls, n: int, mult: int = 1) -> "Multiset":
        return cls((mult,) * n)

    @classmethod
    def indicator(cls, points: Iterable[int], n: int) -> "Multiset":
        counts = [0] * n
        for pt in points:
            counts[pt] += 1
        return cls(tuple(counts))

    @cached_property
    def cardinality(self) -> int:
        return sum(self.counts)

    @property
    def domain_size(self) -> int:
        return len(self.counts)

    def value(self, point: int) -> int:
        return self.counts[point]

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.counts) if c]

    @property
    def is_trivial(self) -> bool:
        """Constant over the whole domain, or supported on at most one point."""
        return len(set(self.counts)) <= 1 or len(self.support()) <= 1

    def __add__(self, other: "Multiset") -> "Multiset":
        if len(self.counts) != len(other.counts):
            raise ValueError("multiset domain size mismatch")
        return Multiset(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __sub__(self, other: "Multiset") -> "Multiset":
        if len(self.counts) != len(other.counts):
            raise ValueError("multiset domain size mismatch")
        return Multiset(tuple(a - b for a, b in zip(self.counts, other.counts)))

    def __mul__(self, scalar: int) -> "Multiset":
        return Multiset(tuple(scalar * c for c in self.counts))

    __rmul__ = __mul__

    def to_json(self) -> dict[str, int]:
        return {str(i): c for i, c in enumerate(self.counts) if c}

    @classmethod
    def from_json(cls, data: dict, n: int) -> "Multiset":
        counts = [0] * n
        for key, mult in data.items():
            counts[int(key)] = int(mult)
        return cls(tuple(counts))


@dataclass(frozen=True)
class Witness:
    """A verified witness (X, J) with its constant image weight."""

    group: PermutationGroup
    group_label: str
    points: frozenset[int]
    multiset: Multiset
    constant: int

    def to_json(self) -> dict:
        return {
            "set": sorted(self.points),
            "multiset": self.multiset.to_json(),
            "constant": self.constant,
            "group": self.group_label,
            "verified": True,
        }


@dataclass(frozen=True)
class Refutation:
    """A failed check, with the violated condition and a concrete counterexample."""

    group_label: str
    points: frozenset[int]
    multiset: Multiset | None
    violation: str
    counterexample: dict

    def to_json(self) -> dict:
        return {
            "set": sorted(self.points),
            "multiset": self.multiset.to_json() if self.multiset is not None else None,
            "group": self.group_label,
            "verified": False,
            "violation": self.violation,
            "counterexample": self.counterexample,
        }


def image_weight(points: Iterable[int], multiset: Multiset) -> int:
    return sum(map(multiset.counts.__getitem__, points))


def verify_witness(
    group: PermutationGroup,
    points: Iterable[int],
    multiset: Multiset,
    group_label: str = "G",
    cap: int = DEFAULT_SET_ORBIT_CAP,
) -> Witness | Refutation:
    """Decide whether (X, J) is a witness for a transitive group.

    Checks, in order: X nontrivial, J nontrivial, |J| divides |Omega|, and the
    J-weight of every image of X equals the weight of X itself.  The first
    violated condition is reported with a counterexample.
    """
    x = frozenset(points)
    n = group.degree
    if not group.is_transitive():
        raise ValueError("witness verification requires a transitive group")
    if multiset.domain_size != n:
        raise ValueError(f"multiset domain {multiset.domain_size} != group degree {n}")
    if not all(0 <= pt < n for pt in x):
        raise ValueError("set contains points outside the domain")

    if not 2 <= len(x) < n:
        return Refutation(
            group_label, x, multiset, "set-trivial", {"set_size": len(x), "domain_size": n}
        )
    if multiset.is_trivial:
        reason = "constant" if len(set(multiset.counts)) <= 1 else "single-point"
        return Refutation(group_label, x, multiset, "multiset-trivial", {"reason": reason})
    if n % multiset.cardinality != 0:
        return Refutation(
            group_label,
            x,
            multiset,
            "cardinality",
            {"cardinality": multiset.cardinality, "domain_size": n},
        )

    constant = image_weight(x, multiset)
    for image in group.set_orbit(x, cap):
        weight = image_weight(image, multiset)
        if weight != constant:
            return Refutation(
                group_label,
                x,
                multiset,
                "non-constant",
                {"constant": constant, "image": sorted(image), "image_weight": weight},
            )
    return Witness(group, group_label, x, multiset, constant)


# --- subgroup-pair builder --------------------------------------------------


def _check_contains_generators(big: PermutationGroup, small: PermutationGroup, what: str) -> None:
    for g in small.generators:
        if not big.contains(g):
            raise InvalidSubgroup(f"{what}: a generator lies outside the claimed overgroup")


def witness_from_subgroup_pair(
    group: PermutationGroup,
    a_group: PermutationGroup,
    b_group: PermutationGroup,
    base_point: int,
    points: Iterable[int],
    group_label: str = "G",
    cap: int = DEFAULT_SET_ORBIT_CAP,
) -> Witness | Refutation:
    """Build the witness (X, Omega + k*base^B - base^A) from a subgroup pair.

    Requires B normal and proper in A with A inside the transitive group.  The
    base point's A-orbit must split into k >= 2 orbits of B, and B must act
    transitively on each A-orbit of the images of X that meet the A-orbit of
    the base point; failures of those two conditions come back as refutations.
    The constructed witness is re-verified from scratch before it is returned.
    """
    x = frozenset(points)
    n = group.degree
    if not group.is_transitive():
        raise ValueError("the ambient group must be transitive")
    if not 0 < len(x) < n:
        raise ValueError("the point set must be nonempty and proper")
    _check_contains_generators(group, a_group, "A")
    _check_contains_generators(a_group, b_group, "B")
    if b_group.order() >= a_group.order():
        raise InvalidSubgroup("B must be a proper subgroup of A")
    for a in a_group.generators:
        a_inv = a.inverse()
        for b in b_group.generators:
            if not b_group.contains(compose(compose(a_inv, b), a)):
                raise InvalidSubgroup("B is not normalized by A")

    orbit_b = frozenset(b_group.orbit(base_point))
    orbit_a = frozenset(a_group.orbit(base_point))
    # B <= A and B normal, so orbit_a splits into B-orbits of equal size
    k, rem = divmod(len(orbit_a), len(orbit_b))
    if rem:
        raise VerificationInconsistency("B-orbit size does not divide the A-orbit size")
    if k < 2:
        return Refutation(
            group_label,
            x,
            None,
            "k-too-small",
            {"k": k, "A_orbit": sorted(orbit_a), "B_orbit": sorted(orbit_b)},
        )

    delta = [y for y in group.set_orbit(x, cap) if y & orbit_a]
    remaining = set(delta)
    while remaining:
        start = next(y for y in delta if y in remaining)
        a_orbit = _set_orbit_of(a_group, start)
        if not a_orbit <= remaining:
            raise VerificationInconsistency("A-orbit escaped the filtered image family")
        remaining -= a_orbit
        b_orbit = _set_orbit_of(b_group, start)
        if b_orbit != a_orbit:
            return Refutation(
                group_label,
                x,
                None,
                "B-not-transitive-on-orbit",
                {
                    "orbit_size": len(a_orbit),
                    "B_suborbit_size": len(b_orbit),
                    "member": sorted(start),
                },
            )

    multiset = (
        Multiset.uniform(n)
        + k * Multiset.indicator(orbit_b, n)
        - Multiset.indicator(orbit_a, n)
    )
    if multiset.cardinality != n:
        raise VerificationInconsistency(
            f"witness multiset cardinality {multiset.cardinality} != domain size {n}"
        )
    result = verify_witness(group, x, multiset, group_label, cap)
    if isinstance(result, Refutation):
        raise VerificationInconsistency(
            f"constructed witness failed re-verification: {result.violation}"
        )
    return result


def _set_orbit_of(group: PermutationGroup, start: frozenset[int]) -> set[frozenset[int]]:
    seen = {start}
    queue = [start]
    i = 0
    while i < len(queue):
        current = queue[i]
        i += 1
        for g in group.generators:
            image = frozenset(map(g.images.__getitem__, current))
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def diagonal_witness(
    table: GroupTable,
    auts: AutomorphismGroup,
    a_sub: Iterable[int],
    b_sub: Iterable[int],
    cap: int = DEFAULT_SET_ORBIT_CAP,
) -> Witness | Refutation:
    """The witness (A, Omega + |A:B|*B - A) over the diagonal action on T.

    A must be proper in T and B normal and proper in A.  The heavy lifting is
    delegated to the subgroup-pair builder with the right-translation images
    of A and B and the identity of T as base point.
    """
    a_set = validate_subgroup(table, frozenset(a_sub))
    b_set = validate_subgroup(table, frozenset(b_sub))
    _require_normal_pair(table, a_set, b_set)
    if len(a_set) >= len(table):
        raise InvalidSubgroup("A must be a proper subgroup of T")
    diag = build_diagonal_group(table, auts)
    a_img = subgroup_image_in_diagonal(diag, "right", a_set)
    b_img = subgroup_image_in_diagonal(diag, "right", b_set)
    return witness_from_subgroup_pair(diag.group, a_img, b_img, 0, a_set, diag.label, cap)


def _require_normal_pair(table: GroupTable, a_set: frozenset[int], b_set: frozenset[int]) -> None:
    if not b_set <= a_set:
        raise InvalidSubgroup("B must be contained in A")
    if len(b_set) >= len(a_set):
        raise InvalidSubgroup("B must be a proper subgroup of A")
    b_gens = generating_set(table, b_set)
    for a in generating_set(table, a_set):
        for b in b_gens:
            if table.conjugate(b, a) not in b_set:
                raise InvalidSubgroup("B is not normalized by A")


# --- supplement property ----------------------------------------------------


@dataclass(frozen=True)
class SupplementReport:
    """Outcome of checking A = B(A cap A^t) over a scope of conjugators."""

    holds: bool
    scope: str
    failing_element: int | None = None
    failing_outer: int | None = None

    def to_json(self) -> dict:
        out: dict = {"holds": self.holds, "scope": self.scope}
        if not self.holds:
            out["failing_element"] = self.failing_element
            if self.scope == "Aut":
                out["failing_outer"] = self.failing_outer
        return out


def supplement_property(
    table: GroupTable,
    a_set: frozenset[int],
    b_set: frozenset[int],
    scope: str = "T",
    auts: AutomorphismGroup | None = None,
) -> SupplementReport:
    """Check A = B(A cap A^t) for every t in T, or every automorphism image.

    Product sizes are compared through |B||S|/|B cap S| without materializing
    the products.  Conjugates are constant on right cosets of the conjugated
    subgroup, so only coset representatives are tested.  For scope "Aut" the
    images run over (A^phi)^t with phi one representative per outer coset.
    """
    a_set = validate_subgroup(table, a_set)
    b_set = validate_subgroup(table, b_set)
    _require_normal_pair(table, a_set, b_set)
    if len(a_set) >= len(table):
        raise InvalidSubgroup("A must be a proper subgroup of T")
    if scope == "T":
        outer_images: list[tuple[int | None, frozenset[int]]] = [(None, a_set)]
    elif scope == "Aut":
        if auts is None:
            raise ValueError("scope 'Aut' requires the automorphism group")
        outer_images = [
            (idx, aut.apply_to_set(a_set)) for idx, aut in enumerate(auts.coset_representatives)
        ]
    else:
        raise ValueError(f"scope must be 'T' or 'Aut', got {scope!r}")

    target = len(a_set)
    for outer_idx, image in outer_images:
        space = coset_space(table, image)
        for t in space.representatives:
            inter = a_set & conjugate_subgroup(table, image, t)
            if product_size(table, b_set, inter) != target:
                return SupplementReport(False, scope, failing_element=t, failing_outer=outer_idx)
    return SupplementReport(True, scope)


def orbit_count_pair(
    table: GroupTable, a_set: frozenset[int], b_set: frozenset[int]
) -> tuple[int, int]:
    """Orbit counts of A and of B on the right cosets of A.

    Both counts are computed twice, by direct orbit partition and by averaging
    fixed points; disagreement raises, since it would mean a bug.
    """
    a_set = validate_subgroup(table, a_set)
    b_set = validate_subgroup(table, b_set)
    if not b_set <= a_set:
        raise InvalidSubgroup("B must be contained in A")
    space = coset_space(table, a_set)
    c_a = len(orbits_on_cosets(space, a_set))
    c_b = len(orbits_on_cosets(space, b_set))
    if c_a != cauchy_frobenius_count(space, a_set):
        raise VerificationInconsistency("A-orbit count: partition and fixed-point average differ")
    if c_b != cauchy_frobenius_count(space, b_set):
        raise VerificationInconsistency("B-orbit count: partition and fixed-point average differ")
    return c_a, c_b


def two_point_stabilizer_trivial(table: GroupTable, a_set: frozenset[int]) -> int | None:
    """The first t in index order with A cap A^t trivial, or None.

    A cap A^t depends only on the coset At, so each coset is tested once, at
    its smallest element.
    """
    a_set = validate_subgroup(table, a_set)
    if len(a_set) >= len(table):
        raise InvalidSubgroup("A must be a proper subgroup of T")
    space = coset_space(table, a_set)
    seen: set[int] = set()
    for t in range(len(table)):
        cid = space.point_of[t]
        if cid in seen:
            continue
        seen.add(cid)
        if len(a_set & conjugate_subgroup(table, a_set, t)) == 1:
            return t
    return None


def orbit_bound_holds(table: GroupTable, a_set: frozenset[int]) -> bool:
    """Whether c|A|/2 >= |T:A| for c = number of A-orbits on cosets of A.

    The bound is necessary for all two-point stabilizers to be nontrivial, so
    a False here certifies that some A cap A^t is trivial.
    """
    a_set = validate_subgroup(table, a_set)
    if len(a_set) >= len(table):
        raise InvalidSubgroup("A must be a proper subgroup of T")
    space = coset_space(table, a_set)
    c = len(orbits_on_cosets(space, a_set))
    return c * len(a_set) >= 2 * len(space)
