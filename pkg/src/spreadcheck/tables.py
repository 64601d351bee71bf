"""Indexed finite groups backed by a faithful permutation representation.

A GroupTable enumerates all elements of a small group T (BFS from the identity
in generator order, so index 0 is the identity and indices are reproducible)
and exposes multiplication by composing the underlying permutations and looking
the product up again.  No |T| x |T| multiplication table is ever stored, which
keeps groups up to a few hundred thousand elements workable.

Subgroups are plain frozensets of element indices.  The helpers below cover the
constructions the catalog needs: closures, derived subgroups, centralizers,
normalizers, Sylow subgroups and their normalizers, point and setwise
stabilizers, and coset spaces with their induced actions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded, InvalidSubgroup, VerificationInconsistency
from .perm import ConjClass, Permutation, PermutationGroup

DEFAULT_TABLE_CAP = 10**4


class GroupTable:
    """All elements of a finite permutation group, indexed 0..|T|-1."""

    def __init__(self, group: PermutationGroup, cap: int = DEFAULT_TABLE_CAP, name: str | None = None):
        self.group = group
        self.name = name
        self.elements: list[Permutation] = group.elements(cap)
        self.index: dict[tuple[int, ...], int] = {p.images: i for i, p in enumerate(self.elements)}
        self.inverse: list[int] = [self.index[p.inverse().images] for p in self.elements]
        self.generator_indices: list[int] = [self.index[g.images] for g in group.generators]
        # BFS parent structure: elements[i] = elements[parent[i]] * generators[parent_gen[i]]
        self.parent, self.parent_gen = self._parent_structure()
        self._orders: list[int] | None = None
        self._classes: list[ConjClass] | None = None
        self._class_of: list[int] | None = None
        self._class_names: list[str] | None = None
        self._gen_pair: tuple[int, int] | None = None

    def _parent_structure(self) -> tuple[list[int], list[int]]:
        parent = [-1] * len(self.elements)
        parent_gen = [-1] * len(self.elements)
        seen = {0}
        queue = [0]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for k, g in enumerate(self.group.generators):
                y = self.index[(self.elements[x] * g).images]
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    parent_gen[y] = k
                    queue.append(y)
        return parent, parent_gen

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, i: int, j: int) -> int:
        return self.index[tuple(map(self.elements[j].images.__getitem__, self.elements[i].images))]

    def conjugate(self, x: int, t: int) -> int:
        """Index of t^-1 x t."""
        return self.multiply(self.multiply(self.inverse[t], x), t)

    def commutator(self, a: int, b: int) -> int:
        """Index of a^-1 b^-1 a b."""
        return self.multiply(self.multiply(self.inverse[a], self.inverse[b]), self.multiply(a, b))

    def element_order(self, i: int) -> int:
        if self._orders is None:
            self._orders = [p.order() for p in self.elements]
        return self._orders[i]

    def exponent(self) -> int:
        import math

        return math.lcm(*(self.element_order(c.representative) for c in self.conjugacy_classes()))

    # --- conjugacy classes -------------------------------------------------

    def conjugacy_classes(self) -> list[ConjClass]:
        """Classes sorted by (size, smallest member index); representative is the
        smallest member index.  Index 0 (identity) always forms the first class."""
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def class_of(self, i: int) -> int:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of[i]

    def _compute_classes(self) -> None:
        n = len(self.elements)
        assigned = [False] * n
        raw: list[list[int]] = []
        for start in range(n):
            if assigned[start]:
                continue
            members = [start]
            assigned[start] = True
            i = 0
            while i < len(members):
                x = members[i]
                i += 1
                for g in self.generator_indices:
                    y = self.conjugate(x, g)
                    if not assigned[y]:
                        assigned[y] = True
                        members.append(y)
            raw.append(sorted(members))
        raw.sort(key=lambda ms: (len(ms), ms[0]))
        self._classes = [ConjClass(ms[0], tuple(ms)) for ms in raw]
        self._class_of = [0] * n
        for cid, cls in enumerate(self._classes):
            for m in cls.members:
                self._class_of[m] = cid

    def class_names(self) -> list[str]:
        """Names like 5A, 5B: element order plus a letter following the canonical
        class order.  Letters are an internal convention, not Atlas letters."""
        if self._class_names is None:
            counts: dict[int, int] = {}
            names = []
            for cls in self.conjugacy_classes():
                o = self.element_order(cls.representative)
                letter = chr(ord("A") + counts.get(o, 0))
                counts[o] = counts.get(o, 0) + 1
                names.append(f"{o}{letter}")
            self._class_names = names
        return self._class_names

    def class_by_name(self, name: str) -> int:
        names = self.class_names()
        try:
            return names.index(name)
        except ValueError:
            raise ValueError(f"no conjugacy class named {name!r}; have {names}") from None

    def inverse_class(self, cid: int) -> int:
        rep = self.conjugacy_classes()[cid].representative
        return self.class_of(self.inverse[rep])

    def power_class(self, cid: int, k: int) -> int:
        rep = self.conjugacy_classes()[cid].representative
        x = 0
        for _ in range(k):
            x = self.multiply(x, rep)
        return self.class_of(x)

    # --- generating pair ---------------------------------------------------

    def generating_pair(self) -> tuple[int, int]:
        """A deterministic pair of element indices generating the whole group.

        Uses the first two generators when they suffice; otherwise scans for the
        first partner (by index) of the first generator.
        """
        if self._gen_pair is not None:
            return self._gen_pair
        if len(self.generator_indices) >= 2:
            g1, g2 = self.generator_indices[0], self.generator_indices[1]
            if self._pair_generates(g1, g2):
                self._gen_pair = (g1, g2)
                return self._gen_pair
        g1 = self.generator_indices[0]
        for g2 in range(1, len(self.elements)):
            if g2 != g1 and self._pair_generates(g1, g2):
                self._gen_pair = (g1, g2)
                return self._gen_pair
        raise ValueError("group is not generated by any pair containing its first generator")

    def _pair_generates(self, i: int, j: int) -> bool:
        sub = PermutationGroup([self.elements[i], self.elements[j]], self.group.degree)
        return sub.order() == len(self.elements)


def build_group_table(
    generators: Sequence[Permutation],
    cap: int = DEFAULT_TABLE_CAP,
    name: str | None = None,
    known_order: int | None = None,
) -> GroupTable:
    """Enumerate the group generated by the given permutations.

    known_order, when provided, is validated exactly and also admits the
    enumeration (the cap is raised to it): catalog entries carry their orders.
    """
    if known_order is not None:
        cap = max(cap, known_order)
    table = GroupTable(PermutationGroup(generators), cap=cap, name=name)
    if known_order is not None and len(table) != known_order:
        raise VerificationInconsistency(
            f"group order {len(table)} != expected {known_order}"
        )
    return table


# --- subgroup utilities ----------------------------------------------------


def close_subgroup(table: GroupTable, gen_indices: Iterable[int], cap: int | None = None) -> frozenset[int]:
    """Subgroup generated by the given element indices (BFS closure)."""
    gens = sorted(set(gen_indices) - {0})
    if cap is None:
        cap = len(table)
    members = [0] + gens
    seen = set(members)
    if len(seen) > cap:
        raise CapExceeded("subgroup closure", cap)
    i = 0
    while i < len(members):
        x = members[i]
        i += 1
        for g in gens:
            y = table.multiply(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    raise CapExceeded("subgroup closure", cap)
                seen.add(y)
                members.append(y)
    return frozenset(seen)


def validate_subgroup(table: GroupTable, subset: Iterable[int]) -> frozenset[int]:
    """Check a set of element indices is a subgroup; returns it as a frozenset."""
    sub = frozenset(subset)
    if 0 not in sub:
        raise InvalidSubgroup("subgroup must contain the identity (index 0)")
    try:
        closed = close_subgroup(table, sub, cap=len(sub))
    except CapExceeded:
        raise InvalidSubgroup(
            "set of element indices is not closed under multiplication"
        ) from None
    if closed != sub:
        raise InvalidSubgroup("set of element indices is not closed under multiplication")
    return sub


def generating_set(table: GroupTable, subgroup: frozenset[int]) -> list[int]:
    """A small deterministic generating set for a subgroup given as an index set."""
    gens: list[int] = []
    span: frozenset[int] = frozenset({0})
    for x in sorted(subgroup):
        if x not in span:
            gens.append(x)
            span = close_subgroup(table, gens, cap=len(subgroup))
            if len(span) == len(subgroup):
                break
    return gens


def subgroup_permutation_group(table: GroupTable, subgroup: frozenset[int]) -> PermutationGroup:
    """The subgroup as a permutation group in the underlying representation."""
    gens = generating_set(table, subgroup)
    return PermutationGroup([table.elements[i] for i in gens], table.group.degree)


def conjugate_subgroup(table: GroupTable, subgroup: frozenset[int], t: int) -> frozenset[int]:
    return frozenset(table.conjugate(x, t) for x in subgroup)


def derived_subgroup(table: GroupTable, subgroup: frozenset[int]) -> frozenset[int]:
    """Commutator subgroup: normal closure in the subgroup of its generator
    commutators."""
    gens = generating_set(table, subgroup)
    comms = {table.commutator(a, b) for a in gens for b in gens}
    current = close_subgroup(table, comms, cap=len(subgroup))
    while True:
        extra = {table.conjugate(x, g) for x in generating_set(table, current) for g in gens}
        if extra <= current:
            return current
        current = close_subgroup(table, current | extra, cap=len(subgroup))


def centralizer(table: GroupTable, x: int) -> frozenset[int]:
    return frozenset(t for t in range(len(table)) if table.multiply(t, x) == table.multiply(x, t))


def normalizer(table: GroupTable, subgroup: frozenset[int]) -> frozenset[int]:
    gens = generating_set(table, subgroup)
    return frozenset(
        t for t in range(len(table)) if all(table.conjugate(g, t) in subgroup for g in gens)
    )


def point_stabilizer(table: GroupTable, point: int) -> frozenset[int]:
    return frozenset(i for i, p in enumerate(table.elements) if p(point) == point)


def setwise_stabilizer(table: GroupTable, points: Iterable[int]) -> frozenset[int]:
    pts = frozenset(points)
    return frozenset(
        i for i, p in enumerate(table.elements) if frozenset(map(p.images.__getitem__, pts)) == pts
    )


def sylow_subgroup(table: GroupTable, p: int) -> frozenset[int]:
    """A Sylow p-subgroup: start from an element of maximal p-power order and
    grow by p-elements of the normalizer until the full p-part is reached."""
    n = len(table)
    p_part = 1
    while n % (p_part * p) == 0:
        p_part *= p
    if p_part == 1:
        raise ValueError(f"{p} does not divide the group order {n}")
    best = 0
    best_order = 1
    for cls in table.conjugacy_classes():
        o = table.element_order(cls.representative)
        if o > best_order and _is_p_power(o, p):
            best, best_order = cls.representative, o
    current = close_subgroup(table, [best], cap=p_part)
    while len(current) < p_part:
        norm = normalizer(table, current)
        for t in sorted(norm - current):
            if _is_p_power(table.element_order(t), p):
                current = close_subgroup(table, sorted(current | {t}), cap=p_part)
                break
        else:
            raise RuntimeError("could not grow p-subgroup; should not happen in a finite group")
    return current


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_normalizer(table: GroupTable, p: int) -> frozenset[int]:
    return normalizer(table, sylow_subgroup(table, p))


def product_size(table: GroupTable, left: frozenset[int], right: frozenset[int]) -> int:
    """|B S| for subgroups B, S via |B||S| / |B n S|."""
    inter = len(left & right)
    size, rem = divmod(len(left) * len(right), inter)
    if rem:
        raise InvalidSubgroup("product size formula requires both factors to be subgroups")
    return size


def product_set(table: GroupTable, left: Iterable[int], right: Iterable[int]) -> frozenset[int]:
    """The literal set {b s}; quadratic, meant for oracles and small inputs."""
    right = list(right)
    return frozenset(table.multiply(b, s) for b in left for s in right)


# --- coset spaces ----------------------------------------------------------


@dataclass(frozen=True)
class CosetSpace:
    """Right cosets Ht of a subgroup, enumerated BFS from the identity coset."""

    table: GroupTable
    subgroup: frozenset[int]
    representatives: tuple[int, ...]
    point_of: tuple[int, ...]  # element index -> coset id

    def __len__(self) -> int:
        return len(self.representatives)

    def action_of(self, t: int) -> Permutation:
        """The permutation of coset ids induced by right multiplication with t."""
        return Permutation._unchecked(
            tuple(self.point_of[self.table.multiply(rep, t)] for rep in self.representatives)
        )


def coset_space(table: GroupTable, subgroup: frozenset[int]) -> CosetSpace:
    subgroup = validate_subgroup(table, subgroup)
    n = len(table)
    point_of = [-1] * n
    reps = [0]
    for a in subgroup:
        point_of[a] = 0
    i = 0
    while i < len(reps):
        rep = reps[i]
        i += 1
        for g in table.generator_indices:
            s = table.multiply(rep, g)
            if point_of[s] == -1:
                cid = len(reps)
                reps.append(s)
                for a in subgroup:
                    point_of[table.multiply(a, s)] = cid
    return CosetSpace(table, subgroup, tuple(reps), tuple(point_of))


def coset_action(table: GroupTable, subgroup: frozenset[int]) -> tuple[CosetSpace, PermutationGroup]:
    """The induced action of the whole group on the cosets of the subgroup."""
    space = coset_space(table, subgroup)
    image_gens = [space.action_of(g) for g in table.generator_indices]
    return space, PermutationGroup(image_gens, len(space))


def orbits_on_cosets(space: CosetSpace, subgroup: frozenset[int]) -> list[set[int]]:
    """Orbit partition of a subgroup acting on a coset space, by smallest point."""
    gens = generating_set(space.table, subgroup)
    gen_perms = [space.action_of(g) for g in gens]
    remaining = set(range(len(space)))
    out = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        queue = [start]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for g in gen_perms:
                y = g(x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        out.append(orbit)
        remaining -= orbit
    return out


def cauchy_frobenius_count(space: CosetSpace, subgroup: frozenset[int]) -> int:
    """Orbit count of a subgroup on a coset space by averaging fixed points."""
    table = space.table
    total = 0
    for s in subgroup:
        total += sum(
            1 for cid, rep in enumerate(space.representatives) if space.point_of[table.multiply(rep, s)] == cid
        )
    count, rem = divmod(total, len(subgroup))
    if rem:
        raise InvalidSubgroup("fixed-point sum not divisible by subgroup order; not a subgroup?")
    return count
