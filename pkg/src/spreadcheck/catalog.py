"""Built-in group catalog plus JSON ingestion of user-supplied groups.

Each entry carries verified generators (the constructed order is checked
against the recorded one on every load), optional supplied automorphism
data for groups above the search cap, and named subgroup recipes so the
command line and the tests can say things like ``--A F21 --B C7``.

Alternating groups also ship in a second incarnation acting on 3-element
subsets of the natural domain; those entries are derived on the fly from
the natural generators.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from .autos import (
    AutomorphismGroup,
    automorphism_group_from_supplied,
    search_automorphism_group,
)
from .errors import InvalidSubgroup, VerificationInconsistency
from .perm import Permutation, PermutationGroup, parse_permutation
from .tables import (
    GroupTable,
    build_group_table,
    centralizer,
    close_subgroup,
    derived_subgroup,
    point_stabilizer,
    setwise_stabilizer,
    sylow_normalizer,
    sylow_subgroup,
)

ENV_CATALOG_DIR = "SPREADCHECK_CATALOG"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    generators: tuple[Permutation, ...]
    known_order: int
    # one tuple of generator images per supplied automorphism, or None to search
    aut_images: tuple[tuple[Permutation, ...], ...] | None
    subgroups: dict
    supplement_pairs: tuple[tuple[str, str], ...]
    two_point_labels: tuple[str, ...]

    def permutation_group(self) -> PermutationGroup:
        return PermutationGroup(list(self.generators), self.degree)


def _cyc(degree: int, *cycles) -> Permutation:
    return Permutation.from_cycles(degree, [list(c) for c in cycles])


def _three_subset_action(perm: Permutation) -> Permutation:
    n = len(perm.images)
    domain = list(combinations(range(n), 3))
    index = {s: i for i, s in enumerate(domain)}
    images = [index[tuple(sorted(perm(x) for x in s))] for s in domain]
    return Permutation(tuple(images))


# recipes: ("sylow", p) | ("sylow_normalizer", p) | ("point_stabilizer", pt)
# | ("setwise_stabilizer", pts) | ("derived_of", label)
# | ("class_centralizer", class_name) | ("index2_centerfree", label)
# | ("generated", perms)
_BUILTIN: dict[str, dict] = {
    "A5": dict(
        degree=5,
        generators=[_cyc(5, (0, 1, 2, 3, 4)), _cyc(5, (2, 3, 4))],
        order=60,
        subgroups={
            "A4": ("sylow_normalizer", 2),
            "V4": ("sylow", 2),
            "D10": ("sylow_normalizer", 5),
            "C5": ("sylow", 5),
        },
        pairs=[("A4", "V4"), ("D10", "C5"), ("C5", "1")],
        two_point=["C5", "A4"],
    ),
    "A6": dict(
        degree=6,
        generators=[_cyc(6, (0, 1, 2, 3, 4)), _cyc(6, (1, 2, 3, 4, 5))],
        order=360,
        subgroups={"F36": ("sylow_normalizer", 3), "E9": ("sylow", 3)},
        pairs=[("F36", "E9")],
    ),
    "A7": dict(
        degree=7,
        generators=[_cyc(7, (0, 1, 2)), _cyc(7, (0, 1, 2, 3, 4, 5, 6))],
        order=2520,
        subgroups={
            "stab3": ("setwise_stabilizer", (0, 1, 2)),
            "stab3_even": ("derived_of", "stab3"),
        },
        pairs=[("stab3", "stab3_even")],
        # generator images under conjugation by the transposition of the
        # first two points; that map is an automorphism but not inner
        aut=[[_cyc(7, (0, 2, 1)), _cyc(7, (0, 2, 3, 4, 5, 6, 1))]],
    ),
    "A8": dict(
        degree=8,
        generators=[_cyc(8, (0, 1, 2)), _cyc(8, (1, 2, 3, 4, 5, 6, 7))],
        order=20160,
        subgroups={
            "stab3": ("setwise_stabilizer", (0, 1, 2)),
            "stab3_even": ("derived_of", "stab3"),
        },
        pairs=[("stab3", "stab3_even")],
        aut=[[_cyc(8, (0, 2, 1)), _cyc(8, (0, 2, 3, 4, 5, 6, 7))]],
    ),
    "A9": dict(
        degree=9,
        generators=[_cyc(9, (0, 1, 2)), _cyc(9, (0, 1, 2, 3, 4, 5, 6, 7, 8))],
        order=181440,
        subgroups={
            "stab3": ("setwise_stabilizer", (0, 1, 2)),
            "stab3_even": ("derived_of", "stab3"),
        },
        pairs=[("stab3", "stab3_even")],
        aut=[[_cyc(9, (0, 2, 1)), _cyc(9, (0, 2, 3, 4, 5, 6, 7, 8, 1))]],
    ),
    "PSL(2,7)": dict(
        degree=8,
        generators=[
            _cyc(8, (0, 1, 2, 3, 4, 5, 6)),
            _cyc(8, (0, 7), (1, 6), (2, 3), (4, 5)),
        ],
        order=168,
        subgroups={"F21": ("sylow_normalizer", 7), "C7": ("sylow", 7)},
        pairs=[("F21", "C7")],
        two_point=["C7"],
    ),
    "PSL(2,8)": dict(
        degree=9,
        generators=[
            _cyc(9, (0, 1), (2, 4), (3, 7), (5, 6)),
            _cyc(9, (1, 2, 3, 4, 5, 6, 7)),
            _cyc(9, (0, 8), (2, 7), (3, 6), (4, 5)),
        ],
        order=504,
        subgroups={"F56": ("sylow_normalizer", 2), "E8": ("sylow", 2)},
        pairs=[("F56", "E8")],
    ),
    "PSL(2,11)": dict(
        degree=12,
        generators=[
            _cyc(12, (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10)),
            _cyc(12, (0, 11), (1, 10), (2, 5), (3, 7), (4, 8), (6, 9)),
        ],
        order=660,
        subgroups={"F55": ("sylow_normalizer", 11), "C11": ("sylow", 11)},
        pairs=[("F55", "C11")],
    ),
    "PSL(2,13)": dict(
        degree=14,
        generators=[
            _cyc(14, (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12)),
            _cyc(14, (0, 13), (1, 12), (2, 6), (3, 4), (7, 11), (9, 10)),
        ],
        order=1092,
        subgroups={"F78": ("sylow_normalizer", 13), "C13": ("sylow", 13)},
        pairs=[("F78", "C13")],
    ),
    "PSL(3,2)": dict(
        degree=7,
        generators=[_cyc(7, (0, 1, 3, 2, 5, 6, 4)), _cyc(7, (1, 2), (5, 6))],
        order=168,
        subgroups={"F21": ("sylow_normalizer", 7), "C7": ("sylow", 7)},
        pairs=[("F21", "C7")],
    ),
    "M11": dict(
        degree=11,
        generators=[
            _cyc(11, (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10)),
            _cyc(11, (2, 6, 10, 7), (3, 9, 4, 5)),
        ],
        order=7920,
        subgroups={"M10": ("point_stabilizer", 0), "A6": ("derived_of", "M10")},
        pairs=[("M10", "A6")],
    ),
    "M12": dict(
        degree=12,
        generators=[
            _cyc(12, (0, 11), (1, 10), (2, 9), (3, 8), (4, 7), (5, 6)),
            _cyc(12, (0, 1, 3, 7, 8, 6, 10, 2, 5, 11), (4, 9)),
        ],
        order=95040,
        subgroups={
            "2xS5": ("class_centralizer", "2A"),
            "S5": ("index2_centerfree", "2xS5"),
        },
        pairs=[("2xS5", "S5")],
    ),
}

_THREE_SUBSET_BASES = ("A5", "A6", "A7", "A8", "A9")


def catalog_names() -> list[str]:
    names = list(_BUILTIN) + [f"{b}_3sets" for b in _THREE_SUBSET_BASES]
    return sorted(names)


def _entry_from_builtin(name: str) -> CatalogEntry:
    if name.endswith("_3sets") and name[: -len("_3sets")] in _THREE_SUBSET_BASES:
        base = _BUILTIN[name[: -len("_3sets")]]
        gens = tuple(_three_subset_action(g) for g in base["generators"])
        return CatalogEntry(
            name=name,
            degree=len(gens[0].images),
            generators=gens,
            known_order=base["order"],
            aut_images=None,
            subgroups={},
            supplement_pairs=(),
            two_point_labels=(),
        )
    spec = _BUILTIN[name]
    aut = spec.get("aut")
    return CatalogEntry(
        name=name,
        degree=spec["degree"],
        generators=tuple(spec["generators"]),
        known_order=spec["order"],
        aut_images=tuple(tuple(imgs) for imgs in aut) if aut else None,
        subgroups=dict(spec["subgroups"]),
        supplement_pairs=tuple(spec.get("pairs", ())),
        two_point_labels=tuple(spec.get("two_point", ())),
    )


def entry_from_json(data: dict) -> CatalogEntry:
    degree = int(data["degree"])
    gens = tuple(parse_permutation(g, degree) for g in data["generators"])
    aut = data.get("aut_generators")
    subgroups = {
        label: ("generated", tuple(parse_permutation(g, degree) for g in gen_list))
        for label, gen_list in data.get("subgroups", {}).items()
    }
    entry = CatalogEntry(
        name=str(data["name"]),
        degree=degree,
        generators=gens,
        known_order=int(data["known_order"]),
        aut_images=(
            tuple(tuple(parse_permutation(g, degree) for g in imgs) for imgs in aut)
            if aut
            else None
        ),
        subgroups=subgroups,
        supplement_pairs=tuple(
            (a, b) for a, b in data.get("supplement_pairs", [])
        ),
        two_point_labels=tuple(data.get("two_point_labels", [])),
    )
    validate_entry(entry)
    return entry


def load_entry_file(path: str | Path) -> CatalogEntry:
    with open(path, encoding="utf-8") as fh:
        return entry_from_json(json.load(fh))


def validate_entry(entry: CatalogEntry) -> None:
    group = entry.permutation_group()
    if group.order() != entry.known_order:
        raise VerificationInconsistency(
            f"catalog entry {entry.name}: generated order {group.order()} "
            f"!= recorded order {entry.known_order}"
        )


@lru_cache(maxsize=None)
def load_entry(name: str) -> CatalogEntry:
    if name in _BUILTIN or name.endswith("_3sets"):
        try:
            entry = _entry_from_builtin(name)
        except KeyError:
            raise ValueError(f"unknown catalog group {name!r}") from None
    else:
        directory = os.environ.get(ENV_CATALOG_DIR)
        candidate = Path(directory) / f"{name}.json" if directory else None
        if candidate is None or not candidate.exists():
            raise ValueError(f"unknown catalog group {name!r}")
        return load_entry_file(candidate)
    validate_entry(entry)
    return entry


@lru_cache(maxsize=None)
def load_permutation_group(name: str) -> PermutationGroup:
    return load_entry(name).permutation_group()


@lru_cache(maxsize=None)
def load_group_table(name: str) -> GroupTable:
    return table_for_entry(load_entry(name))


def table_for_entry(entry: CatalogEntry) -> GroupTable:
    return build_group_table(
        list(entry.generators), name=entry.name, known_order=entry.known_order
    )


@lru_cache(maxsize=None)
def load_automorphisms(name: str) -> AutomorphismGroup:
    return automorphisms_for_entry(load_entry(name), load_group_table(name))


def automorphisms_for_entry(entry: CatalogEntry, table: GroupTable) -> AutomorphismGroup:
    if entry.aut_images is None:
        return search_automorphism_group(table)
    supplied = []
    for images in entry.aut_images:
        try:
            supplied.append([table.index[p.images] for p in images])
        except KeyError:
            raise InvalidSubgroup(
                f"supplied automorphism image does not lie in {entry.name}"
            ) from None
    return automorphism_group_from_supplied(table, supplied)


@lru_cache(maxsize=None)
def resolve_subgroup(name: str, label: str) -> frozenset[int]:
    return subgroup_for_entry(load_entry(name), load_group_table(name), label)


def subgroup_for_entry(entry: CatalogEntry, table: GroupTable, label: str) -> frozenset[int]:
    if label == "1":
        return frozenset({0})
    if label not in entry.subgroups:
        raise ValueError(
            f"group {entry.name} has no subgroup labelled {label!r}; "
            f"available: {sorted(entry.subgroups)} and '1'"
        )
    return _resolve_recipe(entry, table, entry.subgroups[label])


def _resolve_recipe(entry: CatalogEntry, table: GroupTable, recipe: tuple) -> frozenset[int]:
    kind = recipe[0]
    if kind == "sylow":
        return frozenset(sylow_subgroup(table, recipe[1]))
    if kind == "sylow_normalizer":
        return frozenset(sylow_normalizer(table, recipe[1]))
    if kind == "point_stabilizer":
        return frozenset(point_stabilizer(table, recipe[1]))
    if kind == "setwise_stabilizer":
        return frozenset(setwise_stabilizer(table, list(recipe[1])))
    if kind == "derived_of":
        return frozenset(
            derived_subgroup(table, subgroup_for_entry(entry, table, recipe[1]))
        )
    if kind == "class_centralizer":
        cid = table.class_by_name(recipe[1])
        rep = table.conjugacy_classes()[cid].representative
        return frozenset(centralizer(table, rep))
    if kind == "index2_centerfree":
        return _index2_centerfree(table, subgroup_for_entry(entry, table, recipe[1]))
    if kind == "generated":
        try:
            indices = {table.index[p.images] for p in recipe[1]}
        except KeyError:
            raise InvalidSubgroup(
                f"subgroup generator does not lie in {entry.name}"
            ) from None
        return frozenset(close_subgroup(table, indices | {0}))
    raise ValueError(f"unknown subgroup recipe {recipe!r}")


def _index2_centerfree(table: GroupTable, parent: frozenset[int]) -> frozenset[int]:
    """First subgroup of index 2 in parent (by element order) whose centre,
    within itself, is trivial."""
    der = derived_subgroup(table, parent)
    half = len(parent) // 2
    for x in sorted(parent):
        if x in der:
            continue
        h = close_subgroup(table, set(der) | {x})
        if len(h) != half:
            continue
        members = sorted(h)
        central = sum(
            1
            for z in members
            if all(table.multiply(z, g) == table.multiply(g, z) for g in members)
        )
        if central == 1:
            return frozenset(h)
    raise InvalidSubgroup("no centre-free index-2 subgroup found")


def clear_caches() -> None:
    load_entry.cache_clear()
    load_permutation_group.cache_clear()
    load_group_table.cache_clear()
    load_automorphisms.cache_clear()
    resolve_subgroup.cache_clear()
