"""Command line surface.

Every command prints a run report (JSON with --json, otherwise a short human
summary) and exits 0 when the requested property was verified, 1 when it was
refuted or nothing was found, and 2 on usage or internal errors.  Reports for
identical inputs are identical byte for byte apart from the timing field.
"""

from __future__ import annotations

import argparse
import json
import time

from . import catalog
from .chartab import (
    CharWitnessSpec,
    character_triple_check,
    character_triple_search,
    class_orbit_partition,
    dixon_character_table,
    validate_character_witness,
)
from .diagonal import build_diagonal_group
from .errors import CapExceeded, InvalidSubgroup, VerificationInconsistency
from .tables import subgroup_permutation_group
from .witness import (
    Multiset,
    Witness,
    diagonal_witness,
    orbit_count_pair,
    supplement_property,
    two_point_stabilizer_trivial,
    verify_witness,
    witness_from_subgroup_pair,
)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    start = time.perf_counter()
    try:
        verdict, certificate, code, lines = args.handler(args)
    except (
        ValueError,
        KeyError,
        OSError,
        InvalidSubgroup,
        VerificationInconsistency,
        CapExceeded,
    ) as exc:
        certificate = {"error": type(exc).__name__, "message": str(exc)}
        _emit(args, _report(args, "error", certificate, start), [f"error: {exc}"])
        return 2
    _emit(args, _report(args, verdict, certificate, start), lines)
    return code


def _report(args, verdict: str, certificate, start: float) -> dict:
    skip = {"handler", "json", "command_path"}
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return {
        "command": args.command_path,
        "inputs": inputs,
        "verdict": verdict,
        "certificate": certificate,
        "timing_ms": int((time.perf_counter() - start) * 1000),
    }


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(f"[{report['verdict']}] {report['command']}")
        for line in lines:
            print(line)


# --- group resolution helpers ----------------------------------------------

def _entry(args) -> tuple[catalog.CatalogEntry, bool]:
    if getattr(args, "file", None):
        return catalog.load_entry_file(args.file), True
    return catalog.load_entry(args.group), False


def _table(args):
    entry, from_file = _entry(args)
    if from_file:
        return entry, from_file, catalog.table_for_entry(entry)
    return entry, from_file, catalog.load_group_table(entry.name)


def _auts(entry, from_file, table):
    if from_file:
        return catalog.automorphisms_for_entry(entry, table)
    return catalog.load_automorphisms(entry.name)


def _sub(entry, from_file, table, label):
    if from_file:
        return catalog.subgroup_for_entry(entry, table, label)
    return catalog.resolve_subgroup(entry.name, label)


def _cap_kw(args) -> dict:
    return {"cap": args.cap} if getattr(args, "cap", None) else {}


def _outcome(result) -> tuple[str, dict, int]:
    if isinstance(result, Witness):
        return "verified", result.to_json(), 0
    return "refuted", result.to_json(), 1


# --- handlers ---------------------------------------------------------------

def _cmd_group_info(args):
    entry, _ = _entry(args)
    group = entry.permutation_group()
    cert = {
        "name": entry.name,
        "degree": entry.degree,
        "order": group.order(),
        "transitive": group.is_transitive(),
        "generators": [p.cycle_string() for p in entry.generators],
        "subgroups": sorted(entry.subgroups),
    }
    return "verified", cert, 0, [
        f"{entry.name}: degree {entry.degree}, order {group.order()}, "
        f"transitive={group.is_transitive()}"
    ]


def _cmd_group_classes(args):
    entry, _, table = _table(args)
    rows = [
        {
            "name": name,
            "size": cls.size,
            "element_order": table.element_order(cls.representative),
            "representative": table.elements[cls.representative].cycle_string(),
        }
        for name, cls in zip(table.class_names(), table.conjugacy_classes())
    ]
    lines = [
        f"{r['name']:>4}  size {r['size']:>6}  order {r['element_order']:>3}  {r['representative']}"
        for r in rows
    ]
    return "verified", {"group": entry.name, "classes": rows}, 0, lines


def _cmd_group_aut(args):
    entry, from_file, table = _table(args)
    auts = _auts(entry, from_file, table)
    cert = {
        "group": entry.name,
        "order": auts.order,
        "inner_order": len(table.elements),
        "outer_order": auts.outer_order,
    }
    return "verified", cert, 0, [
        f"|Aut| = {auts.order}, inner {len(table.elements)}, outer {auts.outer_order}"
    ]


def _cmd_chartab_compute(args):
    entry, _, table = _table(args)
    ct = dixon_character_table(table)
    return "verified", ct.to_json(), 0, ct.to_text().splitlines()


def _cmd_verify_witness(args):
    entry, from_file, table = _table(args)
    if args.diagonal:
        diag = build_diagonal_group(table, _auts(entry, from_file, table))
        group, label = diag.group, diag.label
    else:
        group, label = entry.permutation_group(), entry.name
    with open(args.witness, encoding="utf-8") as fh:
        data = json.load(fh)
    points = frozenset(int(x) for x in data["set"])
    multiset = Multiset.from_json(data["multiset"], group.degree)
    result = verify_witness(group, points, multiset, group_label=label, **_cap_kw(args))
    verdict, cert, code = _outcome(result)
    return verdict, cert, code, [_witness_line(result)]


def _cmd_ab_check(args):
    entry, from_file, table = _table(args)
    group = entry.permutation_group()
    a_pg = subgroup_permutation_group(table, _sub(entry, from_file, table, args.A))
    b_pg = subgroup_permutation_group(table, _sub(entry, from_file, table, args.B))
    if args.set:
        points = frozenset(int(s) for s in args.set.split(","))
    else:
        points = frozenset(a_pg.orbit(args.base))
    result = witness_from_subgroup_pair(
        group, a_pg, b_pg, args.base, points, group_label=entry.name, **_cap_kw(args)
    )
    verdict, cert, code = _outcome(result)
    return verdict, cert, code, [_witness_line(result)]


def _cmd_diagonal_witness(args):
    entry, from_file, table = _table(args)
    auts = _auts(entry, from_file, table)
    a_set = _sub(entry, from_file, table, args.A)
    b_set = _sub(entry, from_file, table, args.B)
    result = diagonal_witness(table, auts, a_set, b_set, **_cap_kw(args))
    verdict, cert, code = _outcome(result)
    return verdict, cert, code, [_witness_line(result)]


def _cmd_supplement(args):
    entry, from_file, table = _table(args)
    a_set = _sub(entry, from_file, table, args.A)
    b_set = _sub(entry, from_file, table, args.B)
    auts = _auts(entry, from_file, table) if args.scope == "Aut" else None
    report = supplement_property(table, a_set, b_set, scope=args.scope, auts=auts)
    cert = {"group": entry.name, "A": args.A, "B": args.B, **report.to_json()}
    if report.holds:
        return "verified", cert, 0, [
            f"supplement property holds for ({args.A}, {args.B}) over scope {args.scope}"
        ]
    return "refuted", cert, 1, [
        f"supplement property fails at element {report.failing_element}"
    ]


def _cmd_char_witness(args):
    entry, from_file, table = _table(args)
    ct = dixon_character_table(table)
    auts = _auts(entry, from_file, table)
    partition = class_orbit_partition(table, auts)
    ids = tuple(table.class_by_name(n) for n in (args.r, args.s1, args.s2))
    result = character_triple_check(table, ct, partition, *ids)
    names = {"r": args.r, "s1": args.s1, "s2": args.s2}
    if not isinstance(result, CharWitnessSpec):
        cert = {**names, "violation": result.violation, "detail": result.detail}
        return "refuted", cert, 1, [
            f"triple fails: {result.violation} {result.detail}"
        ]
    witness = validate_character_witness(table, build_diagonal_group(table, auts), result)
    cert = {"triple": names, "witness": witness.to_json()}
    return "verified", cert, 0, [_witness_line(witness)]


def _cmd_char_search(args):
    entry, from_file, table = _table(args)
    ct = dixon_character_table(table)
    auts = _auts(entry, from_file, table)
    partition = class_orbit_partition(table, auts)
    found = character_triple_search(table, ct, partition)
    names = table.class_names()
    triples = [
        {"r": names[s.r_class], "s1": names[s.s1_class], "s2": names[s.s2_class]}
        for s in found
    ]
    cert = {"group": entry.name, "count": len(triples), "triples": triples}
    lines = [f"({t['r']}, {t['s1']}, {t['s2']})" for t in triples] or ["no triple found"]
    return ("verified", cert, 0, lines) if triples else ("refuted", cert, 1, lines)


def _cmd_orbits_count(args):
    entry, from_file, table = _table(args)
    a_set = _sub(entry, from_file, table, args.A)
    b_set = _sub(entry, from_file, table, args.B)
    c_a, c_b = orbit_count_pair(table, a_set, b_set)
    cert = {"group": entry.name, "A": args.A, "B": args.B,
            "A_orbits": c_a, "B_orbits": c_b, "equal": c_a == c_b}
    return "verified", cert, 0, [
        f"{args.A} has {c_a} orbits, {args.B} has {c_b} orbits on cosets of {args.A}"
    ]


def _cmd_two_check(args):
    entry, from_file, table = _table(args)
    a_set = _sub(entry, from_file, table, args.A)
    t = two_point_stabilizer_trivial(table, a_set)
    if t is None:
        cert = {"group": entry.name, "A": args.A, "found": False, "t": None}
        return "refuted", cert, 1, ["every conjugate meets A nontrivially"]
    cert = {
        "group": entry.name,
        "A": args.A,
        "found": True,
        "t": t,
        "t_cycles": table.elements[t].cycle_string(),
    }
    return "verified", cert, 0, [f"A cap A^t is trivial for t = {t}"]


def _witness_line(result) -> str:
    if isinstance(result, Witness):
        return (
            f"witness over {result.group_label}: |X| = {len(result.points)}, "
            f"|J| = {result.multiset.cardinality}, constant = {result.constant}"
        )
    detail = f" {result.counterexample}" if result.counterexample else ""
    return f"refuted: {result.violation}{detail}"


# --- parser -----------------------------------------------------------------

def _add_group_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="catalog group name")
    src.add_argument("--file", help="path to a group description JSON file")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap override")


def _leaf(sub, name: str, path: str, handler, group_source=True):
    p = sub.add_parser(name)
    if group_source:
        _add_group_source(p)
    _add_common(p)
    p.set_defaults(handler=handler, command_path=path)
    return p


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spreadcheck")
    sections = parser.add_subparsers(dest="section", required=True)

    group = sections.add_parser("group").add_subparsers(dest="action", required=True)
    _leaf(group, "info", "group info", _cmd_group_info)
    _leaf(group, "classes", "group classes", _cmd_group_classes)
    _leaf(group, "aut", "group aut", _cmd_group_aut)

    chartab = sections.add_parser("chartab").add_subparsers(dest="action", required=True)
    _leaf(chartab, "compute", "chartab compute", _cmd_chartab_compute)

    spreading = sections.add_parser("spreading").add_subparsers(dest="action", required=True)
    p = _leaf(spreading, "verify-witness", "spreading verify-witness", _cmd_verify_witness)
    p.add_argument("--witness", required=True, help="witness JSON file to re-check")
    p.add_argument("--diagonal", action="store_true",
                   help="verify over the diagonal-type group built from the base group")
    p = _leaf(spreading, "ab-check", "spreading ab-check", _cmd_ab_check)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--set", default=None, help="comma-separated point set X")
    p = _leaf(spreading, "diagonal-witness", "spreading diagonal-witness", _cmd_diagonal_witness)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p = _leaf(spreading, "supplement", "spreading supplement", _cmd_supplement)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--scope", choices=["T", "Aut"], default="T")
    p = _leaf(spreading, "char-witness", "spreading char-witness", _cmd_char_witness)
    p.add_argument("--r", required=True, help="class name for the witness set")
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True)
    _leaf(spreading, "char-search", "spreading char-search", _cmd_char_search)

    orbits = sections.add_parser("orbits").add_subparsers(dest="action", required=True)
    p = _leaf(orbits, "count", "orbits count", _cmd_orbits_count)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)

    basesize = sections.add_parser("basesize").add_subparsers(dest="action", required=True)
    p = _leaf(basesize, "two-check", "basesize two-check", _cmd_two_check)
    p.add_argument("--A", required=True)

    return parser
