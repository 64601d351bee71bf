"""Exact character tables and the character-theoretic witness test.

The table construction follows the classical modular approach: build the
class-sum multiplication matrices, diagonalise them simultaneously over a
prime field F_p whose multiplicative group contains all needed roots of
unity, read off each character modulo p, then lift every entry to an exact
cyclotomic integer through the root-of-unity correspondence.  The finished
table is self-checked (orthogonality, degree sum) before it is returned, so
downstream zero/equality tests never rest on an unverified computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .autos import AutomorphismGroup
from .cyclotomic import CyclotomicValue, render_value, zeta
from .diagonal import DiagonalGroup
from .errors import CapExceeded, VerificationInconsistency
from .tables import GroupTable
from .witness import Multiset, Witness, verify_witness

DEFAULT_CLASS_CAP = 60


# --- class algebra ---------------------------------------------------------

def class_mult_coefficient(table: GroupTable, c1: int, c2: int, h: int) -> int:
    """Number of pairs (x, y) with x in class c1, y in class c2, and xy = h."""
    classes = table.conjugacy_classes()
    count = 0
    for x in classes[c1].members:
        if table.class_of(table.multiply(table.inverse[x], h)) == c2:
            count += 1
    return count


def _class_tensor(table: GroupTable) -> list[list[list[int]]]:
    """a[i][j][l] = class_mult_coefficient(i, j, representative of l), all at once."""
    classes = table.conjugacy_classes()
    k = len(classes)
    reps = [c.representative for c in classes]
    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for x in classes[i].members:
            xi = table.inverse[x]
            for l in range(k):
                a[i][table.class_of(table.multiply(xi, reps[l]))][l] += 1
    for i in range(k):
        for l in range(k):
            if sum(a[i][j][l] for j in range(k)) != classes[i].size:
                raise VerificationInconsistency(
                    "class multiplication tensor row sum is off"
                )
    return a


# --- small linear algebra over F_p ----------------------------------------

def _inv_mod(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def _rref(rows: list[list[int]], p: int) -> list[list[int]]:
    mat = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(len(mat[0]) if mat else 0):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = _inv_mod(mat[r][c], p)
        mat[r] = [v * inv % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(v - f * w) % p for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[:r]


def _pivot_columns(basis: list[list[int]]) -> list[int]:
    return [next(c for c, v in enumerate(row) if v) for row in basis]


def _coords_in_basis(vec: list[int], basis: list[list[int]], pivots: list[int], p: int) -> list[int]:
    coords = [vec[c] for c in pivots]
    # the vector must actually lie in the span, or the splitting is broken
    for c in range(len(vec)):
        s = sum(coords[t] * basis[t][c] for t in range(len(basis))) % p
        if s != vec[c] % p:
            raise VerificationInconsistency("subspace is not invariant under a class matrix")
    return coords


def _char_poly(mat: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial mod p, leading coefficient first.

    Faddeev-LeVerrier recurrence; valid because the chosen prime exceeds the
    matrix dimension, so every integer divided by stays invertible.
    """
    n = len(mat)
    coeffs = [1]
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for step in range(1, n + 1):
        m = _mat_mul(mat, m, p)
        tr = sum(m[i][i] for i in range(n)) % p
        c = (-tr * _inv_mod(step, p)) % p
        coeffs.append(c)
        for i in range(n):
            m[i][i] = (m[i][i] + c) % p
    return coeffs


def _mat_mul(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def _poly_roots(coeffs: list[int], p: int) -> list[int]:
    roots = []
    for lam in range(p):
        acc = 0
        for c in coeffs:
            acc = (acc * lam + c) % p
        if acc == 0:
            roots.append(lam)
    return roots


def _nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    reduced = _rref(mat, p)
    pivots = _pivot_columns(reduced)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for row, c in zip(reduced, pivots):
            vec[c] = (-row[f]) % p
        basis.append(vec)
    return basis


# --- prime selection -------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def dixon_prime(exponent: int, group_order: int, num_classes: int) -> int:
    """Smallest p = 1 (mod exponent) with p > 2*sqrt(|G|) and p > #classes.

    The last condition keeps the characteristic-polynomial recurrence valid;
    it only matters for groups with many classes relative to their order and
    never changes the prime for the built-in catalog.
    """
    bound = max(2 * isqrt(group_order) + 1, num_classes + 1)
    p = exponent + 1
    while True:
        if p >= bound and _is_prime(p):
            return p
        p += exponent
        if p > exponent * 10**6:
            raise VerificationInconsistency("no usable prime found in range")


def _primitive_root(p: int) -> int:
    factors = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for w in range(2, p):
        if all(pow(w, (p - 1) // q, p) != 1 for q in factors):
            return w
    raise VerificationInconsistency(f"no primitive root mod {p}")


# --- the table -------------------------------------------------------------

@dataclass(eq=False)
class CharacterTable:
    group_label: str
    group_order: int
    prime: int
    class_names: tuple[str, ...]
    class_sizes: tuple[int, ...]
    class_element_orders: tuple[int, ...]
    degrees: tuple[int, ...]
    rows: tuple[tuple[CyclotomicValue, ...], ...]

    @property
    def num_classes(self) -> int:
        return len(self.class_names)

    def centralizer_order(self, cid: int) -> int:
        return self.group_order // self.class_sizes[cid]

    def value(self, row: int, cid: int) -> CyclotomicValue:
        return self.rows[row][cid]

    def to_json(self) -> dict:
        return {
            "group": self.group_label,
            "order": self.group_order,
            "prime": self.prime,
            "classes": [
                {"name": n, "size": s, "element_order": o}
                for n, s, o in zip(
                    self.class_names, self.class_sizes, self.class_element_orders
                )
            ],
            "degrees": list(self.degrees),
            "rows": [[v.to_json() for v in row] for row in self.rows],
        }

    def to_text(self) -> str:
        cells = [["", *self.class_names],
                 ["size", *(str(s) for s in self.class_sizes)]]
        for i, row in enumerate(self.rows):
            cells.append([f"X.{i + 1}", *(render_value(v) for v in row)])
        widths = [max(len(r[c]) for r in cells) for c in range(len(cells[0]))]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in cells
        )


def dixon_character_table(table: GroupTable, class_cap: int = DEFAULT_CLASS_CAP) -> CharacterTable:
    classes = table.conjugacy_classes()
    k = len(classes)
    if k > class_cap:
        raise CapExceeded("conjugacy classes", class_cap)
    n = len(table.elements)
    sizes = [c.size for c in classes]
    p = dixon_prime(table.exponent(), n, k)

    tensor = _class_tensor(table)
    # eigenvector coordinates follow the canonical class order; matrix i sends
    # coordinate l to sum over j of a[i][j][l]
    matrices = [[[tensor[i][j][l] % p for l in range(k)] for j in range(k)] for i in range(k)]

    subspaces: list[list[list[int]]] = [
        [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    ]
    for i in range(1, k):
        if all(len(b) == 1 for b in subspaces):
            break
        mat = matrices[i]
        refined: list[list[list[int]]] = []
        for basis in subspaces:
            if len(basis) == 1:
                refined.append(basis)
                continue
            pivots = _pivot_columns(basis)
            images = [
                [sum(mat[r][c] * vec[c] for c in range(k)) % p for r in range(k)]
                for vec in basis
            ]
            coords = [_coords_in_basis(img, basis, pivots, p) for img in images]
            # restriction matrix: column j holds the coordinates of M b_j
            sub = [[coords[j][t] for j in range(len(basis))] for t in range(len(basis))]
            found = 0
            for lam in _poly_roots(_char_poly(sub, p), p):
                shifted = [row[:] for row in sub]
                for d in range(len(basis)):
                    shifted[d][d] = (shifted[d][d] - lam) % p
                kern = _nullspace(shifted, p)
                if not kern:
                    continue
                lifted = [
                    [sum(w[t] * basis[t][c] for t in range(len(basis))) % p for c in range(k)]
                    for w in kern
                ]
                lifted = _rref(lifted, p)
                found += len(lifted)
                refined.append(lifted)
            if found != len(basis):
                raise VerificationInconsistency(
                    "class matrix failed to split a subspace completely"
                )
        subspaces = refined

    if len(subspaces) != k or any(len(b) != 1 for b in subspaces):
        raise VerificationInconsistency("simultaneous diagonalisation did not finish")

    inv_size = [_inv_mod(s, p) for s in sizes]
    inv_class = [table.inverse_class(l) for l in range(k)]
    characters_mod_p: list[tuple[int, list[int]]] = []
    for (vec,) in subspaces:
        if vec[0] == 0:
            raise VerificationInconsistency("eigenvector vanishes at the identity class")
        scale = _inv_mod(vec[0], p)
        v = [x * scale % p for x in vec]
        t = sum(v[l] * v[inv_class[l]] * inv_size[l] for l in range(k)) % p
        if t == 0:
            raise VerificationInconsistency("degenerate norm for an eigenvector")
        d_sq = n * _inv_mod(t, p) % p
        degree = next((d for d in range(1, isqrt(n) + 1) if d * d % p == d_sq), None)
        if degree is None:
            raise VerificationInconsistency("character degree not recoverable mod p")
        characters_mod_p.append((degree, v))

    if sum(d * d for d, _ in characters_mod_p) != n:
        raise VerificationInconsistency("degree squares do not sum to the group order")

    w = _primitive_root(p)
    rows: list[tuple[int, tuple[CyclotomicValue, ...]]] = []
    for degree, v in characters_mod_p:
        values: list[CyclotomicValue] = []
        for l in range(k):
            m = table.element_order(classes[l].representative)
            if m == 1:
                values.append(CyclotomicValue.from_int(degree))
                continue
            power_cls = [table.power_class(l, u) for u in range(m)]
            vals = [degree * v[c] * inv_size[c] % p for c in power_cls]
            z = pow(w, (p - 1) // m, p)
            zi = _inv_mod(z, p)
            m_inv = _inv_mod(m, p)
            counts = []
            for key in range(m):
                zk = pow(zi, key, p)
                acc, t = 0, 1
                for u in range(m):
                    acc = (acc + vals[u] * t) % p
                    t = t * zk % p
                mk = acc * m_inv % p
                if mk > degree:
                    raise VerificationInconsistency(
                        "root-of-unity multiplicity exceeds the degree"
                    )
                counts.append(mk)
            if sum(counts) != degree:
                raise VerificationInconsistency("eigenvalue multiplicities do not fill the degree")
            if sum(c * pow(z, key, p) for key, c in enumerate(counts)) % p != vals[1]:
                raise VerificationInconsistency("lifted value does not reduce back mod p")
            value = CyclotomicValue.from_int(0)
            for key, c in enumerate(counts):
                if c:
                    value = value + c * zeta(m, key)
            values.append(value)
        rows.append((degree, tuple(values)))

    rows.sort(key=lambda r: (r[0], [(v.order, v.coeffs) for v in r[1]]))

    result = CharacterTable(
        group_label=table.name,
        group_order=n,
        prime=p,
        class_names=tuple(table.class_names()),
        class_sizes=tuple(sizes),
        class_element_orders=tuple(
            table.element_order(c.representative) for c in classes
        ),
        degrees=tuple(r[0] for r in rows),
        rows=tuple(r[1] for r in rows),
    )
    if not row_orthogonality_holds(result):
        raise VerificationInconsistency("row orthogonality failed on a computed table")
    if not column_orthogonality_holds(result):
        raise VerificationInconsistency("column orthogonality failed on a computed table")
    return result


def row_orthogonality_holds(ct: CharacterTable) -> bool:
    n = ct.group_order
    for i in range(len(ct.rows)):
        for j in range(i, len(ct.rows)):
            s = CyclotomicValue.from_int(0)
            for l in range(ct.num_classes):
                s = s + ct.class_sizes[l] * ct.rows[i][l] * ct.rows[j][l].conjugate()
            if s != (n if i == j else 0):
                return False
    return True


def column_orthogonality_holds(ct: CharacterTable) -> bool:
    for l1 in range(ct.num_classes):
        for l2 in range(l1, ct.num_classes):
            s = CyclotomicValue.from_int(0)
            for row in ct.rows:
                s = s + row[l1] * row[l2].conjugate()
            expected = ct.centralizer_order(l1) if l1 == l2 else 0
            if s != expected:
                return False
    return True


def class_algebra_consistent(
    table: GroupTable, ct: CharacterTable, triples: list[tuple[int, int, int]]
) -> bool:
    """Cross-check table entries against brute-force pair counts.

    For each (c1, c2, c3): the character-sum formula for the number of ways
    to write a fixed c3-element as (c1-element)(c2-element) must match the
    direct count.  Exact integer arithmetic throughout.
    """
    n = ct.group_order
    classes = table.conjugacy_classes()
    for c1, c2, c3 in triples:
        s = CyclotomicValue.from_int(0)
        for degree, row in zip(ct.degrees, ct.rows):
            s = s + (n // degree) * row[c1] * row[c2] * row[c3].conjugate()
        if not s.is_rational:
            return False
        brute = class_mult_coefficient(table, c1, c2, classes[c3].representative)
        if s.as_int() * classes[c1].size * classes[c2].size != brute * n * n:
            return False
    return True


# --- the character-theoretic witness test ----------------------------------

def class_orbit_partition(
    table: GroupTable, auts: AutomorphismGroup | None = None
) -> tuple[tuple[int, ...], ...]:
    """Orbits of the automorphism group on conjugacy classes, as a partition.

    With no automorphism data every class is its own block, which is the
    right degenerate reading for groups the search scaffolding feeds in.
    """
    k = len(table.conjugacy_classes())
    if auts is None:
        return tuple((cid,) for cid in range(k))
    seen: set[int] = set()
    blocks = []
    for cid in range(k):
        if cid in seen:
            continue
        orbit = auts.class_orbit(cid)
        seen.update(orbit)
        blocks.append(tuple(sorted(orbit)))
    return tuple(blocks)


@dataclass(frozen=True)
class CharWitnessSpec:
    """A class triple that passed both conditions of the character test."""

    r_class: int
    s1_class: int
    s2_class: int
    size_equal: bool
    vanishing: bool

    def to_json(self) -> dict:
        return {
            "r": self.r_class,
            "s1": self.s1_class,
            "s2": self.s2_class,
            "size_equal": self.size_equal,
            "vanishing": self.vanishing,
        }


@dataclass(frozen=True)
class CharTripleRefutation:
    r_class: int
    s1_class: int
    s2_class: int
    violation: str
    detail: dict

    def to_json(self) -> dict:
        return {
            "r": self.r_class,
            "s1": self.s1_class,
            "s2": self.s2_class,
            "violation": self.violation,
            "detail": self.detail,
        }


def character_triple_check(
    table: GroupTable,
    ct: CharacterTable,
    partition: tuple[tuple[int, ...], ...],
    r: int,
    s1: int,
    s2: int,
) -> CharWitnessSpec | CharTripleRefutation:
    """Test one (r, s1, s2) triple: equal class sizes for s1 and s2, and every
    character separating s1 from s2 must vanish on the whole automorphism
    orbit of r."""
    if len({r, s1, s2}) != 3:
        raise ValueError("r, s1, s2 must be pairwise distinct classes")
    if ct.class_sizes[s1] != ct.class_sizes[s2]:
        return CharTripleRefutation(
            r, s1, s2, "class-size-mismatch",
            {"s1_size": ct.class_sizes[s1], "s2_size": ct.class_sizes[s2]},
        )
    differing = [
        i for i in range(len(ct.rows)) if ct.rows[i][s1] != ct.rows[i][s2]
    ]
    orbit = next(block for block in partition if r in block)
    for i in differing:
        for cid in orbit:
            if not ct.rows[i][cid].is_zero:
                return CharTripleRefutation(
                    r, s1, s2, "character-not-vanishing",
                    {
                        "character_index": i,
                        "class": ct.class_names[cid],
                        "value": render_value(ct.rows[i][cid]),
                    },
                )
    return CharWitnessSpec(r, s1, s2, size_equal=True, vanishing=True)


def character_triple_search(
    table: GroupTable,
    ct: CharacterTable,
    partition: tuple[tuple[int, ...], ...],
) -> list[CharWitnessSpec]:
    """All passing triples, r ascending, then s1 < s2 in class order."""
    k = ct.num_classes
    found = []
    for r in range(k):
        for s1 in range(k):
            if s1 == r:
                continue
            for s2 in range(s1 + 1, k):
                if s2 == r:
                    continue
                if ct.class_sizes[s1] != ct.class_sizes[s2]:
                    continue
                outcome = character_triple_check(table, ct, partition, r, s1, s2)
                if isinstance(outcome, CharWitnessSpec):
                    found.append(outcome)
    return found


def validate_character_witness(
    table: GroupTable, diag: DiagonalGroup, spec: CharWitnessSpec
) -> Witness:
    """Run the constructed (class, weighted multiset) pair through the
    independent verifier on the diagonal-type group and confirm the constant
    equals the class size."""
    classes = table.conjugacy_classes()
    n = len(table.elements)
    points = frozenset(classes[spec.r_class].members)
    j = (
        Multiset.uniform(n, 1)
        + Multiset.indicator(classes[spec.s1_class].members, n)
        - Multiset.indicator(classes[spec.s2_class].members, n)
    )
    outcome = verify_witness(diag.group, points, j, group_label=diag.label)
    if not isinstance(outcome, Witness):
        raise VerificationInconsistency(
            f"character witness refuted: {outcome.violation}"
        )
    if outcome.constant != len(points):
        raise VerificationInconsistency(
            f"character witness constant {outcome.constant} != class size {len(points)}"
        )
    return outcome
