"""Permutations on {0..n-1} and permutation groups with a deterministic stabilizer chain.

Composition convention, used everywhere in this package: ``p * q`` (equivalently
``compose(p, q)``) is the permutation sending i to q(p(i)), i.e. the LEFT factor
acts first.  This matches exponent notation for group actions: x^(pq) = (x^p)^q.

All algorithms here are deterministic.  Base points for the stabilizer chain are
chosen as the smallest moved point at each level and transversals are filled by
breadth-first search in generator order, so element enumerations, orbits and
witness certificates are reproducible run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded

DEFAULT_ELEMENT_CAP = 10**6
DEFAULT_SET_ORBIT_CAP = 10**6


class Permutation:
    """An immutable permutation of {0..n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _unchecked(cls, images: tuple[int, ...]) -> "Permutation":
        # Fast path for internally-built image tuples; skips validation.
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._unchecked(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles; points outside the cycles are fixed."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for pt in cycle:
                if not 0 <= pt < degree:
                    raise ValueError(f"cycle point {pt} out of range for degree {degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated across cycles")
                seen.add(pt)
            for i, pt in enumerate(cycle):
                images[pt] = cycle[(i + 1) % len(cycle)]
        return cls._unchecked(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation._unchecked(tuple(inv))

    def __pow__(self, exponent: int) -> "Permutation":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    @property
    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, img in enumerate(self.images) if i != img]

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, each cycle led by its smallest point."""
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            pt = self.images[start]
            while pt != start:
                cycle.append(pt)
                seen.add(pt)
                pt = self.images[pt]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation[{self.cycle_string()}]"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation i -> q(p(i)): p acts first, then q."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation._unchecked(tuple(map(q.images.__getitem__, p.images)))


def parse_permutation(data, degree: int) -> Permutation:
    """Parse JSON permutation data: either an image list or a list of cycles."""
    if not isinstance(data, list):
        raise ValueError(f"permutation must be a list, got {type(data).__name__}")
    if data and all(isinstance(x, list) for x in data):
        return Permutation.from_cycles(degree, data)
    if not data:
        return Permutation.identity(degree)
    if len(data) != degree:
        raise ValueError(f"image list has length {len(data)}, expected {degree}")
    return Permutation(data)


# --- stabilizer chain ------------------------------------------------------


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.gens: list[Permutation] = []
        # transversal[beta] = u with base^u = beta.  Entries are append-only:
        # once a point has a word, the word never changes.  Level verification
        # below relies on this (a successful sift replays identically later).
        self.transversal: dict[int, Permutation] = {base: Permutation.identity(degree)}

    def extend_transversal(self) -> None:
        queue = list(self.transversal)
        i = 0
        while i < len(queue):
            beta = queue[i]
            i += 1
            u = self.transversal[beta]
            for g in self.gens:
                gamma = g(beta)
                if gamma not in self.transversal:
                    self.transversal[gamma] = u * g
                    queue.append(gamma)


class _StabilizerChain:
    """Deterministic Schreier-Sims.

    Levels are verified top-down: a level passes once every one of its Schreier
    generators sifts to the identity through the chain below it.  Non-identity
    residues are installed as strong generators at the deeper levels they
    belong to, which only ever extends transversals, so already-verified levels
    stay verified.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int):
        self.degree = degree
        self.levels: list[_Level] = []
        for g in generators:
            if not g.is_identity:
                self._add_generator(0, g)
        i = 0
        while i < len(self.levels):
            if self._verify_level(i):
                i += 1

    def _add_generator(self, start: int, g: Permutation) -> None:
        """Install g at every level from start down to the first level whose
        base point g moves (creating a new level at the end if needed)."""
        i = start
        while True:
            if i == len(self.levels):
                self.levels.append(_Level(min(g.moved_points()), self.degree))
            level = self.levels[i]
            level.gens.append(g)
            level.extend_transversal()
            if g(level.base) != level.base:
                return
            i += 1

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Reduce g through the chain; returns (residue, level where it stopped)."""
        for i in range(start, len(self.levels)):
            level = self.levels[i]
            beta = g(level.base)
            if beta not in level.transversal:
                return g, i
            g = g * level.transversal[beta].inverse()
        return g, len(self.levels)

    def _verify_level(self, i: int) -> bool:
        level = self.levels[i]
        for beta in sorted(level.transversal):
            u = level.transversal[beta]
            for s in level.gens:
                schreier = u * s * level.transversal[s(beta)].inverse()
                if schreier.is_identity:
                    continue
                residue, _ = self.sift(schreier, i + 1)
                if not residue.is_identity:
                    self._add_generator(i + 1, residue)
                    return False
        return True

    def order(self) -> int:
        n = 1
        for level in self.levels:
            n *= len(level.transversal)
        return n

    def contains(self, g: Permutation) -> bool:
        residue, _ = self.sift(g)
        return residue.is_identity

    def base(self) -> list[int]:
        return [level.base for level in self.levels]


# --- permutation groups ----------------------------------------------------


@dataclass(frozen=True)
class ConjClass:
    """One conjugacy class: representative plus sorted member indices into a
    fixed element enumeration (PermutationGroup.elements or a GroupTable)."""

    representative: object
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


class PermutationGroup:
    """A finite permutation group given by generators."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        generators = tuple(generators)
        if degree is None:
            if not generators:
                raise ValueError("degree required for a generator-free (trivial) group")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
        self.degree = degree
        self.generators = generators
        self._chain: _StabilizerChain | None = None
        self._elements: list[Permutation] | None = None

    @classmethod
    def trivial(cls, degree: int) -> "PermutationGroup":
        return cls((), degree)

    def _get_chain(self) -> _StabilizerChain:
        if self._chain is None:
            self._chain = _StabilizerChain(self.generators, self.degree)
        return self._chain

    def order(self) -> int:
        return self._get_chain().order()

    def base(self) -> list[int]:
        return self._get_chain().base()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        return self._get_chain().contains(p)

    def orbit(self, point: int) -> set[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")
        queue = [point]
        seen = {point}
        i = 0
        while i < len(queue):
            beta = queue[i]
            i += 1
            for g in self.generators:
                gamma = g(beta)
                if gamma not in seen:
                    seen.add(gamma)
                    queue.append(gamma)
        return seen

    def orbits(self) -> list[set[int]]:
        """Orbit partition of the whole domain, ordered by smallest point."""
        remaining = set(range(self.degree))
        out = []
        while remaining:
            orb = self.orbit(min(remaining))
            out.append(orb)
            remaining -= orb
        return out

    def is_transitive(self) -> bool:
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def orbit_with_transversal(self, point: int) -> dict[int, Permutation]:
        """Maps each orbit point beta to some u in the group with point^u = beta."""
        trans = {point: Permutation.identity(self.degree)}
        queue = [point]
        i = 0
        while i < len(queue):
            beta = queue[i]
            i += 1
            u = trans[beta]
            for g in self.generators:
                gamma = g(beta)
                if gamma not in trans:
                    trans[gamma] = u * g
                    queue.append(gamma)
        return trans

    def stabilizer(self, point: int) -> "PermutationGroup":
        """Point stabilizer, generated by the Schreier generators of the orbit."""
        trans = self.orbit_with_transversal(point)
        gens: list[Permutation] = []
        seen: set[tuple[int, ...]] = set()
        for beta in sorted(trans):
            u = trans[beta]
            for s in self.generators:
                schreier = u * s * trans[s(beta)].inverse()
                if not schreier.is_identity and schreier.images not in seen:
                    seen.add(schreier.images)
                    gens.append(schreier)
        return PermutationGroup(gens, self.degree)

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> list[Permutation]:
        """All elements, enumerated BFS from the identity in generator order."""
        if self._elements is not None:
            if len(self._elements) > cap:
                raise CapExceeded("element enumeration", cap)
            return self._elements
        ident = Permutation.identity(self.degree)
        out = [ident]
        index = {ident.images}
        i = 0
        while i < len(out):
            x = out[i]
            i += 1
            for g in self.generators:
                y = x * g
                if y.images not in index:
                    if len(out) >= cap:
                        raise CapExceeded("element enumeration", cap)
                    index.add(y.images)
                    out.append(y)
        self._elements = out
        return out

    def conjugacy_classes(self, cap: int = DEFAULT_ELEMENT_CAP) -> list[ConjClass]:
        """All conjugacy classes, sorted by (class size, smallest member index).

        Member indices refer to the canonical elements() enumeration.
        """
        elems = self.elements(cap)
        index = {p.images: i for i, p in enumerate(elems)}
        gen_invs = [g.inverse() for g in self.generators]
        assigned = [False] * len(elems)
        raw: list[list[int]] = []
        for start in range(len(elems)):
            if assigned[start]:
                continue
            members = [start]
            assigned[start] = True
            i = 0
            while i < len(members):
                px = elems[members[i]]
                i += 1
                for g, ginv in zip(self.generators, gen_invs):
                    y = index[(ginv * px * g).images]
                    if not assigned[y]:
                        assigned[y] = True
                        members.append(y)
            raw.append(sorted(members))
        raw.sort(key=lambda ms: (len(ms), ms[0]))
        return [ConjClass(elems[ms[0]], tuple(ms)) for ms in raw]

    def set_orbit(self, points: Iterable[int], cap: int = DEFAULT_SET_ORBIT_CAP) -> list[frozenset[int]]:
        """Orbit of a point set under the setwise action, in BFS discovery order."""
        start = frozenset(points)
        for pt in start:
            if not 0 <= pt < self.degree:
                raise ValueError(f"point {pt} out of range for degree {self.degree}")
        seen = {start}
        out = [start]
        i = 0
        while i < len(out):
            current = out[i]
            i += 1
            for g in self.generators:
                image = frozenset(map(g.images.__getitem__, current))
                if image not in seen:
                    if len(out) >= cap:
                        raise CapExceeded("set orbit", cap)
                    seen.add(image)
                    out.append(image)
        return out

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermutationGroup(degree={self.degree}, gens=[{gens}])"
