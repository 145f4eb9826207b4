"""Atoms, finite permutations and finite renamings.

Atoms are natural numbers; the stage of size n is {0, ..., n-1}.  Both
``Perm`` and ``Renaming`` keep a sparse graph with fixed points pruned, so
structural equality is equality of the underlying maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import count
from typing import Iterable, Mapping

Atom = int
AtomSet = frozenset


def stage(n: int) -> frozenset:
    return frozenset(range(n))


def atom_name(a: Atom) -> str:
    return f"a{a}"


def show_atoms(s: Iterable[Atom]) -> str:
    return "{" + ", ".join(atom_name(a) for a in sorted(s)) + "}"


def _pruned(mapping: Mapping[int, int]) -> tuple:
    return tuple(sorted((a, b) for a, b in mapping.items() if a != b))


@dataclass(frozen=True)
class Renaming:
    """A map on atoms that is the identity outside a finite set."""

    graph: tuple = ()

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "Renaming":
        return cls(_pruned(mapping))

    @cached_property
    def mapping(self) -> dict:
        return dict(self.graph)

    def __call__(self, a: Atom) -> Atom:
        return self.mapping.get(a, a)

    def domain(self) -> frozenset:
        return frozenset(self.mapping)

    def touched(self) -> frozenset:
        """Atoms moved or hit by the map."""
        return frozenset(self.mapping) | frozenset(self.mapping.values())

    def image(self, s: Iterable[Atom]) -> frozenset:
        return frozenset(self(a) for a in s)

    def __mul__(self, other: "Renaming") -> "Renaming":
        # (self * other)(a) == self(other(a))
        atoms = self.touched() | other.touched()
        cls = Perm if isinstance(self, Perm) and isinstance(other, Perm) else Renaming
        return cls.of({a: self(other(a)) for a in atoms})

    def restrict(self, s: Iterable[Atom]) -> dict:
        return {a: self(a) for a in s}

    def is_injective_on(self, s: Iterable[Atom]) -> bool:
        s = list(s)
        return len({self(a) for a in s}) == len(s)

    def sort_key(self):
        return self.graph

    def __str__(self) -> str:
        return "[" + ", ".join(f"{atom_name(a)}↦{atom_name(b)}" for a, b in self.graph) + "]"

    def __repr__(self) -> str:
        return f"Renaming({self})"


@dataclass(frozen=True)
class Perm(Renaming):
    """A finitely supported bijection of the atoms."""

    def __post_init__(self):
        dom = {a for a, _ in self.graph}
        if {b for _, b in self.graph} != dom:
            raise ValueError(f"not a permutation: {self.graph}")

    @classmethod
    def swap(cls, a: Atom, b: Atom) -> "Perm":
        return cls.of({a: b, b: a})

    def inverse(self) -> "Perm":
        return Perm.of({b: a for a, b in self.graph})

    def cycles(self) -> list:
        seen, out = set(), []
        for a, _ in self.graph:
            if a in seen:
                continue
            cyc, b = [], a
            while b not in seen:
                seen.add(b)
                cyc.append(b)
                b = self(b)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        if not self.graph:
            return "id"
        return "".join("(" + " ".join(atom_name(a) for a in c) + ")" for c in self.cycles())

    def __repr__(self) -> str:
        return f"Perm({self})"


IDENTITY = Perm()


def compose(p: Renaming, q: Renaming) -> Renaming:
    return p * q


def fresh(avoid: Iterable[Atom], k: int = 1) -> list:
    """The k least atoms not in ``avoid``."""
    avoid = set(avoid)
    out = []
    for a in count():
        if len(out) == k:
            return out
        if a not in avoid:
            out.append(a)
    return out


def extend_bijection(j: Mapping[int, int]) -> Perm:
    """A permutation agreeing with the injective partial map ``j``.

    Atoms in the image but outside the domain are sent, in order, to the
    atoms of the domain that are not hit.
    """
    if len(set(j.values())) != len(j):
        raise ValueError(f"map is not injective: {dict(j)}")
    dom, img = set(j), set(j.values())
    full = dict(j)
    for a, b in zip(sorted(img - dom), sorted(dom - img)):
        full[a] = b
    return Perm.of(full)


def all_perms(atoms: Iterable[Atom]) -> list:
    from itertools import permutations
    atoms = sorted(atoms)
    return [Perm.of(dict(zip(atoms, p))) for p in permutations(atoms)]


def all_renamings(atoms: Iterable[Atom]) -> list:
    from itertools import product
    atoms = sorted(atoms)
    return [Renaming.of(dict(zip(atoms, img))) for img in product(atoms, repeat=len(atoms))]


def order_iso(s: Iterable[Atom]) -> dict:
    """The order-preserving bijection from ``s`` onto a stage."""
    return {a: i for i, a in enumerate(sorted(s))}
