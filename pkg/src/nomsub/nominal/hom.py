"""The internal hom Y ⊸ Z: finitely reducible maps out of Y^{*𝔸}.

A map is stored as positions (a_1..a_k) and a core Y^k -> Z, meaning
f(γ) = core(γ(a_1), ..., γ(a_k)).  The core must commute with the action on
values, so two maps agree everywhere once they agree on one fresh tuple per
orbit of Y^{*m}; those tuples are tuples of orbit shapes placed on disjoint
blocks of atoms.  The nominal action renames positions: (π·f)(γ) = f(γπ).

The same code serves renaming sets (``fresh=False``): γ ranges over all of
Y^𝔸 and renamings may merge positions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Mapping

from ..atoms import Perm, fresh
from ..errors import InsufficientTuple, NonEquivariant
from .core import NomSet, equivariance_witness, shapes, support
from .tensor import Tensor, move_to


@dataclass(frozen=True)
class ReducibleMap:
    positions: tuple
    core: Callable = field(compare=False, repr=False)
    label: str = ""

    def __call__(self, gamma: Mapping[int, object]):
        missing = [a for a in self.positions if a not in gamma]
        if missing:
            raise InsufficientTuple(f"substitution undefined at {missing}")
        return self.core(tuple(gamma[a] for a in self.positions))

    def act(self, rho) -> "ReducibleMap":
        """(ρ·f)(γ) = f(γρ); merged positions are collapsed."""
        return collapse(tuple(rho(a) for a in self.positions), self.core, self.label)

    def normalized(self) -> "ReducibleMap":
        return collapse(self.positions, self.core, self.label)


def collapse(positions: tuple, core: Callable, label: str = "") -> ReducibleMap:
    """The same map on sorted distinct positions."""
    distinct = tuple(sorted(set(positions)))
    if distinct == positions:
        return ReducibleMap(positions, core, label)
    idx = [distinct.index(a) for a in positions]
    return ReducibleMap(distinct, lambda t: core(tuple(t[i] for i in idx)), label)


def constant_map(value, label: str = "const") -> ReducibleMap:
    """A map 1 ≅ Y^0 -> Z, reducible with empty support."""
    return ReducibleMap((), lambda t: value, label)


class HomSet(NomSet):
    """Y ⊸ Z.  Elements are ReducibleMaps; equality is decided on the test family."""

    def __init__(self, Y: NomSet, Z: NomSet, fresh: bool = True, cap: int = 400, seed: int = 0):
        self.Y, self.Z, self.fresh = Y, Z, fresh
        self.cap, self.seed = cap, seed
        self.name = f"({Y.name} ⊸ {Z.name})"
        self.renaming_closed = not fresh
        self._shapes = None

    def act(self, rho, f):
        return f.act(rho)

    def over_support(self, f):
        return frozenset(f.positions)

    def shapes(self) -> list:
        if self._shapes is None:
            top = self.Y.max_support if self.Y.max_support is not None else 2
            self._shapes = [y for k in range(top + 1) for y in shapes(self.Y, k)]
        return self._shapes

    def family(self, atoms) -> list:
        """Substitutions on ``atoms``: one per orbit when that is at most ``cap``
        of them, otherwise a seeded sample of ``cap``."""
        atoms = sorted(atoms)
        sh = self.shapes()
        m = len(atoms)
        if len(sh) ** m <= self.cap:
            combos = list(product(sh, repeat=m))
        else:
            rng = random.Random(self.seed)
            combos = [tuple(rng.choice(sh) for _ in range(m)) for _ in range(self.cap)]
        out = []
        for combo in combos:
            gamma, nxt = {}, 0
            for a, y in zip(atoms, combo):
                gamma[a] = move_to(self.Y, y, nxt)
                nxt += len(support(self.Y, y))
            out.append(gamma)
        return out

    def is_exact(self, m: int) -> bool:
        return len(self.shapes()) ** m <= self.cap

    def equal(self, f: ReducibleMap, g: ReducibleMap) -> bool:
        atoms = set(f.positions) | set(g.positions)
        return all(f(gam) == g(gam) for gam in self.family(atoms))

    def replace_outside(self, gamma: dict, keep) -> list:
        """γ with every value outside ``keep`` swapped for a fresh copy of
        each of two different shapes."""
        sh = self.shapes()
        picks = [sh[-1], sh[len(sh) // 2]]
        out = []
        for y0 in picks:
            used = set().union(*(support(self.Y, y) for y in gamma.values()))
            g2 = dict(gamma)
            for a in gamma:
                if a not in keep:
                    start = max(used, default=-1) + 1
                    g2[a] = move_to(self.Y, y0, start)
                    used |= support(self.Y, g2[a])
            out.append(g2)
        return out

    def show(self, f) -> str:
        return f"{f.label or 'f'}@{{" + ", ".join(f"a{a}" for a in f.positions) + "}"


def hom_support(H: HomSet, f: ReducibleMap) -> frozenset:
    """Swap test on positions: a ∈ supp f iff (a b)·f ≠ f for b fresh.
    For renaming homs the collapsing test [a ↦ b] is used instead."""
    from ..atoms import Renaming
    f = f.normalized()
    b = fresh(f.positions)[0]
    out = set()
    for a in f.positions:
        rho = Perm.swap(a, b) if H.fresh else Renaming.of({a: b})
        if not H.equal(f, f.act(rho)):
            out.add(a)
    return frozenset(out)


def factors_through(H: HomSet, f: ReducibleMap, keep) -> bool:
    """Whether f(γ) depends only on γ restricted to ``keep``."""
    f = f.normalized()
    for gam in H.family(f.positions):
        for g2 in H.replace_outside(gam, set(keep)):
            if f(g2) != f(gam):
                return False
    return True


def factorization_support(H: HomSet, f: ReducibleMap) -> frozenset:
    """The least A ⊆ positions with f = g·p_A, by search over subsets."""
    f = f.normalized()
    for k in range(len(f.positions) + 1):
        for keep in combinations(f.positions, k):
            if factors_through(H, f, keep):
                return frozenset(keep)
    return frozenset(f.positions)


# -- currying ------------------------------------------------------------------

def check_equivariant(f: Callable, S: NomSet, Z: NomSet, stage: int = 3, samples=None) -> None:
    """Raise NonEquivariant with a witness when π·f(x) ≠ f(π·x) on the stage."""
    if samples is None:
        w = equivariance_witness(f, S, Z, stage)
    else:
        from ..atoms import all_perms
        w = None
        perms = all_perms(range(stage))
        for x in samples:
            for pi in perms:
                if Z.act(pi, f(x)) != f(S.act(pi, x)):
                    w = {"perm": str(pi), "elem": S.show(x)}
                    break
            if w:
                break
    if w is not None:
        raise NonEquivariant(w)


def curry(f: Callable, T: Tensor, label: str = "") -> Callable:
    """curry(f)(x)(γ) = f(x[γ|supp x])."""
    def g(x):
        pos = tuple(sorted(support(T.X, x)))
        return ReducibleMap(pos, lambda t, x=x, pos=pos: f(T.make(x, dict(zip(pos, t)))),
                            label or "curry")
    return g


def _some_shapes(Y: NomSet, want: int) -> list:
    """Orbit shapes of Y by increasing support size, stopping once ``want`` are found."""
    top = Y.max_support if Y.max_support is not None else 2
    out = []
    for k in list(range(1, top + 1)) + [0]:
        out += shapes(Y, k)
        if len(out) >= want:
            break
    return out


def uncurry(g: Callable, T: Tensor, choice: int = 0) -> Callable:
    """uncurry(g)(x[γ]) = g(x)(γ̂), with γ̂ extending γ to the positions of
    g(x) by fresh copies of the ``choice``-th orbit shape of Y."""
    sh = None

    def f(c):
        nonlocal sh
        xs, vals = c
        h = g(xs)
        gamma = dict(enumerate(vals))
        extra = [a for a in h.positions if a not in gamma]
        if extra:
            if sh is None:
                sh = _some_shapes(T.Y, choice + 1)
            y0 = sh[choice % len(sh)]
            used = set().union(set(), *(support(T.Y, y) for y in vals))
            for a in extra:
                start = max(used, default=-1) + 1
                gamma[a] = move_to(T.Y, y0, start)
                used |= support(T.Y, gamma[a])
        return h(gamma)
    return f


def padded(g: Callable, T: Tensor) -> Callable:
    """g with one superfluous position added to each value, to exercise γ̂."""
    def out(x):
        h = g(x)
        b = fresh(set(h.positions) | support(T.X, x))[0]
        pos = h.positions + (b,)
        return ReducibleMap(pos, lambda t, core=h.core: core(t[:-1]), h.label + "+pad")
    return out
