"""Staged nominal sets.

A nominal set is presented by its elements supported by each finite atom
set, i.e. by the presheaf A ↦ {x | A supports x} over injections.  Elements
are hashable payloads; the set object knows how atoms act on them and an
over-approximation of each element's support, which the swap test refines.
"""
from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Callable, Iterable, Sequence

from ..atoms import Perm, Renaming, all_perms, extend_bijection, fresh, show_atoms
from ..order import okey
from .. import lam as L


class NomSet:
    """Base class; subclasses provide act, over_support and stage_elements."""

    name = "X"
    max_support: int | None = None
    renaming_closed = True          # whether act also makes sense for non-injective renamings

    def act(self, rho: Renaming, x):
        raise NotImplementedError

    def over_support(self, x) -> frozenset:
        raise NotImplementedError

    def stage_elements(self, n: int) -> list:
        """Elements supported by {0..n-1}, in canonical order."""
        raise NotImplementedError

    def show(self, x) -> str:
        return repr(x)

    def elements(self, atoms: Iterable[int]) -> list:
        atoms = sorted(atoms)
        n = len(atoms)
        if atoms == list(range(n)):
            return self.stage_elements(n)
        pi = extend_bijection(dict(zip(range(n), atoms)))
        return sorted((self.act(pi, x) for x in self.stage_elements(n)), key=okey)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def cached_stages(cls):
    """Memoise stage_elements per instance."""
    raw = cls.stage_elements

    def stage_elements(self, n):
        memo = self.__dict__.setdefault("_stage_memo", {})
        if n not in memo:
            memo[n] = sorted(raw(self, n), key=okey)
        return memo[n]

    cls.stage_elements = stage_elements
    return cls


# -- support and orbits ----------------------------------------------------------

def support(X: NomSet, x) -> frozenset:
    """Least support by the swap test: a ∈ supp x iff (a b)·x ≠ x for fresh b."""
    over = X.over_support(x)
    b = fresh(over)[0]
    return frozenset(a for a in over if X.act(Perm.swap(a, b), x) != x)


def supports(X: NomSet, x, S: Iterable[int], pool: Iterable[int]) -> bool:
    """Whether every permutation of ``pool`` fixing S pointwise fixes x."""
    S = set(S)
    movable = sorted(set(pool) - S)
    return all(X.act(pi, x) == x for pi in all_perms(movable))


def least_support_oracle(X: NomSet, x, extra: int = 2) -> frozenset:
    """The least supporting subset of over_support, by brute force over all
    permutations of over_support plus ``extra`` fresh atoms."""
    over = sorted(X.over_support(x))
    pool = over + fresh(over, extra)
    for k in range(len(over) + 1):
        for S in combinations(over, k):
            if supports(X, x, S, pool):
                return frozenset(S)
    return frozenset(over)


def is_fresh(X: NomSet, x, Y: NomSet, y) -> bool:
    return not (support(X, x) & support(Y, y))


def relabellings(atoms: Sequence[int], target: Sequence[int] | None = None):
    """All permutations sending the sorted ``atoms`` bijectively onto ``target``
    (default 0..k-1)."""
    atoms = sorted(atoms)
    target = list(range(len(atoms))) if target is None else list(target)
    for img in permutations(target):
        yield extend_bijection(dict(zip(atoms, img)))


def orbit_canon(X: NomSet, x):
    """The okey-least element of the orbit of x whose support is {0..k-1}."""
    return min((X.act(pi, x) for pi in relabellings(support(X, x))), key=okey)


def orbit_reps(X: NomSet, atoms: Iterable[int]) -> list:
    """One representative (the okey-least) per orbit among elements supported by ``atoms``."""
    atoms = sorted(atoms)
    groups = {}
    for x in X.elements(atoms):
        groups.setdefault(orbit_canon(X, x), []).append(x)
    return sorted((min(v, key=okey) for v in groups.values()), key=okey)


def shapes(X: NomSet, k: int) -> list:
    """Orbit canonical forms of elements with support exactly {0..k-1}."""
    out = {orbit_canon(X, x) for x in X.stage_elements(k) if len(support(X, x)) == k}
    return sorted(out, key=okey)


def equivariance_witness(f: Callable, X: NomSet, Y: NomSet, n: int, perms=None):
    """First (π, x) with π·f(x) ≠ f(π·x) over elements and permutations of stage n."""
    perms = all_perms(range(n)) if perms is None else perms
    for x in X.stage_elements(n):
        fx = f(x)
        for pi in perms:
            if Y.act(pi, fx) != f(X.act(pi, x)):
                return {"perm": str(pi), "elem": X.show(x)}
    return None


def fresh_elements(Y: NomSet, avoid: Iterable[int], k: int, template=None) -> list:
    """k pairwise fresh elements of Y, all fresh for ``avoid``: copies of a
    fixed template (default the last element at the largest small stage)
    moved onto least-unused atoms."""
    if template is None:
        m = Y.max_support if Y.max_support is not None else 1
        template = Y.stage_elements(m)[-1]
    s = sorted(support(Y, template))
    used = set(avoid) | set(s)
    out = []
    for _ in range(k):
        new = fresh(used, len(s))
        used |= set(new)
        out.append(Y.act(extend_bijection(dict(zip(s, new))), template))
    return out


# -- the corpus ------------------------------------------------------------------

@cached_stages
class Discrete(NomSet):
    max_support = 0

    def __init__(self, values: Sequence = (0, 1), name: str | None = None):
        self.values = tuple(values)
        self.name = name or f"D{len(self.values)}"

    def act(self, rho, x):
        return x

    def over_support(self, x):
        return frozenset()

    def stage_elements(self, n):
        return list(self.values)


def terminal() -> Discrete:
    return Discrete(((),), name="1")


@cached_stages
class Atoms(NomSet):
    name = "A"
    max_support = 1

    def act(self, rho, a):
        return rho(a)

    def over_support(self, a):
        return frozenset([a])

    def stage_elements(self, n):
        return list(range(n))

    def show(self, a):
        return f"a{a}"


@cached_stages
class Tuples(NomSet):
    """𝔸^k, or with ``injective`` the fresh power 𝔸^{*k}."""

    def __init__(self, k: int, injective: bool = False):
        self.k, self.injective = k, injective
        self.max_support = k
        self.renaming_closed = not injective
        self.name = f"A*{k}" if injective else f"A^{k}"

    def act(self, rho, t):
        return tuple(rho(a) for a in t)

    def over_support(self, t):
        return frozenset(t)

    def stage_elements(self, n):
        if self.injective:
            return list(permutations(range(n), self.k))
        return list(product(range(n), repeat=self.k))

    def show(self, t):
        return "(" + ", ".join(f"a{a}" for a in t) + ")"


def fresh_tuples(k: int) -> Tuples:
    return Tuples(k, injective=True)


@cached_stages
class FinPowerset(NomSet):
    """Finite sets of atoms, truncated to at most ``max_size`` elements."""

    def __init__(self, max_size: int = 2):
        self.max_size = self.max_support = max_size
        self.name = f"PfA@{max_size}"

    def act(self, rho, s):
        return frozenset(rho(a) for a in s)

    def over_support(self, s):
        return frozenset(s)

    def stage_elements(self, n):
        return [frozenset(c) for k in range(min(n, self.max_size) + 1) for c in combinations(range(n), k)]

    def show(self, s):
        return show_atoms(s)


@cached_stages
class LamTerms(NomSet):
    """λ-terms modulo α of height <= depth."""

    def __init__(self, depth: int = 2):
        self.depth = depth
        self.max_support = 2 ** depth
        self.name = f"Lam@depth{depth}"

    def act(self, rho, t):
        return L.act(rho, t)

    def over_support(self, t):
        return L.free_vars(t)

    def stage_elements(self, n):
        return L.terms(range(n), self.depth)

    def show(self, t):
        return L.show(t)


@cached_stages
class Product(NomSet):
    def __init__(self, X: NomSet, Y: NomSet):
        self.X, self.Y = X, Y
        self.name = f"({X.name} x {Y.name})"
        self.max_support = None if None in (X.max_support, Y.max_support) else X.max_support + Y.max_support
        self.renaming_closed = X.renaming_closed and Y.renaming_closed

    def act(self, rho, p):
        return (self.X.act(rho, p[0]), self.Y.act(rho, p[1]))

    def over_support(self, p):
        return self.X.over_support(p[0]) | self.Y.over_support(p[1])

    def stage_elements(self, n):
        return list(product(self.X.stage_elements(n), self.Y.stage_elements(n)))

    def show(self, p):
        return f"({self.X.show(p[0])}, {self.Y.show(p[1])})"


@cached_stages
class FreshProduct(Product):
    """X * Y: pairs with disjoint supports."""

    def __init__(self, X: NomSet, Y: NomSet):
        super().__init__(X, Y)
        self.name = f"({X.name} * {Y.name})"
        self.renaming_closed = False

    def stage_elements(self, n):
        return [(x, y) for x in self.X.stage_elements(n) for y in self.Y.stage_elements(n)
                if not (support(self.X, x) & support(self.Y, y))]


@cached_stages
class Coproduct(NomSet):
    def __init__(self, X: NomSet, Y: NomSet):
        self.X, self.Y = X, Y
        self.name = f"({X.name} + {Y.name})"
        self.max_support = None if None in (X.max_support, Y.max_support) else max(X.max_support, Y.max_support)
        self.renaming_closed = X.renaming_closed and Y.renaming_closed

    def act(self, rho, e):
        return (0, self.X.act(rho, e[1])) if e[0] == 0 else (1, self.Y.act(rho, e[1]))

    def over_support(self, e):
        return (self.X if e[0] == 0 else self.Y).over_support(e[1])

    def stage_elements(self, n):
        return [(0, x) for x in self.X.stage_elements(n)] + [(1, y) for y in self.Y.stage_elements(n)]

    def show(self, e):
        return f"inl {self.X.show(e[1])}" if e[0] == 0 else f"inr {self.Y.show(e[1])}"


def corpus() -> dict:
    """Built-in nominal sets by CLI name."""
    A = Atoms()
    return {
        "1": terminal(),
        "2": Discrete((0, 1), name="2"),
        "A": A,
        "A*2": fresh_tuples(2),
        "A*3": fresh_tuples(3),
        "A^2": Tuples(2),
        "PfA@1": FinPowerset(1),
        "PfA@2": FinPowerset(2),
        "PfA@3": FinPowerset(3),
        "Lam@depth1": LamTerms(1),
        "Lam@depth2": LamTerms(2),
        "Lam@depth3": LamTerms(3),
        "A*A": FreshProduct(A, A),
        "AxA": Product(A, A),
        "A+1": Coproduct(A, terminal()),
    }
