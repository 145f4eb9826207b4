"""Finite stages, maps between them, and the index categories over them.

A stage n stands for {0, ..., n-1}.  The six index categories are wide
subcategories of finite sets given by a membership predicate on maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class Mor:
    dom: int
    cod: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.dom or any(not 0 <= t < self.cod for t in self.table):
            raise ValueError(f"bad map {self.dom}->{self.cod}: {self.table}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def after(self, f: "Mor") -> "Mor":
        """self ∘ f"""
        if f.cod != self.dom:
            raise ValueError("maps do not compose")
        return Mor(f.dom, self.cod, tuple(self.table[t] for t in f.table))

    def image(self) -> frozenset:
        return frozenset(self.table)

    def is_injective(self) -> bool:
        return len(set(self.table)) == self.dom

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod

    def is_bijective(self) -> bool:
        return self.dom == self.cod and self.is_injective()

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.table == tuple(range(self.dom))

    def is_monotone_injection(self) -> bool:
        return all(a < b for a, b in zip(self.table, self.table[1:]))

    def inverse(self) -> "Mor":
        if not self.is_bijective():
            raise ValueError("not invertible")
        inv = [0] * self.dom
        for i, t in enumerate(self.table):
            inv[t] = i
        return Mor(self.cod, self.dom, tuple(inv))

    def to_json(self) -> list:
        return [self.dom, self.cod, list(self.table)]

    def sort_key(self):
        return (self.dom, self.cod, self.table)

    def __str__(self) -> str:
        return f"{self.dom}->{self.cod}{list(self.table)}"


def identity(n: int) -> Mor:
    return Mor(n, n, tuple(range(n)))


def inclusion(n: int, m: int) -> Mor:
    return Mor(n, m, tuple(range(n)))


def subset_inclusion(s: Iterable[int], n: int) -> Mor:
    """The monotone map |s| -> n whose image is s."""
    s = sorted(s)
    return Mor(len(s), n, tuple(s))


def plus(f: Mor, g: Mor) -> Mor:
    return Mor(f.dom + g.dom, f.cod + g.cod, f.table + tuple(t + f.cod for t in g.table))


def copair(f: Mor, g: Mor) -> Mor:
    """[f, g]: dom f + dom g -> cod"""
    if f.cod != g.cod:
        raise ValueError("copair needs a common codomain")
    return Mor(f.dom + g.dom, f.cod, f.table + g.table)


def times(f: Mor, g: Mor) -> Mor:
    # (a, b) is encoded as a * dom g + b
    return Mor(f.dom * g.dom, f.cod * g.cod,
               tuple(f(a) * g.cod + g(b) for a in range(f.dom) for b in range(g.dom)))


def sum_of(mors: Sequence[Mor]) -> Mor:
    out = Mor(0, 0, ())
    for f in mors:
        out = plus(out, f)
    return out


def blocks(sizes: Sequence[int]) -> list:
    """Index ranges of the summands of sum(sizes)."""
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def restrict(f: Mor, idx: Sequence[int]) -> Mor:
    return Mor(len(idx), f.cod, tuple(f(i) for i in idx))


def image_factor(f: Mor) -> tuple:
    """f = mono ∘ epi with the image ordered as a subset of cod f."""
    img = sorted(f.image())
    pos = {t: i for i, t in enumerate(img)}
    return Mor(len(img), f.cod, tuple(img)), Mor(f.dom, len(img), tuple(pos[t] for t in f.table))


def all_maps(m: int, n: int) -> list:
    return [Mor(m, n, t) for t in product(range(n), repeat=m)]


def count_surjections(m: int, n: int) -> int:
    from math import comb
    return sum((-1) ** k * comb(n, k) * (n - k) ** m for k in range(n + 1))


@dataclass(frozen=True, eq=False)
class IndexCat:
    """A wide subcategory of finite sets, given by a membership predicate."""

    name: str
    member: Callable[[Mor], bool] = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __contains__(self, f: Mor) -> bool:
        return self.member(f)

    def homs(self, m: int, n: int) -> tuple:
        key = (m, n)
        if key not in self._cache:
            self._cache[key] = tuple(self._generate(m, n))
        return self._cache[key]

    def _generate(self, m, n):
        # direct generators for the standard categories, filtering otherwise
        if self is INJ or self is BIJ:
            if self is BIJ and m != n:
                return []
            return [Mor(m, n, t) for t in sorted(permutations(range(n), m))]
        return [f for f in all_maps(m, n) if self.member(f)]

    def all_homs(self, bound: int) -> list:
        return [f for m in range(bound + 1) for n in range(bound + 1) for f in self.homs(m, n)]

    def generators(self, bound: int) -> tuple:
        """Adjacent transpositions, the inclusions n -> n+1 and the merges
        n+1 -> n that lie in the category, if they generate it up to
        ``bound``; otherwise every non-identity map."""
        key = ("gens", bound)
        if key not in self._cache:
            gens = []
            for n in range(bound + 1):
                for i in range(n - 1):
                    t = list(range(n))
                    t[i], t[i + 1] = t[i + 1], t[i]
                    gens.append(Mor(n, n, tuple(t)))
                if n < bound:
                    gens.append(inclusion(n, n + 1))
                if 0 < n < bound:
                    gens.append(Mor(n + 1, n, tuple(range(n)) + (n - 1,)))
            gens = [g for g in gens if g in self]
            if not generates(self, gens, bound):
                gens = [f for f in self.all_homs(bound) if not f.is_identity()]
            self._cache[key] = tuple(gens)
        return self._cache[key]

    @cached_property
    def contains_isos(self) -> bool:
        return all(f in self for n in range(5) for f in BIJ.homs(n, n))

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"IndexCat({self.name})"


def generates(C: IndexCat, gens: Sequence[Mor], bound: int) -> bool:
    """Whether every C-map between stages <= bound is a composite of ``gens``."""
    reached = {identity(n) for n in range(bound + 1)}
    frontier = list(reached)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                if g.dom == f.cod:
                    h = g.after(f)
                    if h not in reached:
                        reached.add(h)
                        nxt.append(h)
        frontier = nxt
    return reached == set(C.all_homs(bound))


ID = IndexCat("J", Mor.is_identity)
ISUB = IndexCat("Isub", Mor.is_monotone_injection)
BIJ = IndexCat("B", Mor.is_bijective)
INJ = IndexCat("I", Mor.is_injective)
SURJ = IndexCat("S", Mor.is_surjective)
FIN = IndexCat("F", lambda f: True)

CATEGORIES = {c.name: c for c in (ID, ISUB, BIJ, INJ, SURJ, FIN)}


def hom_enumerate(C: IndexCat, m: int, n: int) -> list:
    return list(C.homs(m, n))


# -- pullbacks ---------------------------------------------------------------

@dataclass(frozen=True)
class Pullback:
    carrier: tuple      # ordered pairs (x, beta) with f(x) == b(beta)
    proj: Mor           # f*b : P -> X
    reindex: Mor        # r_f : P -> B


def pullback(f: Mor, b: Mor) -> Pullback:
    if f.cod != b.cod:
        raise ValueError("pullback legs need a common codomain")
    pairs = tuple((x, beta) for x in range(f.dom) for beta in range(b.dom) if f(x) == b(beta))
    p = len(pairs)
    return Pullback(pairs, Mor(p, f.dom, tuple(x for x, _ in pairs)),
                    Mor(p, b.dom, tuple(beta for _, beta in pairs)))


def preimage(f: Mor, U: Iterable[int]) -> frozenset:
    U = set(U)
    return frozenset(x for x in range(f.dom) if f(x) in U)


# -- contextuality -----------------------------------------------------------

@dataclass
class ContextualityReport:
    cat: str
    bound: int
    contextual: bool
    sum_closed: bool
    pullback_stable: bool
    product_closed: bool
    prime: bool
    witness: dict | None = None

    @property
    def criteria_agree(self) -> bool:
        return self.contextual == (self.product_closed and self.prime)


def contextuality_check(C: IndexCat, bound: int) -> ContextualityReport:
    """Closure under + and pullback stability of reindexing, up to ``bound``.

    Also evaluates the product-closed-and-prime criterion so callers can
    compare the two verdicts.
    """
    witness = None
    members = C.all_homs(bound)

    sum_closed = True
    for f in members:
        for g in members:
            if f.dom + g.dom <= bound and f.cod + g.cod <= bound and plus(f, g) not in C:
                sum_closed = False
                witness = witness or {"kind": "sum", "f": f.to_json(), "g": g.to_json()}
                break
        if not sum_closed:
            break

    stable = True
    seen = set()
    for f in members:
        for nb in range(bound + 1):
            for b in all_maps(nb, f.cod):
                pb = pullback(f, b)
                if len(pb.carrier) > bound or pb.reindex in seen:
                    continue
                seen.add(pb.reindex)
                p = len(pb.carrier)
                for sigma in BIJ.homs(p, p):
                    r = pb.reindex.after(sigma)
                    if r not in C:
                        stable = False
                        witness = witness or {"kind": "pullback", "f": f.to_json(), "b": b.to_json(),
                                              "iso": sigma.to_json(), "reindex": r.to_json()}
                        break
                if not stable:
                    break
            if not stable:
                break
        if not stable:
            break

    product_closed = all(times(f, g) in C for f in members for g in members
                         if f.dom * g.dom <= bound and f.cod * g.cod <= bound)
    prime = True
    for m1, m2, n1, n2 in product(range(bound + 1), repeat=4):
        if m1 + m2 > bound or n1 + n2 > bound:
            continue
        for f in all_maps(m1, n1):
            for g in all_maps(m2, n2):
                if plus(f, g) in C and (f not in C or g not in C):
                    prime = False
                    break
            if not prime:
                break
        if not prime:
            break

    return ContextualityReport(C.name, bound, sum_closed and stable, sum_closed, stable,
                               product_closed, prime, witness)


# -- coverages ---------------------------------------------------------------

def ictx_covers(n: int, bound: int) -> list:
    """Singleton inclusion covers {n ⊆ m} of stage n."""
    return [[inclusion(n, m)] for m in range(n, bound + 1)]


def ictx_stability(cover: Sequence[Mor], g: Mor) -> tuple:
    """Given the cover {C ⊆ C + A} and g: C -> D, the cover {D ⊆ D + A'} and
    the map g + id: C + A -> D + A' making the square commute."""
    (iota,) = cover
    extra = iota.cod - iota.dom
    t = inclusion(g.cod, g.cod + extra)
    g2 = plus(g, identity(extra))
    if g2.after(iota) != t.after(g):
        raise AssertionError("stability square does not commute")
    return [t], g2


def o_covers(A: frozenset, ambient: frozenset) -> list:
    """Nonempty families of supersets of A inside ``ambient`` meeting in A."""
    rest = sorted(ambient - A)
    supers = [A | frozenset(c) for k in range(len(rest) + 1) for c in combinations(rest, k)]
    out = []
    for k in range(1, len(supers) + 1):
        for fam in combinations(supers, k):
            if frozenset.intersection(*fam) == A:
                out.append(list(fam))
    return out


def covers(kind: str, A, bound) -> list:
    if kind == "I_Ctx":
        return ictx_covers(A, bound)
    if kind == "O":
        return o_covers(frozenset(A), frozenset(bound))
    raise ValueError(f"unknown coverage {kind!r}")


def matching_families(F, cover: Sequence[Mor]) -> list:
    """Matching families for ``cover`` in the presheaf F, each paired with its
    amalgamations.

    A family (x_i ∈ F(cod f_i)) matches when g·x_i = k·x_j for all g, k in
    F.cat with g∘f_i = k∘f_j.
    """
    C = F.cat
    dom = cover[0].dom
    constraints = []
    for i, fi in enumerate(cover):
        for j, fj in enumerate(cover):
            for e in range(F.bound + 1):
                for g in C.homs(fi.cod, e):
                    gf = g.after(fi)
                    for k in C.homs(fj.cod, e):
                        if k.after(fj) == gf and (i != j or g != k):
                            constraints.append((i, g, j, k))
    out = []
    for fam in product(*(F.elems[f.cod] for f in cover)):
        if all(F.act(g, fam[i]) == F.act(k, fam[j]) for i, g, j, k in constraints):
            amal = [z for z in F.elems[dom] if all(F.act(f, z) == x for f, x in zip(cover, fam))]
            out.append((fam, amal))
    return out
