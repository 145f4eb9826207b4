"""Presheaves built by explicit tabulation."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from ..finset import IndexCat
from .core import Quotient, TruncPresheaf, representable, tabulate


def powerset(cat: IndexCat, bound: int) -> TruncPresheaf:
    return tabulate(cat, bound,
                    lambda n: [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)],
                    lambda f, s: frozenset(f(a) for a in s), name="Pf",
                    show=lambda s: sorted(s))


def reduce_word(word) -> tuple:
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def show_word(w) -> str:
    if not w:
        return "1"
    return "".join(f"a{a}" + ("" if s > 0 else "⁻¹") for a, s in w)


def free_group(cat: IndexCat, bound: int, max_len: int = 2) -> TruncPresheaf:
    """Reduced words of length <= max_len; maps rename letters and reduce."""
    def words(n):
        letters = [(a, s) for a in range(n) for s in (1, -1)]
        out = set()
        for k in range(max_len + 1):
            for w in product(letters, repeat=k):
                r = reduce_word(w)
                if len(r) == k:
                    out.add(r)
        return sorted(out, key=lambda w: (len(w), w))

    return tabulate(cat, bound, words, lambda f, w: reduce_word([(f(a), s) for a, s in w]),
                    name=f"FreeGroup@{max_len}", show=show_word)


def words(cat: IndexCat, bound: int, max_len: int = 2, commutative: bool = False) -> TruncPresheaf:
    """Lists (or multisets, as sorted tuples) of length <= max_len."""
    def elems(n):
        out = []
        for k in range(max_len + 1):
            for w in product(range(n), repeat=k):
                if not commutative or list(w) == sorted(w):
                    out.append(w)
        return out

    def rule(f, w):
        w = tuple(f(a) for a in w)
        return tuple(sorted(w)) if commutative else w

    return tabulate(cat, bound, elems, rule, name=("Multiset" if commutative else "List") + f"@{max_len}",
                    show=lambda w: list(w))


def quotient_presheaf(G: TruncPresheaf, pairs, name: str = "") -> TruncPresheaf:
    """G modulo the congruence generated by ``pairs`` of same-stage elements."""
    nodes = [(n, x) for n in range(G.bound + 1) for x in G.elems[n]]
    edges = []
    for n, u, v in pairs:
        for m in range(G.bound + 1):
            for f in G.homs(n, m):
                edges.append(((m, G.act(f, u)), (m, G.act(f, v))))
    q = Quotient(nodes, edges)
    F = tabulate(G.cat, G.bound, lambda n: [x for (k, x) in q.reps if k == n],
                 lambda f, x: q.rep((f.cod, G.act(f, x)))[1], name=name or f"{G.name}/~", show=G.show)
    F.project = lambda n, x: q.rep((n, x))[1]
    return F


def sum_of_representables(cat: IndexCat, bound: int, ks) -> TruncPresheaf:
    reps = [representable(cat, bound, k) for k in ks]
    return tabulate(cat, bound, lambda n: [(i, t) for i, R in enumerate(reps) for t in R.elems[n]],
                    lambda f, e: (e[0], tuple(f(a) for a in e[1])),
                    name="+".join(f"y{k}" for k in ks), show=lambda e: f"{e[0]}:{list(e[1])}")


def subpresheaf(G: TruncPresheaf, generators, name: str = "") -> TruncPresheaf:
    """The subpresheaf generated by (stage, element) pairs."""
    keep = {n: set() for n in range(G.bound + 1)}
    for n, x in generators:
        for m in range(G.bound + 1):
            for f in G.homs(n, m):
                keep[m].add(G.act(f, x))
    return tabulate(G.cat, G.bound, lambda n: [x for x in G.elems[n] if x in keep[n]],
                    G._rule, name=name or f"sub({G.name})", show=G.show)


@dataclass(frozen=True)
class PresheafRecipe:
    """A finitely presented presheaf: representables 𝐲k for k in ``ks``, glued
    along ``pairs`` (stage, u, v) and optionally cut down to the subpresheaf
    generated by ``keep``.  The same recipe can be tabulated at any bound."""

    ks: tuple
    pairs: tuple = ()
    keep: tuple | None = None

    @property
    def name(self) -> str:
        label = f"rand({'+'.join(map(str, self.ks))};{len(self.pairs)})"
        return label + ("'" if self.keep else "")

    def build(self, cat: IndexCat, bound: int) -> TruncPresheaf:
        G = sum_of_representables(cat, bound, self.ks)
        pairs = [p for p in self.pairs if p[0] <= bound]
        F = quotient_presheaf(G, pairs, name=self.name)
        if self.keep and self.keep[0] <= bound:
            n, x = self.keep
            F = subpresheaf(F, [(n, F.project(n, x))], name=self.name)
        return F


def random_recipe(cat: IndexCat, bound: int, rng: random.Random, max_gen: int = 2,
                  max_pairs: int = 2) -> PresheafRecipe:
    ks = tuple(rng.randint(0, min(2, bound)) for _ in range(rng.randint(1, max_gen)))
    G = sum_of_representables(cat, bound, ks)
    pairs = []
    for _ in range(rng.randint(0, max_pairs)):
        n = rng.randint(0, bound)
        if len(G.elems[n]) >= 2:
            u, v = rng.sample(G.elems[n], 2)
            pairs.append((n, u, v))
    keep = None
    if rng.random() < 0.3:
        n = rng.randint(0, bound)
        if G.elems[n]:
            keep = (n, rng.choice(G.elems[n]))
    return PresheafRecipe(ks, tuple(pairs), keep)


def random_presheaf(cat: IndexCat, bound: int, rng: random.Random, max_gen: int = 2,
                    max_pairs: int = 2) -> TruncPresheaf:
    """A quotient of a small sum of representables by a few random relations,
    optionally cut down to a generated subpresheaf."""
    return random_recipe(cat, bound, rng, max_gen, max_pairs).build(cat, bound)
