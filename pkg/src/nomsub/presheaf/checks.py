"""Pullback-preservation and sheaf conditions for truncated presheaves.

Subsets S ⊆ C of a stage are read as the stage |S| included monotonically,
so F(S) means F(|S|).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable

from ..finset import Mor, inclusion, preimage, subset_inclusion
from .core import TruncPresheaf


def _subsets(n: int):
    return [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]


def _inside(small: frozenset, big: frozenset) -> Mor:
    """The monotone map |small| -> |big| induced by small ⊆ big."""
    pos = {a: i for i, a in enumerate(sorted(big))}
    return Mor(len(small), len(big), tuple(pos[a] for a in sorted(small)))


def _square_is_pullback(F, p_to_a: Mor, p_to_b: Mor, a_to_c: Mor, b_to_c: Mor):
    A, B = a_to_c.dom, b_to_c.dom
    ta, tb = F.table(a_to_c), F.table(b_to_c)
    fiber = {(i, j) for i in range(F.size(A)) for j in range(F.size(B)) if ta[i] == tb[j]}
    pa, pb = F.table(p_to_a), F.table(p_to_b)
    image = list(zip(pa, pb))
    if len(set(image)) != len(image):
        return {"reason": "not injective"}
    if set(image) != fiber:
        missing = sorted(fiber - set(image))[0]
        return {"reason": "not surjective",
                "pair": [F.show(F.elems[A][missing[0]]), F.show(F.elems[B][missing[1]])]}
    return None


def intersections_witness(F: TruncPresheaf, max_stage: int | None = None):
    """None when F sends every intersection square S∩T ⊆ S, T ⊆ C to a pullback."""
    top = F.bound if max_stage is None else max_stage
    for C in range(top + 1):
        full = frozenset(range(C))
        subs = _subsets(C)
        for S, T in combinations(subs, 2):
            I = S & T
            w = _square_is_pullback(F, _inside(I, S), _inside(I, T), _inside(S, full), _inside(T, full))
            if w:
                return {"stage": C, "S": sorted(S), "T": sorted(T), **w}
    return None


def preimages_witness(F: TruncPresheaf, max_stage: int | None = None):
    """None when F sends every preimage square f^{-1}(U) -> U along f to a pullback."""
    top = F.bound if max_stage is None else max_stage
    for A in range(top + 1):
        for B in range(top + 1):
            for f in F.homs(A, B):
                for U in _subsets(B):
                    P = preimage(f, U)
                    p_to_a = subset_inclusion(P, A)
                    pos = {u: i for i, u in enumerate(sorted(U))}
                    p_to_u = Mor(len(P), len(U), tuple(pos[f(x)] for x in sorted(P)))
                    w = _square_is_pullback(F, p_to_a, p_to_u, f, subset_inclusion(U, B))
                    if w:
                        return {"f": f.to_json(), "U": sorted(U), **w}
    return None


def _matching_single(F: TruncPresheaf, f: Mor, targets) -> list:
    """Elements y ∈ F(cod f) with g·y = k·y whenever g∘f = k∘f, g and k
    ranging over maps into the given target stages."""
    B = f.cod
    groups = {}
    for E in targets:
        for g in F.homs(B, E):
            groups.setdefault((E, g.after(f).table), []).append(F.table(g))
    return [y for i, y in enumerate(F.elems[B])
            if all(len({t[i] for t in ts}) == 1 for ts in groups.values())]


def ictx_sheaf_report(F: TruncPresheaf, cover_bound: int | None = None) -> dict:
    """Matching families for the singleton inclusion covers {A ⊆ B}, B <= cover_bound.

    y ∈ F(B) matches when g·y = k·y for all g, k: B -> E agreeing on A.  Over
    injections any such pair factors through the union of the two images, of
    size at most 2|B| - |A|, so targets up to that size decide the cover
    exactly; covers whose target exceeds F.bound are skipped (and not listed
    as checked).  Over other categories all targets up to F.bound are used.
    """
    top = F.bound if cover_bound is None else cover_bound
    checked, sheaf_fail, sep_fail = [], None, None
    for B in range(top + 1):
        for A in range(B + 1):
            f = inclusion(A, B)
            if F.cat.name == "I":
                E = 2 * B - A
                if E > F.bound:
                    continue
                targets = range(E + 1)
            else:
                targets = range(F.bound + 1)
            checked.append((A, B))
            pre = {}
            for z in F.elems[A]:
                pre.setdefault(F.act(f, z), []).append(z)
            for y in _matching_single(F, f, targets):
                amal = pre.get(y, [])
                if len(amal) > 1 and sep_fail is None:
                    sep_fail = {"A": A, "B": B, "elem": F.show(y),
                                "amalgamations": [F.show(z) for z in amal]}
                if len(amal) != 1 and sheaf_fail is None:
                    sheaf_fail = {"A": A, "B": B, "elem": F.show(y), "amalgamations": len(amal)}
    return {"checked": checked, "sheaf": sheaf_fail is None, "separated": sep_fail is None,
            "sheaf_witness": sheaf_fail, "separated_witness": sep_fail}


# -- presheaves on the poset of subsets ---------------------------------------

@dataclass
class SubsetPresheaf:
    """A functor from the subsets of ``ambient`` under inclusion to finite sets."""

    ambient: frozenset
    elems: dict                                   # subset -> tuple
    push: Callable = field(repr=False)           # (S, T, x) -> element of F(T), S ⊆ T
    name: str = ""

    def act(self, S, T, x):
        return self.push(S, T, x)

    def subsets(self):
        return sorted(self.elems, key=lambda s: (len(s), sorted(s)))

    def functoriality_witness(self):
        subs = self.subsets()
        for S in subs:
            for x in self.elems[S]:
                if self.push(S, S, x) != x:
                    return {"identity": sorted(S)}
        for S, T, U in product(subs, repeat=3):
            if S <= T <= U:
                for x in self.elems[S]:
                    if self.push(T, U, self.push(S, T, x)) != self.push(S, U, x):
                        return {"S": sorted(S), "T": sorted(T), "U": sorted(U)}
        return None


def restrict_to_subsets(F: TruncPresheaf, ambient_size: int | None = None) -> SubsetPresheaf:
    n = F.bound if ambient_size is None else ambient_size
    amb = frozenset(range(n))
    return SubsetPresheaf(amb, {S: F.elems[len(S)] for S in _subsets(n)},
                          lambda S, T, x: F.act(_inside(S, T), x), name=F.name)


def poset_intersections_witness(P: SubsetPresheaf):
    subs = P.subsets()
    for S, T in product(subs, repeat=2):
        for C in subs:
            if not (S <= C and T <= C):
                continue
            I = S & T
            fiber = {(x, y) for x in P.elems[S] for y in P.elems[T] if P.act(S, C, x) == P.act(T, C, y)}
            image = [(P.act(I, S, z), P.act(I, T, z)) for z in P.elems[I]]
            if len(set(image)) != len(image) or set(image) != fiber:
                return {"S": sorted(S), "T": sorted(T), "C": sorted(C)}
    return None


def poset_separated_witness(P: SubsetPresheaf):
    for S in P.subsets():
        for T in P.subsets():
            if S <= T:
                imgs = [P.act(S, T, x) for x in P.elems[S]]
                if len(set(imgs)) != len(imgs):
                    return {"S": sorted(S), "T": sorted(T)}
    return None


def poset_o_sheaf_witness(P: SubsetPresheaf):
    from ..finset import o_covers
    subs = P.subsets()
    for A in subs:
        for cover in o_covers(A, P.ambient):
            for fam in product(*(P.elems[B] for B in cover)):
                ok = True
                for (Bi, xi), (Bj, xj) in combinations(list(zip(cover, fam)), 2):
                    for E in subs:
                        if Bi <= E and Bj <= E and P.act(Bi, E, xi) != P.act(Bj, E, xj):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                amal = [z for z in P.elems[A] if all(P.act(A, B, z) == x for B, x in zip(cover, fam))]
                if len(amal) != 1:
                    return {"A": sorted(A), "cover": [sorted(B) for B in cover], "amalgamations": len(amal)}
    return None


def random_subset_presheaf(ambient_size: int, rng, max_gen: int = 3, max_pairs: int = 2) -> SubsetPresheaf:
    """Quotient of a sum of representables 𝐲S (one point over each T ⊇ S)."""
    from .core import Quotient
    amb = frozenset(range(ambient_size))
    subs = _subsets(ambient_size)
    gens = [rng.choice(subs) for _ in range(rng.randint(1, max_gen))]
    elems = {T: [i for i, S in enumerate(gens) if S <= T] for T in subs}
    nodes = [(T, i) for T in subs for i in elems[T]]
    edges = []
    for _ in range(rng.randint(0, max_pairs)):
        T = rng.choice(subs)
        if len(elems[T]) >= 2:
            i, j = rng.sample(elems[T], 2)
            for U in subs:
                if T <= U:
                    edges.append(((U, i), (U, j)))
    q = Quotient(nodes, edges)
    return SubsetPresheaf(amb, {T: tuple(i for (U, i) in q.reps if U == T) for T in subs},
                          lambda S, T, i: q.rep((T, i))[1], name=f"rand{gens}")


def ictx_agreement(recipe, cat, bound: int = 3, cover_bound: int | None = None) -> dict:
    """Intersection-preservation against the ℐ-sheaf condition for a presheaf
    presented at stages <= bound.

    Covers {A ⊆ B} run to B <= cover_bound (default bound + 1) and both
    verdicts read the same tabulation up to 2·cover_bound, where those covers
    are decided exactly.  The extra stage matters: a square that fails at
    stage n can surface as an unamalgamable matching family only at n + 1,
    once relations among the generators have propagated.
    """
    cover_bound = bound + 1 if cover_bound is None else cover_bound
    F = recipe.build(cat, 2 * cover_bound)
    w = intersections_witness(F)
    rep = ictx_sheaf_report(F, cover_bound)
    return {"name": recipe.name, "intersections": w is None, "sheaf": rep["sheaf"],
            "agree": (w is None) == rep["sheaf"], "intersection_witness": w,
            "sheaf_witness": rep["sheaf_witness"], "cover_bound": cover_bound}


def subset_agreement(P: SubsetPresheaf) -> dict:
    ip = poset_intersections_witness(P) is None
    o = poset_o_sheaf_witness(P) is None
    sep = poset_separated_witness(P) is None
    return {"name": P.name, "intersections": ip, "o_sheaf": o, "separated": sep,
            "agree": ip == (o and sep)}
