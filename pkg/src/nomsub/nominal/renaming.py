"""Renaming sets: supports, relevance, the tensor X ◇ Y over renamings, and
the two ways relevance fails (free groups and internal homs).

Renaming sets reuse NomSet with ``renaming_closed`` set; ``act`` then
accepts arbitrary finite renamings.
"""
from __future__ import annotations

from itertools import combinations, product

from ..atoms import Renaming, all_renamings, fresh
from ..order import okey
from ..presheaf.core import closure_partition
from ..presheaf.corpus import reduce_word, show_word
from .core import Discrete, NomSet, cached_stages, corpus, support
from .hom import HomSet, ReducibleMap, hom_support
from .tensor import Tensor, class_eq


def ren_support(X: NomSet, x) -> frozenset:
    """a ∈ supp x iff [a ↦ b]·x ≠ x for b fresh."""
    over = X.over_support(x)
    b = fresh(over)[0]
    return frozenset(a for a in over if X.act(Renaming.of({a: b}), x) != x)


def ren_supports(X: NomSet, x, S, pool) -> bool:
    """Every renaming of ``pool`` fixing S pointwise fixes x."""
    S = set(S)
    for rho in all_renamings(pool):
        if all(rho(a) == a for a in S) and X.act(rho, x) != x:
            return False
    return True


def ren_least_support_oracle(X: NomSet, x, extra: int = 1) -> frozenset:
    over = sorted(X.over_support(x))
    pool = over + fresh(over, extra)
    for k in range(len(over) + 1):
        for S in combinations(over, k):
            if ren_supports(X, x, S, pool):
                return frozenset(S)
    return frozenset(over)


def relevance_report(X: NomSet, n: int = 3) -> dict:
    from .bridges import relevance_witness
    w = relevance_witness(X, n)
    return {"set": X.name, "stage": n, "relevant": w is None, "witness": w}


@cached_stages
class FreeGroup(NomSet):
    """Reduced words of length <= max_len over atoms; renamings act letterwise
    and reduce, so supports can shrink."""

    def __init__(self, max_len: int = 2):
        self.max_len = self.max_support = max_len
        self.name = f"FreeGroup@{max_len}"

    def act(self, rho, w):
        return reduce_word([(rho(a), s) for a, s in w])

    def over_support(self, w):
        return frozenset(a for a, _ in w)

    def stage_elements(self, n):
        letters = [(a, s) for a in range(n) for s in (1, -1)]
        out = set()
        for k in range(self.max_len + 1):
            for w in product(letters, repeat=k):
                r = reduce_word(w)
                if len(r) == k:
                    out.add(r)
        return list(out)

    def show(self, w):
        return show_word(w)


def ren_corpus() -> dict:
    """Renaming sets by name: corpus members closed under renamings, plus the free group."""
    out = {k: v for k, v in corpus().items() if v.renaming_closed}
    out["FreeGroup@2"] = FreeGroup(2)
    return out


class RenTensor(Tensor):
    """X ◇ Y for renaming sets: γ: supp x -> Y arbitrary, modulo
    (σ·x, γ|supp σ·x) ~ (x, γσ).

    Normal form: while two support atoms carry equal values, merge them
    with [b ↦ a] and restrict γ to the new support; then canonicalise over
    permutations as for nominal sets.
    """

    def __init__(self, X: NomSet, Y: NomSet):
        super().__init__(X, Y, "cap")
        self.kind = "ren"
        self.name = f"({X.name} ◇ren {Y.name})"
        self.renaming_closed = True

    def support_of(self, x):
        return ren_support(self.X, x)

    def make(self, x, gamma):
        from ..errors import DomainMismatch
        s = ren_support(self.X, x)
        if set(gamma) != s:
            raise DomainMismatch(f"substitution defined on {sorted(gamma)}, support is {sorted(s)}")
        gamma = dict(gamma)
        while True:
            merge = None
            for a, b in combinations(sorted(gamma), 2):
                if gamma[a] == gamma[b]:
                    merge = (a, b)
                    break
            if merge is None:
                break
            a, b = merge
            x = self.X.act(Renaming.of({b: a}), x)
            s = ren_support(self.X, x)
            gamma = {c: gamma[c] for c in s}
        xs, inv = self.shape(x)
        return self.canon(xs, tuple(gamma[inv[i]] for i in range(len(inv))))

    def act(self, rho, c):
        xs, g = c
        return self.make(xs, {i: self.Y.act(rho, y) for i, y in enumerate(g)})

    def class_support(self, c) -> frozenset:
        return frozenset().union(*(ren_support(self.Y, y) for y in c[1]))

    def stage_elements(self, n):
        memo = self.__dict__.setdefault("_stage_memo", {})
        if n in memo:
            return memo[n]
        ys = self.Y.stage_elements(n)
        out = set()
        for xs in self.all_shapes():
            k = len(support(self.X, xs))
            for idx in combinations(range(len(ys)), k):
                for order in _orderings(idx):
                    out.add(self.canon(xs, tuple(ys[i] for i in order)))
        memo[n] = sorted(out, key=okey)
        return memo[n]


def _orderings(idx):
    from itertools import permutations
    return permutations(idx)


def ren_raw_pairs(T: RenTensor, n: int, pool: int | None = None) -> list:
    pool = T.X.max_support if pool is None else pool
    ys = T.Y.stage_elements(n)
    out = []
    for x in T.X.stage_elements(pool):
        s = sorted(ren_support(T.X, x))
        for vals in product(ys, repeat=len(s)):
            out.append((x, tuple(zip(s, vals))))
    return out


def ren_closure_oracle(T: RenTensor, n: int, pool: int | None = None) -> dict:
    """Classes of (σ·x, γ|supp σ·x) ~ (x, γσ), σ over all renamings of the pool."""
    pool = T.X.max_support if pool is None else pool
    nodes = ren_raw_pairs(T, n, pool)
    node_set = set(nodes)
    ys = T.Y.stage_elements(n)
    rens = all_renamings(range(pool))
    edges = []
    for x in T.X.stage_elements(pool):
        s = sorted(ren_support(T.X, x))
        for sigma in rens:
            sx = T.X.act(sigma, x)
            ssx = sorted(ren_support(T.X, sx))
            dom = sorted({sigma(a) for a in s})
            for vals in product(ys, repeat=len(dom)):
                gam = dict(zip(dom, vals))
                left = (sx, tuple((a, gam[a]) for a in ssx))
                right = (x, tuple((a, gam[sigma(a)]) for a in s))
                if left in node_set and right in node_set:
                    edges.append((left, right))
    return closure_partition(nodes, edges)


def ren_class_eq(T: RenTensor, raw1, raw2) -> bool:
    """Merge equal values in both representatives, then the one-step π-search."""
    def collapse(raw):
        x, g = raw
        g = dict(g)
        while True:
            pair = next(((a, b) for a, b in combinations(sorted(g), 2) if g[a] == g[b]), None)
            if pair is None:
                return x, g
            a, b = pair
            x = T.X.act(Renaming.of({b: a}), x)
            g = {c: g[c] for c in ren_support(T.X, x)}
    return class_eq(T, collapse(raw1), collapse(raw2))


def ren_oracle_report(T: RenTensor, n: int, pool: int | None = None) -> dict:
    part = ren_closure_oracle(T, n, pool)
    nodes = list(part)
    raws = [(x, dict(g)) for x, g in nodes]
    canon = [T.make(x, g) for x, g in raws]
    pairs = mism = canon_mism = 0
    witness = None
    for i in range(len(nodes)):
        for j in range(i, len(nodes)):
            pairs += 1
            same = part[nodes[i]] == part[nodes[j]]
            if ren_class_eq(T, raws[i], raws[j]) != same:
                mism += 1
                witness = witness or {"left": repr(nodes[i]), "right": repr(nodes[j]), "oracle": same}
            if (canon[i] == canon[j]) != same:
                canon_mism += 1
    return {"tensor": T.name, "stage": n, "raw": len(nodes), "classes": len(set(part.values())),
            "enumerated": len(T.stage_elements(n)), "pairs": pairs, "search_mismatches": mism,
            "canonical_mismatches": canon_mism, "witness": witness}


# -- counterexamples -----------------------------------------------------------------

def free_group_counterexample() -> dict:
    """ρ = [a ↦ c, b ↦ c] sends ab⁻¹ to cc⁻¹ = 1, dropping the whole support."""
    G = FreeGroup(2)
    a, b, c = 0, 1, 2
    x = ((a, 1), (b, -1))
    rho = Renaming.of({a: c, b: c})
    rx = G.act(rho, x)
    supp_x, supp_rx = ren_support(G, x), ren_support(G, rx)
    image = frozenset(rho(t) for t in supp_x)
    return {"name": "free-group-relevance",
            "claim_ref": "renamings need not map least supports onto least supports",
            "witness": {"x": show_word(x), "rho": str(rho), "rho_x": show_word(rx),
                        "supp_x": sorted(supp_x), "supp_rho_x": sorted(supp_rx),
                        "rho_supp_x": sorted(image)},
            "verified": rx == () and supp_x == {a, b} and supp_rx == frozenset() and image == {c}}


def hom_counterexample() -> dict:
    """f(γ) = 1 iff γ(a) = γ(b) on 2 ⊸ 2; ρ·f is constant 1, so supp(ρ·f) = ∅ ⊊ ρ[supp f]."""
    D = Discrete((0, 1), name="2")
    H = HomSet(D, D, fresh=False)
    a, b, c = 0, 1, 2
    f = ReducibleMap((a, b), lambda t: int(t[0] == t[1]), "eq")
    rho = Renaming.of({a: c, b: c})
    rf = f.act(rho)
    supp_f, supp_rf = hom_support(H, f), hom_support(H, rf)
    values = sorted({rf(g) for g in H.family(rf.positions)})
    image = frozenset(rho(t) for t in supp_f)
    return {"name": "hom-relevance",
            "claim_ref": "the internal hom of relevance sets need not be a relevance set",
            "witness": {"supp_f": sorted(supp_f), "rho": str(rho), "values_of_rho_f": values,
                        "supp_rho_f": sorted(supp_rf), "rho_supp_f": sorted(image)},
            "verified": supp_f == {a, b} and values == [1] and supp_rf == frozenset() and image == {c}}


def counterexamples() -> list:
    return [free_group_counterexample(), hom_counterexample()]
