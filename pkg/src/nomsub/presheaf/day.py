"""Day convolutions.

The k-ary Day sum ⊕_i X_i(C) = ∫^{m_1..m_k} Ctx(Σ m_i, C) × ∏ X_i(m_i) is
computed on representatives whose restriction to every summand is a
monotone injection (a subset of C).  Image factorisation inside the four
contextual categories sends every representative to such a normal form, so
inner stages never exceed C and the sum needs no inner truncation; the
remaining relation is generated by monotone injections of the category.

The Day product for × has no such normal form and is computed as a
truncated coend with inner stages bounded by ``inner``.
"""
from __future__ import annotations

import warnings
from itertools import combinations, product
from typing import Callable, Sequence

from ..errors import TruncationUnstable
from ..finset import IndexCat, Mor, identity, times
from .core import Quotient, TruncPresheaf


def subsets(C: int, max_size: int) -> list:
    return [s for k in range(min(C, max_size) + 1) for s in combinations(range(C), k)]


def block_map(cat_blocks: Sequence[Sequence[int]], C: int) -> Mor:
    table = tuple(t for s in cat_blocks for t in s)
    return Mor(len(table), C, table)


def monotone_injections(cat: IndexCat, m: int) -> list:
    """Non-identity monotone injections into m that belong to ``cat``."""
    out = []
    for k in range(m):
        for s in combinations(range(m), k):
            f = Mor(k, m, s)
            if f in cat:
                out.append(f)
    return out


def normalize_block(X: TruncPresheaf, table: Sequence[int], t):
    """(j, t) with j: m -> C arbitrary becomes (image of j, e·t) where j = incl∘e."""
    img = tuple(sorted(set(table)))
    if img == tuple(table):
        return img, t
    pos = {a: i for i, a in enumerate(img)}
    e = Mor(len(table), len(img), tuple(pos[a] for a in table))
    return img, X.act(e, t)


class DaySum(TruncPresheaf):
    """⊕ of the given factors; elements are tuples of (subset, element) blocks."""

    def __init__(self, factors: Sequence[TruncPresheaf], inner: int | None = None, name: str | None = None,
                 cat: IndexCat | None = None, bound: int | None = None):
        cat = cat or factors[0].cat
        bound = factors[0].bound if bound is None else bound
        self.factors = tuple(factors)
        self.inner = bound if inner is None else inner
        self.quotients = {}
        preimages = {}
        if len(self.factors) > 1 and cat.name == "F":
            # every block map is allowed, so blocks move independently and
            # the quotient is the product of the one-factor quotients
            singles = [DaySum([X], self.inner, cat=cat, bound=bound) for X in self.factors]
            self.quotients = {C: ProductQuotient([q.quotients[C] for q in singles]) for C in range(bound + 1)}
        for C in range(bound + 1 if not self.quotients else 0):
            options = []
            for X in self.factors:
                options.append([(s, t) for s in subsets(C, self.inner) for t in X.elems[len(s)]])
            nodes = [blocks for blocks in product(*options) if block_map([b[0] for b in blocks], C) in cat]
            node_set = set(nodes)
            edges = []
            for node in nodes:
                for i, (s, t) in enumerate(node):
                    X = self.factors[i]
                    for g in monotone_injections(cat, len(s)):
                        key = (id(X), g)
                        if key not in preimages:
                            pre = {}
                            for u in X.elems[g.dom]:
                                pre.setdefault(X.act(g, u), []).append(u)
                            preimages[key] = pre
                        s2 = tuple(s[k] for k in g.table)
                        for u in preimages[key].get(t, ()):
                            other = node[:i] + ((s2, u),) + node[i + 1:]
                            if other in node_set:
                                edges.append((other, node))
            self.quotients[C] = Quotient(nodes, edges)
        label = name or "(" + " ⊕ ".join(X.name for X in self.factors) + ")"
        super().__init__(cat, bound, {C: q.reps for C, q in self.quotients.items()},
                         self._rule, name=label, show=show_blocks)

    def lookup(self, C: int, blocks) -> tuple:
        return self.quotients[C].rep(tuple(blocks))

    def normalize(self, C: int, raw) -> tuple:
        """Class of a representative whose block maps are arbitrary tables into C."""
        return self.lookup(C, tuple(normalize_block(X, table, t)
                                    for X, (table, t) in zip(self.factors, raw)))

    def _rule(self, f: Mor, blocks):
        return self.normalize(f.cod, [(tuple(f(a) for a in s), t) for s, t in blocks])


class ProductQuotient:
    """Componentwise classes of tuples; the representative of a tuple is the
    tuple of representatives, which is also the first member in product order."""

    def __init__(self, parts: Sequence[Quotient]):
        self.parts = list(parts)
        self.reps = [tuple(r[0] for r in combo) for combo in product(*(q.reps for q in self.parts))]

    def __len__(self):
        return len(self.reps)

    def rep(self, node):
        return tuple(q.rep((b,))[0] for q, b in zip(self.parts, node))

    def __contains__(self, node):
        return len(node) == len(self.parts) and all((b,) in q for q, b in zip(self.parts, node))

    def classes(self) -> dict:
        out: dict = {}
        for combo in product(*(q.classes().items() for q in self.parts)):
            rep = tuple(r[0] for r, _ in combo)
            out[rep] = [tuple(m[0] for m in ms) for ms in product(*(members for _, members in combo))]
        return out


def show_blocks(blocks) -> str:
    return "[" + ", ".join(f"{list(s)}:{t}" for s, t in blocks) + "]"


def day_plus(X: TruncPresheaf, Y: TruncPresheaf) -> DaySum:
    return DaySum([X, Y])


class DayTimes(TruncPresheaf):
    """X ⊗ Y(C) = ∫^{m,n} Ctx(m × n, C) × X(m) × Y(n), inner stages <= ``inner``.

    Elements are (m, n, table of j, x, y); the pair (a, b) of m × n is
    encoded as a * n + b.
    """

    def __init__(self, X: TruncPresheaf, Y: TruncPresheaf, inner: int | None = None,
                 outer: int | None = None):
        cat, bound = X.cat, X.bound if outer is None else outer
        self.X, self.Y = X, Y
        self.inner = bound if inner is None else inner
        self.quotients = {}
        gens = cat.generators(self.inner)
        for C in range(bound + 1):
            nodes = []
            for m in range(self.inner + 1):
                for n in range(self.inner + 1):
                    for j in cat.homs(m * n, C):
                        for x in X.elems[m]:
                            for y in Y.elems[n]:
                                nodes.append((m, n, j.table, x, y))
            node_set = set(nodes)
            edges = []
            for g in gens:
                # (j∘(g×id), x', y) ~ (j, g·x', y) and symmetrically in the second slot
                m1, m2 = g.dom, g.cod
                for n in range(self.inner + 1):
                    gx = times(g, identity(n))
                    gy = times(identity(n), g)
                    for j in cat.homs(m2 * n, C):
                        jg = j.after(gx).table
                        for x in X.elems[m1]:
                            for y in Y.elems[n]:
                                a = (m1, n, jg, x, y)
                                b = (m2, n, j.table, X.act(g, x), y)
                                if a in node_set and b in node_set:
                                    edges.append((a, b))
                    for j in cat.homs(n * m2, C):
                        jg = j.after(gy).table
                        for x in X.elems[n]:
                            for y in Y.elems[m1]:
                                a = (n, m1, jg, x, y)
                                b = (n, m2, j.table, x, Y.act(g, y))
                                if a in node_set and b in node_set:
                                    edges.append((a, b))
            self.quotients[C] = Quotient(nodes, edges)
        super().__init__(cat, bound, {C: q.reps for C, q in self.quotients.items()}, self._rule,
                         name=f"({X.name} ⊗ {Y.name})",
                         show=lambda e: f"κ{e[0]},{e[1]}({list(e[2])}, {e[3]}, {e[4]})")

    def lookup(self, C: int, node) -> tuple:
        return self.quotients[C].rep(node)

    def _rule(self, f: Mor, e):
        m, n, j, x, y = e
        return self.lookup(f.cod, (m, n, tuple(f(a) for a in j), x, y))


def day_times(X: TruncPresheaf, Y: TruncPresheaf, inner: int | None = None,
              outer: int | None = None) -> DayTimes:
    return DayTimes(X, Y, inner, outer)


def stabilization(build: Callable[[int], TruncPresheaf], inner: int, warn: bool = True) -> dict:
    """Does enlarging the inner stages from ``inner`` to ``inner + 1`` change any
    class count?  ``build(k)`` must give the same outer bound for both k, so
    the factors have to be tabulated to ``inner + 1``."""
    lo, hi = build(inner), build(inner + 1)
    unstable = [n for n in range(lo.bound + 1) if hi.size(n) != lo.size(n)]
    diag = {"inner": inner, "counts": lo.sizes(), "counts_larger_inner": hi.sizes(),
            "stable": not unstable, "unstable_stages": unstable}
    lo.diagnostic = diag
    if unstable and warn:
        warnings.warn(f"{lo.name} over {lo.cat}: class counts change at stages {unstable}",
                      TruncationUnstable, stacklevel=2)
    return diag
