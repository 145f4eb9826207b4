"""Truncated covariant presheaves, natural transformations and quotients."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..finset import IndexCat, Mor, identity
from ..order import okey


class TruncPresheaf:
    """A functor from ``cat`` to finite sets, tabulated on stages ``<= bound``.

    ``rule(f, x)`` computes the action of a map; tables are filled lazily and
    every result is checked to land in the codomain stage.
    """

    def __init__(self, cat: IndexCat, bound: int, elems: Mapping[int, Iterable],
                 rule: Callable[[Mor, Any], Any], name: str = "", show=None):
        self.cat = cat
        self.bound = bound
        self.name = name
        self.elems = {n: tuple(elems.get(n, ())) for n in range(bound + 1)}
        self._rule = rule
        self._index = {n: {x: i for i, x in enumerate(xs)} for n, xs in self.elems.items()}
        for n, xs in self.elems.items():
            if len(self._index[n]) != len(xs):
                raise ValueError(f"duplicate elements at stage {n} of {name}")
        self._tables: dict = {}
        self.show = show or str
        self.diagnostic: dict | None = None

    def __repr__(self):
        sizes = [len(self.elems[n]) for n in range(self.bound + 1)]
        return f"<{self.name or 'presheaf'} over {self.cat} sizes={sizes}>"

    def size(self, n: int) -> int:
        return len(self.elems[n])

    def sizes(self) -> list:
        return [len(self.elems[n]) for n in range(self.bound + 1)]

    def index(self, n: int, x) -> int:
        return self._index[n][x]

    def contains(self, n: int, x) -> bool:
        return x in self._index[n]

    def table(self, f: Mor) -> tuple:
        t = self._tables.get(f)
        if t is None:
            idx = self._index[f.cod]
            out = []
            for x in self.elems[f.dom]:
                y = self._rule(f, x)
                if y not in idx:
                    raise ValueError(f"{self.name}: {f} sends {x!r} outside stage {f.cod}: {y!r}")
                out.append(idx[y])
            t = self._tables[f] = tuple(out)
        return t

    def act(self, f: Mor, x):
        return self.elems[f.cod][self.table(f)[self._index[f.dom][x]]]

    def homs(self, m: int, n: int):
        return self.cat.homs(m, n)

    def all_homs(self):
        return self.cat.all_homs(self.bound)

    def generators(self):
        return self.cat.generators(self.bound)

    def functoriality_witness(self):
        """None when identities and all composites act correctly."""
        for n in range(self.bound + 1):
            if self.table(identity(n)) != tuple(range(self.size(n))):
                return {"identity": n}
        for f in self.all_homs():
            tf = self.table(f)
            for p in range(self.bound + 1):
                for g in self.cat.homs(f.cod, p):
                    tg = self.table(g)
                    tgf = self.table(g.after(f))
                    for i in range(len(tf)):
                        if tg[tf[i]] != tgf[i]:
                            return {"f": f.to_json(), "g": g.to_json(), "elem": self.elems[f.dom][i]}
        return None

    def to_json(self) -> dict:
        return {
            "cat": self.cat.name,
            "bound": self.bound,
            "stages": [{"n": n, "elems": [self.show(x) for x in self.elems[n]]}
                       for n in range(self.bound + 1)],
            "action": [{"mor": f.to_json(), "map": list(self.table(f))} for f in self.all_homs()],
        }


def tabulate(cat: IndexCat, bound: int, elems: Callable[[int], Iterable],
             rule: Callable[[Mor, Any], Any], name: str = "", show=None) -> TruncPresheaf:
    return TruncPresheaf(cat, bound, {n: list(elems(n)) for n in range(bound + 1)}, rule, name, show)


# -- quotients ---------------------------------------------------------------

class Quotient:
    """Classes of the equivalence relation generated by ``edges`` on ``nodes``.

    Each class is represented by its first node in the given order, so
    listing nodes by (stage, payload index) makes class ids deterministic.
    """

    def __init__(self, nodes: Sequence[Hashable], edges: Iterable[tuple]):
        self.nodes = list(nodes)
        self.pos = {v: i for i, v in enumerate(self.nodes)}
        if len(self.pos) != len(self.nodes):
            raise ValueError("duplicate nodes")
        us, vs = [], []
        for u, v in edges:
            us.append(self.pos[u])
            vs.append(self.pos[v])
        n = len(self.nodes)
        graph = coo_matrix((np.ones(len(us), dtype=np.int8), (us, vs)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        first: dict = {}
        for i, lab in enumerate(labels):
            first.setdefault(lab, i)
        self._rep = [self.nodes[first[lab]] for lab in labels]
        self.reps = [self.nodes[i] for i in sorted(first.values())]

    def __len__(self):
        return len(self.reps)

    def rep(self, node):
        return self._rep[self.pos[node]]

    def __contains__(self, node):
        return node in self.pos

    def classes(self) -> dict:
        out: dict = {}
        for v, r in zip(self.nodes, self._rep):
            out.setdefault(r, []).append(v)
        return out


def closure_partition(nodes: Sequence[Hashable], edges: Iterable[tuple]) -> dict:
    """Brute-force oracle: label propagation to a fixpoint (no union-find)."""
    label = {v: i for i, v in enumerate(nodes)}
    edges = list(edges)
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            m = min(label[u], label[v])
            if label[u] != m or label[v] != m:
                label[u] = label[v] = m
                changed = True
    return {v: nodes[label[v]] for v in nodes}


def coend(cat: IndexCat, bound: int, diag: Callable[[int], Iterable],
          off: Callable[[int, int], Iterable], lower: Callable[[Mor, Any], Any],
          upper: Callable[[Mor, Any], Any], maps: Iterable[Mor] | None = None) -> Quotient:
    """∐_i H(i,i) / ~ for a bifunctor H contravariant in its first slot.

    ``off(j, i)`` lists H(j, i); for f: i -> j, ``lower(f, h)`` ∈ H(i, i) and
    ``upper(f, h)`` ∈ H(j, j) are identified.
    """
    nodes = [(i, h) for i in range(bound + 1) for h in diag(i)]
    edges = []
    for f in (cat.all_homs(bound) if maps is None else maps):
        for h in off(f.cod, f.dom):
            edges.append(((f.dom, lower(f, h)), (f.cod, upper(f, h))))
    return Quotient(nodes, edges)


# -- natural transformations -------------------------------------------------

@dataclass
class NatTrans:
    source: TruncPresheaf
    target: TruncPresheaf
    comp: dict = field(repr=False)   # stage -> tuple of target elements

    @classmethod
    def from_function(cls, source, target, fn: Callable[[int, Any], Any]) -> "NatTrans":
        comp = {}
        for n in range(source.bound + 1):
            out = []
            for x in source.elems[n]:
                y = fn(n, x)
                if not target.contains(n, y):
                    raise ValueError(f"component at {n} sends {x!r} outside target: {y!r}")
                out.append(y)
            comp[n] = tuple(out)
        return cls(source, target, comp)

    def __call__(self, n: int, x):
        return self.comp[n][self.source.index(n, x)]

    def naturality_witness(self, maps: Iterable[Mor] | None = None):
        X, Y = self.source, self.target
        for f in (X.all_homs() if maps is None else maps):
            for x in X.elems[f.dom]:
                if self(f.cod, X.act(f, x)) != Y.act(f, self(f.dom, x)):
                    return {"mor": f.to_json(), "elem": X.show(x)}
        return None

    def is_natural(self) -> bool:
        return self.naturality_witness() is None

    def is_bijective(self) -> bool:
        return all(len(set(self.comp[n])) == self.target.size(n) == self.source.size(n)
                   for n in self.comp)

    def is_injective(self) -> bool:
        return all(len(set(self.comp[n])) == len(self.comp[n]) for n in self.comp)

    def then(self, other: "NatTrans") -> "NatTrans":
        return NatTrans(self.source, other.target,
                        {n: tuple(other(n, y) for y in self.comp[n]) for n in self.comp})

    def key(self):
        return tuple(self.target.index(n, y) for n in sorted(self.comp) for y in self.comp[n])

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.comp == other.comp

    def __hash__(self):
        return hash(self.key())


def identity_nat(X: TruncPresheaf) -> NatTrans:
    return NatTrans(X, X, {n: X.elems[n] for n in range(X.bound + 1)})


def nat_search(X: TruncPresheaf, Y: TruncPresheaf, injective: bool = False, limit: int | None = None):
    """Natural transformations X -> Y by backtracking.

    Choosing an image for one element forces the images of everything it
    reaches under the generators of the index category; conflicts prune.
    """
    gens = X.generators()
    out_edges: dict = {}
    for g in gens:
        tx = X.table(g)
        for i, j in enumerate(tx):
            out_edges.setdefault((g.dom, i), []).append((g, j))
    # also walk generators backwards so that choices propagate downwards
    order = [(n, i) for n in range(X.bound + 1) for i in range(X.size(n))]
    assign: dict = {}
    used = {n: set() for n in range(X.bound + 1)}

    def propagate(start, val):
        trail = []
        stack = [(start, val)]
        while stack:
            node, v = stack.pop()
            if node in assign:
                if assign[node] != v:
                    return False, trail
                continue
            n = node[0]
            if injective and v in used[n]:
                return False, trail
            assign[node] = v
            used[n].add(v)
            trail.append(node)
            for g, j in out_edges.get(node, ()):
                stack.append(((g.cod, j), Y.table(g)[v]))
        return True, trail

    def undo(trail):
        for node in trail:
            used[node[0]].discard(assign.pop(node))

    count = 0

    def search(k):
        nonlocal count
        while k < len(order) and order[k] in assign:
            k += 1
        if k == len(order):
            count += 1
            yield NatTrans(X, Y, {n: tuple(Y.elems[n][assign[(n, i)]] for i in range(X.size(n)))
                                  for n in range(X.bound + 1)})
            return
        node = order[k]
        for v in range(Y.size(node[0])):
            ok, trail = propagate(node, v)
            if ok:
                yield from search(k + 1)
            undo(trail)
            if limit is not None and count >= limit:
                return

    # completeness of propagation needs the all-maps check at the end
    for alpha in search(0):
        if alpha.naturality_witness(gens) is None:
            yield alpha


def nat_enumerate(X: TruncPresheaf, Y: TruncPresheaf, limit: int | None = None) -> list:
    return list(nat_search(X, Y, limit=limit))


def find_iso(X: TruncPresheaf, Y: TruncPresheaf) -> NatTrans | None:
    if X.sizes() != Y.sizes():
        return None
    for alpha in nat_search(X, Y, injective=True, limit=1):
        return alpha
    return None


def representable(cat: IndexCat, bound: int, k: int) -> TruncPresheaf:
    """𝐲k = cat(k, -); elements are map tables."""
    return tabulate(cat, bound, lambda n: [f.table for f in cat.homs(k, n)],
                    lambda f, t: tuple(f(i) for i in t), name=f"y{k}",
                    show=lambda t: list(t))


def terminal(cat: IndexCat, bound: int) -> TruncPresheaf:
    return tabulate(cat, bound, lambda n: [()], lambda f, x: x, name="1")


def constant(cat: IndexCat, bound: int, values: Sequence) -> TruncPresheaf:
    return tabulate(cat, bound, lambda n: list(values), lambda f, x: x, name=f"const{len(values)}")


def coproduct(X: TruncPresheaf, Y: TruncPresheaf) -> TruncPresheaf:
    return tabulate(X.cat, X.bound,
                    lambda n: [(0, x) for x in X.elems[n]] + [(1, y) for y in Y.elems[n]],
                    lambda f, e: (0, X.act(f, e[1])) if e[0] == 0 else (1, Y.act(f, e[1])),
                    name=f"({X.name}+{Y.name})")


def product_psh(X: TruncPresheaf, Y: TruncPresheaf) -> TruncPresheaf:
    return tabulate(X.cat, X.bound, lambda n: list(product(X.elems[n], Y.elems[n])),
                    lambda f, e: (X.act(f, e[0]), Y.act(f, e[1])), name=f"({X.name}x{Y.name})")


def restrict_cat(X: TruncPresheaf, sub: IndexCat) -> TruncPresheaf:
    """Precomposition with the inclusion of a subcategory."""
    return TruncPresheaf(sub, X.bound, X.elems, X._rule, name=X.name, show=X.show)


def sorted_elems(xs: Iterable) -> list:
    return sorted(xs, key=okey)
