"""The substitution tensor X ◇ Y on nominal sets and its variants.

A class x[γ] is stored canonically as (x', g): x' is the orbit canonical
form of x (support {0..k-1}) and g[i] = γ(β⁻¹ i) for a relabelling β with
β·x = x', minimised over the stabiliser of x'.  The action moves g only.

kind "sub"      γ pairwise fresh (X ◇ Y)
kind "cap"      γ unrestricted (the captureful X ◇̂ Y)
kind "uniform"  pairwise fresh and γ[supp x] inside one orbit (X ⊗ Y as a subset of X ◇ Y)
"""
from __future__ import annotations

import random
from itertools import permutations, product
from typing import Callable, Mapping

from ..atoms import Renaming, extend_bijection
from ..errors import DomainMismatch, FreshnessViolation
from ..order import okey
from ..presheaf.core import closure_partition
from .core import NomSet, orbit_canon, shapes, support

KINDS = ("sub", "cap", "uniform")
_SYMBOL = {"sub": "◇", "cap": "◇̂", "uniform": "⊗"}


def move_to(Y: NomSet, y, start: int):
    """y with its support moved order-preservingly onto start, start+1, ..."""
    s = sorted(support(Y, y))
    return Y.act(extend_bijection({a: start + i for i, a in enumerate(s)}), y)


def random_element(X: NomSet, rng: random.Random):
    if hasattr(X, "sample"):
        return X.sample(rng)
    m = X.max_support if X.max_support is not None else 2
    return rng.choice(X.stage_elements(m))


class Tensor(NomSet):
    def __init__(self, X: NomSet, Y: NomSet, kind: str = "sub"):
        if kind not in KINDS:
            raise ValueError(f"unknown tensor kind {kind!r}")
        self.X, self.Y, self.kind = X, Y, kind
        self.name = f"({X.name} {_SYMBOL[kind]} {Y.name})"
        mx, my = X.max_support, Y.max_support
        self.max_support = None if None in (mx, my) else mx * my
        self.renaming_closed = False
        self._shape_memo, self._stab_memo = {}, {}

    # -- canonical form ---------------------------------------------------------

    def shape(self, x):
        """(x', inv) with x' the orbit canonical form and inv[i] the atom sent to i."""
        hit = self._shape_memo.get(x)
        if hit is None:
            s = sorted(support(self.X, x))
            best = None
            for img in permutations(range(len(s))):
                val = self.X.act(extend_bijection(dict(zip(s, img))), x)
                if best is None or okey(val) < okey(best[0]):
                    best = (val, {i: a for a, i in zip(s, img)})
            hit = self._shape_memo[x] = best
        return hit

    def stabilizer(self, xs, k: int) -> list:
        key = (xs, k)
        if key not in self._stab_memo:
            self._stab_memo[key] = [sig for sig in permutations(range(k))
                                    if self.X.act(extend_bijection(dict(enumerate(sig))), xs) == xs]
        return self._stab_memo[key]

    def canon(self, xs, g: tuple) -> tuple:
        best = min((tuple(g[s] for s in sig) for sig in self.stabilizer(xs, len(g))), key=okey)
        return (xs, best)

    def violation(self, values: list):
        """Why a family of substituted values is not allowed, or None."""
        if self.kind == "cap":
            return None
        seen = {}
        for i, y in enumerate(values):
            for a in support(self.Y, y):
                if a in seen:
                    return {"reason": "values share an atom", "atom": a, "positions": [seen[a], i]}
                seen[a] = i
        if self.kind == "uniform" and len({orbit_canon(self.Y, y) for y in values}) > 1:
            return {"reason": "values lie in several orbits"}
        return None

    def make(self, x, gamma: Mapping[int, object]) -> tuple:
        """The class x[γ]; γ must be defined exactly on supp x."""
        s = support(self.X, x)
        if set(gamma) != s:
            raise DomainMismatch(f"substitution defined on {sorted(gamma)}, support is {sorted(s)}")
        w = self.violation([gamma[a] for a in sorted(s)])
        if w is not None:
            raise FreshnessViolation(w["reason"])
        xs, inv = self.shape(x)
        return self.canon(xs, tuple(gamma[inv[i]] for i in range(len(inv))))

    def parts(self, c):
        """(x', γ) with γ as a dict on supp x'."""
        return c[0], dict(enumerate(c[1]))

    # -- nominal structure -------------------------------------------------------

    def act(self, rho, c):
        xs, g = c
        return self.canon(xs, tuple(self.Y.act(rho, y) for y in g))

    def over_support(self, c):
        return frozenset().union(*(self.Y.over_support(y) for y in c[1]))

    def class_support(self, c) -> frozenset:
        """⋃_a supp γ(a)."""
        return frozenset().union(*(support(self.Y, y) for y in c[1]))

    def all_shapes(self) -> list:
        top = self.X.max_support if self.X.max_support is not None else 2
        return [xs for k in range(top + 1) for xs in shapes(self.X, k)]

    def stage_elements(self, n: int) -> list:
        memo = self.__dict__.setdefault("_stage_memo", {})
        if n in memo:
            return memo[n]
        ys = self.Y.stage_elements(n)
        ysupp = [support(self.Y, y) for y in ys]
        out = set()
        for xs in self.all_shapes():
            k = len(support(self.X, xs))
            for g in self._tuples(ys, ysupp, k):
                out.add(self.canon(xs, g))
        memo[n] = sorted(out, key=okey)
        return memo[n]

    def _tuples(self, ys, ysupp, k):
        if self.kind == "cap":
            yield from product(ys, repeat=k)
            return
        orbit = [orbit_canon(self.Y, y) for y in ys] if self.kind == "uniform" else None

        def go(prefix, used, orb):
            if len(prefix) == k:
                yield tuple(ys[i] for i in prefix)
                return
            for i in range(len(ys)):
                if ysupp[i] & used:
                    continue
                if orbit is not None and orb is not None and orbit[i] != orb:
                    continue
                yield from go(prefix + [i], used | ysupp[i], orb if orb is not None else (orbit[i] if orbit else None))

        yield from go([], frozenset(), None)

    def show(self, c) -> str:
        xs, g = c
        return f"{self.X.show(xs)}[" + ", ".join(f"a{i}↦{self.Y.show(y)}" for i, y in enumerate(g)) + "]"

    def sample(self, rng: random.Random):
        xs = self.shape(random_element(self.X, rng))[0]
        k = len(support(self.X, xs))
        vals, nxt = [], 0
        template = random_element(self.Y, rng)
        for _ in range(k):
            y = template if self.kind == "uniform" else random_element(self.Y, rng)
            if self.kind == "cap" and vals and rng.random() < 0.3:
                vals.append(rng.choice(vals))
                continue
            y = move_to(self.Y, y, nxt)
            nxt += len(support(self.Y, y))
            vals.append(y)
        return self.canon(xs, tuple(vals))


_TENSORS: dict = {}


def tensor(X: NomSet, Y: NomSet, kind: str = "sub") -> Tensor:
    """Shared tensor objects, so canonical-form memo tables are reused."""
    key = (id(X), id(Y), kind)
    hit = _TENSORS.get(key)
    if hit is None or hit.X is not X or hit.Y is not Y:
        hit = _TENSORS[key] = Tensor(X, Y, kind)
    return hit


# -- class equality ------------------------------------------------------------

def class_eq(T: Tensor, raw1, raw2) -> bool:
    """One-step π-search: is there β: supp x2 -> supp x1 with β·x2 = x1 and γ2 = γ1∘β?"""
    (x1, g1), (x2, g2) = raw1, raw2
    s1, s2 = sorted(support(T.X, x1)), sorted(support(T.X, x2))
    if len(s1) != len(s2):
        return False
    for img in permutations(s1):
        beta = dict(zip(s2, img))
        if all(g2[a] == g1[beta[a]] for a in s2) and T.X.act(extend_bijection(beta), x2) == x1:
            return True
    return False


def raw_pairs(T: Tensor, n: int, pool: int | None = None) -> list:
    """Representatives (x, γ) with x supported by the first ``pool`` atoms and
    γ valid with values supported by stage n."""
    pool = T.X.max_support if pool is None else pool
    ys = T.Y.stage_elements(n)
    out = []
    for x in T.X.stage_elements(pool):
        s = sorted(support(T.X, x))
        for vals in product(ys, repeat=len(s)):
            if T.violation(list(vals)) is None:
                out.append((x, tuple(zip(s, vals))))
    return out


def closure_oracle(T: Tensor, n: int, pool: int | None = None) -> dict:
    """Brute-force classes of the relation (π·x, γ) ~ (x, γ∘π), π ranging over
    transpositions of the pool, by fixpoint label propagation."""
    pool = T.X.max_support if pool is None else pool
    nodes = raw_pairs(T, n, pool)
    node_set = set(nodes)
    edges = []
    for x, gam in nodes:
        g = dict(gam)
        for a in range(pool):
            for b in range(a + 1, pool):
                tau = extend_bijection({a: b, b: a})
                tx = T.X.act(tau, x)
                # (τ·x, γ') ~ (x, γ'∘τ) with γ = γ'∘τ, i.e. γ'(τ c) = γ(c)
                g2 = tuple(sorted((tau(c), y) for c, y in g.items()))
                other = (tx, g2)
                if other in node_set:
                    edges.append(((x, gam), other))
    return closure_partition(nodes, edges)


def oracle_report(T: Tensor, n: int, pool: int | None = None) -> dict:
    """π-search and canonical forms against the closure oracle on every pair."""
    part = closure_oracle(T, n, pool)
    nodes = list(part)
    raws = [(x, dict(g)) for x, g in nodes]
    canon = [T.make(x, g) for x, g in raws]
    pairs = mismatches = canon_mismatch = 0
    witness = None
    for i in range(len(nodes)):
        for j in range(i, len(nodes)):
            pairs += 1
            same = part[nodes[i]] == part[nodes[j]]
            if class_eq(T, raws[i], raws[j]) != same:
                mismatches += 1
                witness = witness or {"left": repr(nodes[i]), "right": repr(nodes[j]), "oracle": same}
            if (canon[i] == canon[j]) != same:
                canon_mismatch += 1
    return {"tensor": T.name, "stage": n, "raw": len(nodes), "classes": len(set(part.values())),
            "enumerated": len(T.stage_elements(n)), "pairs": pairs, "search_mismatches": mismatches,
            "canonical_mismatches": canon_mismatch, "witness": witness}


# -- structure maps ------------------------------------------------------------

def left_unitor(T: Tensor) -> Callable:
    """𝔸 ◇ Y -> Y: a[a ↦ y] ↦ y."""
    return lambda c: c[1][0]


def left_unitor_inv(T: Tensor) -> Callable:
    return lambda y: T.canon(0, (y,))


def right_unitor(T: Tensor, target: NomSet | None = None) -> Callable:
    """X ◇ 𝔸 -> X: x[a ↦ σa] ↦ σ·x (a renaming when the values collide)."""
    X = T.X if target is None else target

    def fn(c):
        xs, g = c
        if len(set(g)) == len(g):
            return X.act(extend_bijection(dict(enumerate(g))), xs)
        return X.act(Renaming.of(dict(enumerate(g))), xs)
    return fn


def right_unitor_inv(T: Tensor) -> Callable:
    return lambda x: T.make(x, {a: a for a in support(T.X, x)})


def tensor_map(S: Tensor, T: Tensor, f: Callable | None = None, g: Callable | None = None) -> Callable:
    """f ◇ g : x[γ] ↦ f(x)[g∘γ], γ restricted to supp f(x)."""
    def fn(c):
        xs, gs = c
        fx = xs if f is None else f(xs)
        gam = {a: (y if g is None else g(y)) for a, y in enumerate(gs)}
        return T.make(fx, {a: gam[a] for a in support(T.X, fx)})
    return fn


def associator(X: NomSet, Y: NomSet, Z: NomSet, kind: str = "sub"):
    """(LHS, RHS, α, α⁻¹) for (X◇Y)◇Z ≅ X◇(Y◇Z).

    α: (x[γ])[δ] ↦ x[a ↦ γ(a)[δ|supp γ(a)]]; the inverse shifts the inner
    supports onto disjoint blocks.  For the captureful kind only α is a map
    of interest (it is not invertible in general).
    """
    XY, YZ = tensor(X, Y, kind), tensor(Y, Z, kind)
    LHS, RHS = tensor(XY, Z, kind), tensor(X, YZ, kind)

    def fwd(u):
        (xs, g), d = u
        inner = {i: YZ.make(y, {b: d[b] for b in support(Y, y)}) for i, y in enumerate(g)}
        return RHS.make(xs, inner)

    def bwd(v):
        xs, h = v
        ys, delta, off = {}, {}, 0
        for i, (y0, e) in enumerate(h):
            m = len(e)
            ys[i] = Y.act(extend_bijection({t: off + t for t in range(m)}), y0)
            for t in range(m):
                delta[off + t] = e[t]
            off += m
        w = XY.make(xs, ys)
        return LHS.make(w, delta)

    return LHS, RHS, fwd, bwd


def bijection_report(f: Callable, S: NomSet, T: NomSet, n: int, inverse: Callable | None = None) -> dict:
    """Whether f maps the stage-n elements of S bijectively onto those of T."""
    src, tgt = S.stage_elements(n), T.stage_elements(n)
    img = [f(x) for x in src]
    ok_inj = len(set(img)) == len(img)
    ok_onto = set(img) == set(tgt)
    ok_inv = inverse is None or all(inverse(y) == x for x, y in zip(src, img))
    out = {"stage": n, "source": len(src), "target": len(tgt), "bijective": ok_inj and ok_onto,
           "inverse_ok": ok_inv}
    if not (ok_inj and ok_onto):
        stray = [S.show(x) for x, y in zip(src, img) if y not in set(tgt)][:1]
        out["witness"] = {"outside_target": stray, "injective": ok_inj}
    return out


def pentagon_witness(W: NomSet, X: NomSet, Y: NomSet, Z: NomSet, samples: int = 50, seed: int = 0):
    """Both routes ((W◇X)◇Y)◇Z -> W◇(X◇(Y◇Z)) on random elements; None when they agree."""
    rng = random.Random(seed)
    WX, XY, YZ = tensor(W, X), tensor(X, Y), tensor(Y, Z)
    L1, _, a_wx_y_z, _ = associator(WX, Y, Z)
    _, R1, a_w_x_yz, _ = associator(W, X, YZ)
    _, WXY_, a_wxy, _ = associator(W, X, Y)              # (W◇X)◇Y -> W◇(X◇Y)
    _, _, a_w_xy_z, _ = associator(W, XY, Z)             # (W◇(X◇Y))◇Z -> W◇((X◇Y)◇Z)
    _, XYZ_, a_xyz, _ = associator(X, Y, Z)              # (X◇Y)◇Z -> X◇(Y◇Z)
    step1 = tensor_map(L1, tensor(WXY_, Z), a_wxy, None)
    step3 = tensor_map(tensor(W, tensor(XY, Z)), R1, None, a_xyz)
    for _ in range(samples):
        u = L1.sample(rng)
        top = a_w_x_yz(a_wx_y_z(u))
        bottom = step3(a_w_xy_z(step1(u)))
        if top != bottom:
            return {"elem": L1.show(u), "top": R1.show(top), "bottom": R1.show(bottom)}
    return None
