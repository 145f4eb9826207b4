"""Uniform substitution on nominal sets.

Two readings are kept side by side:

* the subset of X ◇ Y whose substituted values share one orbit
  (``tensor(X, Y, "uniform")``), and
* the Day form: x[y] given by orbit shapes x', y' and an n × m matrix of
  pairwise distinct atoms, modulo permuting rows by symmetries of x' and
  columns by symmetries of y' (``UniformDay``).  This is I^*(I_*X ⊗ I_*Y)
  computed directly, and it is symmetric by transposition.

``comparison`` sends the Day form onto the subset of X ◇ Y.  It is onto,
but it forgets how each row was matched against y', so it is not injective
once x has two support atoms and y' has symmetries.
"""
from __future__ import annotations

from itertools import permutations

from ..atoms import extend_bijection
from ..finset import INJ
from ..order import okey
from ..presheaf.day import DayTimes
from .bridges import UpperSet, i_star
from .core import NomSet, shapes, support
from .hom import HomSet
from .tensor import Tensor, tensor


def _stab(X: NomSet, xs, k: int) -> list:
    return [sig for sig in permutations(range(k)) if X.act(extend_bijection(dict(enumerate(sig))), xs) == xs]


class UniformDay(NomSet):
    def __init__(self, X: NomSet, Y: NomSet):
        self.X, self.Y = X, Y
        self.name = f"({X.name} ⊗ {Y.name})"
        mx, my = X.max_support, Y.max_support
        self.max_support = None if None in (mx, my) else mx * my
        self.renaming_closed = False
        self._stabs = {}

    def _stab(self, S, s, k):
        key = (id(S), s, k)
        if key not in self._stabs:
            self._stabs[key] = _stab(S, s, k)
        return self._stabs[key]

    def canon(self, xs, ys, M) -> tuple:
        n, m = len(support(self.X, xs)), len(support(self.Y, ys))
        best = None
        for sx in self._stab(self.X, xs, n):
            for sy in self._stab(self.Y, ys, m):
                cand = tuple(tuple(M[sx[i]][sy[k]] for k in range(m)) for i in range(n))
                if best is None or cand < best:
                    best = cand
        return (xs, ys, best)

    def act(self, rho, e):
        xs, ys, M = e
        return self.canon(xs, ys, tuple(tuple(rho(a) for a in row) for row in M))

    def over_support(self, e):
        return frozenset(a for row in e[2] for a in row)

    def shape_pairs(self):
        tx = self.X.max_support if self.X.max_support is not None else 2
        ty = self.Y.max_support if self.Y.max_support is not None else 2
        xsh = [xs for k in range(tx + 1) for xs in shapes(self.X, k)]
        ysh = [ys for k in range(ty + 1) for ys in shapes(self.Y, k)]
        return [(xs, ys) for xs in xsh for ys in ysh]

    def stage_elements(self, n: int) -> list:
        memo = self.__dict__.setdefault("_stage_memo", {})
        if n in memo:
            return memo[n]
        out = set()
        for xs, ys in self.shape_pairs():
            a, b = len(support(self.X, xs)), len(support(self.Y, ys))
            if a * b > n:
                continue
            for flat in permutations(range(n), a * b):
                M = tuple(tuple(flat[i * b:(i + 1) * b]) for i in range(a))
                out.add(self.canon(xs, ys, M))
        memo[n] = sorted(out, key=okey)
        return memo[n]

    def show(self, e):
        xs, ys, M = e
        rows = "; ".join(" ".join(f"a{a}" for a in row) for row in M)
        return f"{self.X.show(xs)}[{self.Y.show(ys)}]⟨{rows}⟩"


def symmetry(U: UniformDay, V: UniformDay):
    """X ⊗ Y -> Y ⊗ X by transposing the matrix."""
    def fn(e):
        xs, ys, M = e
        n, m = len(support(U.X, xs)), len(support(U.Y, ys))
        return V.canon(ys, xs, tuple(tuple(M[i][k] for i in range(n)) for k in range(m)))
    return fn


def comparison(U: UniformDay, T: Tensor | None = None):
    """x'[y'] with matrix M ↦ x'[i ↦ (k ↦ M[i][k])·y'] in X ◇ Y."""
    T = T or tensor(U.X, U.Y, "uniform")

    def fn(e):
        xs, ys, M = e
        vals = {}
        for i, row in enumerate(M):
            vals[i] = U.Y.act(extend_bijection(dict(enumerate(row))), ys)
        return T.make(xs, vals)
    return fn


def comparison_report(X: NomSet, Y: NomSet, n: int) -> dict:
    """Is the comparison onto / injective at stage n?  Gives a collision when not."""
    U, T = UniformDay(X, Y), tensor(X, Y, "uniform")
    phi = comparison(U, T)
    seen, witness = {}, None
    for e in U.stage_elements(n):
        c = phi(e)
        if c in seen and witness is None:
            witness = {"first": U.show(seen[c]), "second": U.show(e), "image": T.show(c)}
        seen.setdefault(c, e)
    return {"pair": [X.name, Y.name], "stage": n, "day_form": len(U.stage_elements(n)),
            "subset_form": len(T.stage_elements(n)), "onto": set(seen) == set(T.stage_elements(n)),
            "injective": witness is None, "witness": witness}


def uniform_from_presheaf(X: NomSet, Y: NomSet, bound: int, inner: int | None = None):
    """I^*(I_*X ⊗ I_*Y) through the presheaf engine, with the map from the Day form."""
    inner = inner if inner is not None else max(X.max_support or 1, Y.max_support or 1)
    D = DayTimes(i_star(X, bound, INJ), i_star(Y, bound, INJ), inner)
    up = UpperSet(D)
    U = UniformDay(X, Y)

    def to_upper(e):
        xs, ys, M = e
        n, m = len(support(X, xs)), len(support(Y, ys))
        atoms = sorted({a for row in M for a in row})
        pos = {a: i for i, a in enumerate(atoms)}
        j = tuple(pos[M[i][k]] for i in range(n) for k in range(m))
        node = D.lookup(len(atoms), (n, m, j, xs, ys))
        S, q = up.minimal(len(atoms), node)
        return (tuple(atoms[i] for i in S), q)
    return U, up, to_upper


class UniformHom(HomSet):
    """Y ⊸⊗ Z: maps on fresh tuples whose values share one orbit."""

    def __init__(self, Y: NomSet, Z: NomSet, cap: int = 400):
        super().__init__(Y, Z, fresh=True, cap=cap)
        self.name = f"({Y.name} ⊸⊗ {Z.name})"

    def family(self, atoms) -> list:
        from .tensor import move_to
        atoms = sorted(atoms)
        out = []
        for y0 in self.shapes():
            gamma, nxt = {}, 0
            for a in atoms:
                gamma[a] = move_to(self.Y, y0, nxt)
                nxt += len(support(self.Y, y0))
            out.append(gamma)
        return out

    def replace_outside(self, gamma: dict, keep) -> list:
        from .tensor import move_to
        if not gamma:
            return [gamma]
        y0 = next(iter(gamma.values()))
        used = set().union(*(support(self.Y, y) for y in gamma.values()))
        g2 = dict(gamma)
        for a in gamma:
            if a not in keep:
                g2[a] = move_to(self.Y, y0, max(used, default=-1) + 1)
                used |= support(self.Y, g2[a])
        return [g2]


def uniform_uncurry(g, T: Tensor):
    """uncurry for ⊗: γ̂ extends γ by fresh copies of one of its own values."""
    from .tensor import move_to

    def f(c):
        xs, vals = c
        h = g(xs)
        gamma = dict(enumerate(vals))
        extra = [a for a in h.positions if a not in gamma]
        if extra:
            y0 = vals[0] if vals else shapes(T.Y, 0)[0]
            used = set().union(set(), *(support(T.Y, y) for y in vals))
            for a in extra:
                gamma[a] = move_to(T.Y, y0, max(used, default=-1) + 1)
                used |= support(T.Y, gamma[a])
        return h(gamma)
    return f
