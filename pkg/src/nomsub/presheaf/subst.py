"""The substitution presheaf A ◁ Y, the substitution tensor X ◇ Y and its
structure maps, the internal hom Y ⊸ Z and the comparison X ⊗ Y -> X ◇ Y.

Elements of A ◁ Y(C) are tuples of A blocks (S_a, t_a) with S_a ⊆ C and
t_a ∈ Y(|S_a|), i.e. the bundle coend over canonical bundles.  Elements of
X ◇ Y(C) are triples (A, x, γ) with x ∈ X(A) and γ ∈ A ◁ Y(C).
"""
from __future__ import annotations


from ..finset import Mor
from .core import NatTrans, Quotient, TruncPresheaf, nat_enumerate
from .day import DaySum, DayTimes, normalize_block, stabilization


class SubstPowers:
    """A ◁ Y for every A <= ``inner``, with reindexing along maps A' -> A."""

    _cache: dict = {}

    def __new__(cls, Y: TruncPresheaf, inner: int, outer: int | None = None):
        outer = Y.bound if outer is None else outer
        key = (id(Y), inner, outer)
        hit = cls._cache.get(key)
        if hit is not None and hit.Y is Y:
            return hit
        self = super().__new__(cls)
        self.Y, self.inner, self.outer = Y, inner, outer
        self.powers = {}
        cls._cache[key] = self
        return self

    def __getitem__(self, A: int) -> DaySum:
        if A not in self.powers:
            self.powers[A] = DaySum([self.Y] * A, name=f"{A}◁{self.Y.name}", cat=self.Y.cat, bound=self.outer)
        return self.powers[A]

    def reindex(self, f: Mor, C: int, gamma) -> tuple:
        """γ ∈ A ◁ Y(C) along f: A' -> A, i.e. (S_{f(a')}, t_{f(a')})_{a'}."""
        return self[f.dom].lookup(C, tuple(gamma[f(a)] for a in range(f.dom)))


def substitution_presheaf(A: int, Y: TruncPresheaf) -> DaySum:
    return DaySum([Y] * A, name=f"{A}◁{Y.name}", cat=Y.cat, bound=Y.bound)


def iterated_power(A: int, Y: TruncPresheaf) -> TruncPresheaf:
    """(((Y ⊕ Y) ⊕ Y) ...) built from binary sums, for comparison with A ◁ Y."""
    if A == 0:
        return DaySum([], name="y0", cat=Y.cat, bound=Y.bound)
    out = Y
    for _ in range(A - 1):
        out = DaySum([out, Y])
    return out


def flatten_power(A: int, C: int, e) -> tuple:
    """Blocks of an element of the iterated binary power with A factors."""
    if A == 0:
        return ()
    if A == 1:
        return ((tuple(range(C)), e),)
    (s1, u), (s2, y) = e
    left = tuple((tuple(s1[i] for i in s), t) for s, t in flatten_power(A - 1, len(s1), u))
    return left + ((s2, y),)


class SubstTensor(TruncPresheaf):
    def __init__(self, X: TruncPresheaf, Y: TruncPresheaf, inner: int | None = None,
                 outer: int | None = None):
        cat, bound = X.cat, X.bound if outer is None else outer
        self.X, self.Y = X, Y
        self.inner = bound if inner is None else inner
        self.powers = SubstPowers(Y, self.inner, bound)
        gens = cat.generators(self.inner)
        self.quotients = {}
        for C in range(bound + 1):
            nodes = [(A, x, g) for A in range(self.inner + 1) if X.elems[A] for x in X.elems[A]
                     for g in self.powers[A].elems[C]]
            edges = []
            for j in gens:
                # (j·x, γ) ~ (x, γ·j) for j: A -> A'
                A, A2 = j.dom, j.cod
                if not X.elems[A]:
                    continue
                for x in X.elems[A]:
                    jx = X.act(j, x)
                    for g in self.powers[A2].elems[C]:
                        edges.append(((A2, jx, g), (A, x, self.powers.reindex(j, C, g))))
            self.quotients[C] = Quotient(nodes, edges)
        super().__init__(cat, bound, {C: q.reps for C, q in self.quotients.items()}, self._rule,
                         name=f"({X.name} ◇ {Y.name})", show=self._show)

    def _show(self, e):
        A, x, g = e
        return f"{self.X.show(x)}@{A}[" + ", ".join(f"{list(s)}:{self.Y.show(t)}" for s, t in g) + "]"

    def lookup(self, C: int, node) -> tuple:
        return self.quotients[C].rep(node)

    def _rule(self, f: Mor, e):
        A, x, g = e
        return self.lookup(f.cod, (A, x, self.powers[A].act(f, g)))


def subst_tensor(X: TruncPresheaf, Y: TruncPresheaf, outer: int | None = None,
                 inner: int | None = None, diagnose: bool = False) -> SubstTensor:
    """X ◇ Y at stages <= ``outer`` with inner stages <= ``inner`` (default: outer).

    With ``diagnose`` the tensor is also built with one more inner stage and
    the comparison is attached as ``.diagnostic``; X and Y must then be
    tabulated one stage past ``inner``.
    """
    outer = (X.bound - 1 if diagnose else X.bound) if outer is None else outer
    inner = outer if inner is None else inner
    if not diagnose:
        return SubstTensor(X, Y, inner, outer)
    out = {}

    def build(k):
        out[k] = SubstTensor(X, Y, k, outer)
        return out[k]

    stabilization(build, inner)
    return out[inner]


# -- structure maps ----------------------------------------------------------

def left_unitor(T: SubstTensor) -> NatTrans:
    """𝐲1 ◇ Y -> Y: [x: 1 -> A, γ] ↦ the single block of γ·x pushed into C."""
    Y = T.Y

    def fn(C, e):
        A, x, g = e
        (s, t), = T.powers.reindex(Mor(1, A, x), C, g)
        return Y.act(Mor(len(s), C, s), t)

    return NatTrans.from_function(T, Y, fn)


def right_unitor(T: SubstTensor) -> NatTrans:
    """X ◇ 𝐲1 -> X: [x, (S_a, (k_a))] ↦ σ·x with σ(a) = S_a[k_a]."""
    X = T.X

    def fn(C, e):
        A, x, g = e
        sigma = Mor(A, C, tuple(s[t[0]] for s, t in g))
        return X.act(sigma, x)

    return NatTrans.from_function(T, X, fn)


def _split_pushforward(powers: SubstPowers, C: int, blocks):
    """Blocks (T_k, z_k) inside C become (U, γ') with U their union and γ' the
    same blocks relabelled inside |U|."""
    U = tuple(sorted({a for s, _ in blocks for a in s}))
    pos = {a: i for i, a in enumerate(U)}
    inner = tuple((tuple(pos[a] for a in s), z) for s, z in blocks)
    return U, powers[len(blocks)].lookup(len(U), inner)


def distributor(T: SubstTensor, Txz: SubstTensor, Tyz: SubstTensor, target: DaySum) -> NatTrans:
    """(X ⊕ Y) ◇ Z -> (X ◇ Z) ⊕ (Y ◇ Z)."""
    powers = T.powers

    def fn(C, e):
        A, u, g = e
        (s1, x), (s2, y) = u
        j = Mor(len(s1) + len(s2), A, s1 + s2)
        gj = powers.reindex(j, C, g)
        U1, g1 = _split_pushforward(powers, C, gj[:len(s1)])
        U2, g2 = _split_pushforward(powers, C, gj[len(s1):])
        w1 = Txz.lookup(len(U1), (len(s1), x, g1))
        w2 = Tyz.lookup(len(U2), (len(s2), y, g2))
        return target.lookup(C, ((U1, w1), (U2, w2)))

    return NatTrans.from_function(T, target, fn)


def associator(LHS: SubstTensor, RHS: SubstTensor) -> NatTrans:
    """(X ◇ Y) ◇ Z -> X ◇ (Y ◇ Z).

    [[x, (S_b, y_b)_b], γ] ↦ [x, (U_b, [y_b, γ restricted to S_b])_b].
    """
    YZ = RHS.Y
    powers_z = LHS.powers

    def fn(C, e):
        A, u, g = e
        B, x, d = u
        out = []
        for s, y in d:
            part = tuple(g[a] for a in s)
            U, inner = _split_pushforward(powers_z, C, part)
            out.append((U, YZ.lookup(len(U), (len(s), y, inner))))
        return RHS.lookup(C, (B, x, RHS.powers[B].lookup(C, tuple(out))))

    return NatTrans.from_function(LHS, RHS, fn)


def tensor_map(f: NatTrans | None, g: NatTrans | None, S: SubstTensor, T: SubstTensor) -> NatTrans:
    """f ◇ g : S.X ◇ S.Y -> T.X ◇ T.Y, with None standing for an identity."""

    def fn(C, e):
        A, x, gam = e
        x2 = x if f is None else f(A, x)
        if g is not None:
            gam = tuple((s, g(len(s), t)) for s, t in gam)
        return T.lookup(C, (A, x2, T.powers[A].lookup(C, gam)))

    return NatTrans.from_function(S, T, fn)


# -- internal hom ------------------------------------------------------------

class InternalHom(TruncPresheaf):
    """(Y ⊸ Z)(A) = Nat(A ◁ Y, Z); an element is the tuple of its components."""

    def __init__(self, Y: TruncPresheaf, Z: TruncPresheaf, inner: int | None = None):
        cat, bound = Y.cat, Y.bound
        self.Y, self.Z = Y, Z
        self.powers = SubstPowers(Y, bound if inner is None else inner)
        elems = {}
        for A in range(bound + 1):
            elems[A] = [self._key(a) for a in nat_enumerate(self.powers[A], Z)]
        super().__init__(cat, bound, elems, self._rule, name=f"({Y.name} ⊸ {Z.name})",
                         show=lambda h: str(h))

    @staticmethod
    def _key(alpha: NatTrans) -> tuple:
        return tuple(alpha.comp[n] for n in sorted(alpha.comp))

    def evaluate(self, A: int, h, C: int, gamma):
        return h[C][self.powers[A].index(C, gamma)]

    def _rule(self, f: Mor, h):
        # (f·h)_C(γ') = h_C(γ' reindexed along f)
        P = self.powers[f.cod]
        return tuple(tuple(self.evaluate(f.dom, h, C, self.powers.reindex(f, C, g)) for g in P.elems[C])
                     for C in range(self.bound + 1))


def curry(alpha: NatTrans, T: SubstTensor, H: InternalHom) -> NatTrans:
    def fn(A, x):
        return tuple(tuple(alpha(C, T.lookup(C, (A, x, g))) for g in H.powers[A].elems[C])
                     for C in range(H.bound + 1))

    return NatTrans.from_function(T.X, H, fn)


def uncurry(beta: NatTrans, T: SubstTensor, H: InternalHom) -> NatTrans:
    def fn(C, e):
        A, x, g = e
        return H.evaluate(A, beta(A, x), C, g)

    return NatTrans.from_function(T, H.Z, fn)


# -- comparison with the Day product -----------------------------------------

def phi(P: DayTimes, T: SubstTensor) -> NatTrans:
    """κ_{A,B}(j, x, y) ↦ κ_A(x, κ_{π_A}(j, (y)_a))."""
    Y = T.Y

    def image(C, node):
        m, n, j, x, y = node
        gam = tuple(normalize_block(Y, j[a * n:(a + 1) * n], y) for a in range(m))
        return T.lookup(C, (m, x, T.powers[m].lookup(C, gam)))

    alpha = NatTrans.from_function(P, T, image)
    alpha.on_node = image
    return alpha


def phi_well_defined_witness(P: DayTimes, alpha: NatTrans):
    """φ must be constant on every class of the Day product."""
    for C, q in P.quotients.items():
        for rep, members in q.classes().items():
            vals = {alpha.on_node(C, v) for v in members}
            if len(vals) > 1:
                return {"stage": C, "class": P.show(rep)}
    return None
