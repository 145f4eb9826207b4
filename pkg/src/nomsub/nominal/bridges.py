"""Passing between nominal sets and presheaves.

I_*  : nominal sets -> presheaves over injections (elements supported by A)
I^*  : presheaves over injections -> nominal sets (pairs [A, p] modulo extension)
𝒮, ∐ : support-preserving nominal sets <-> species (presheaves over bijections),
       and their renaming versions over surjections
R, 𝒯 : the monad x ↦ {(x, A) | supp x ⊆ A}, its Kleisli transposition and
       its description as a writer monad for the monoid 𝒫f𝔸
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

from ..atoms import Renaming, extend_bijection
from ..errors import NotRelevant, NotSupportPreserving, TruncationUnstable
from ..finset import BIJ, FIN, INJ, SURJ, IndexCat, Mor, subset_inclusion
from ..order import okey
from ..presheaf.checks import intersections_witness
from ..presheaf.core import NatTrans, TruncPresheaf, tabulate
from ..presheaf.day import DaySum
from .core import FinPowerset, FreshProduct, NomSet, cached_stages, shapes, support


def _mor_action(X: NomSet, f: Mor, x):
    """Act on x ∈ X(dom f) along f, extended by the identity (a renaming when f merges atoms)."""
    if f.is_injective():
        return X.act(extend_bijection(dict(enumerate(f.table))), x)
    return X.act(Renaming.of(dict(enumerate(f.table))), x)


def _onto(atoms) -> Callable:
    """x supported by {0..k-1} moved onto the sorted atoms."""
    atoms = sorted(atoms)
    pi = extend_bijection(dict(enumerate(atoms)))
    return pi


# -- I_* and I^* ---------------------------------------------------------------

def i_star(X: NomSet, bound: int, cat: IndexCat = INJ) -> TruncPresheaf:
    """n ↦ elements supported by {0..n-1}.  Over 𝔽 the set must carry renamings."""
    if cat is not INJ and not X.renaming_closed:
        raise ValueError(f"{X.name} has no renaming action")
    return tabulate(cat, bound, X.stage_elements, lambda f, x: _mor_action(X, f, x),
                    name=f"I*{X.name}", show=X.show)


@cached_stages
class UpperSet(NomSet):
    """I^*P: elements [A, p] with p ∈ P(|A|), stored at their least A.

    For intersection-preserving P the least A exists and is unique; other
    sources raise a TruncationUnstable warning and get the okey-least
    minimal choice.
    """

    def __init__(self, P: TruncPresheaf):
        self.P = P
        self.name = f"I^({P.name})"
        self.max_support = P.bound
        self.renaming_closed = P.cat is FIN
        self._images = {}
        w = intersections_witness(P)
        if w is not None:
            warnings.warn(TruncationUnstable(f"{P.name} does not preserve intersections: {w}"))

    def _image_tables(self, k: int) -> list:
        if k not in self._images:
            out = []
            for m in range(k + 1):
                for S in combinations(range(k), m):
                    f = subset_inclusion(S, k)
                    pre = {}
                    for u in self.P.elems[m]:
                        pre.setdefault(self.P.act(f, u), u)
                    out.append((S, pre))
            self._images[k] = out
        return self._images[k]

    def minimal(self, k: int, p):
        """(S, p') with S ⊆ {0..k-1} least such that p comes from p' ∈ P(|S|)."""
        for S, pre in self._image_tables(k):
            if p in pre:
                return S, pre[p]
        return tuple(range(k)), p

    def act(self, rho, e):
        A, p = e
        img = [rho(a) for a in A]
        B = sorted(set(img))
        f = Mor(len(A), len(B), tuple(B.index(b) for b in img))
        q = self.P.act(f, p)
        if f.is_injective():
            return (tuple(B), q)
        S, q2 = self.minimal(len(B), q)
        return (tuple(B[i] for i in S), q2)

    def over_support(self, e):
        return frozenset(e[0])

    def stage_elements(self, n):
        out = []
        for m in range(min(n, self.P.bound) + 1):
            full = tuple(range(m))
            for A in combinations(range(n), m):
                for p in self.P.elems[m]:
                    if self.minimal(m, p)[0] == full:
                        out.append((A, p))
        return out

    def show(self, e):
        return "[{" + ", ".join(f"a{a}" for a in e[0]) + "}, " + self.P.show(e[1]) + "]"


def i_upper(P: TruncPresheaf) -> UpperSet:
    return UpperSet(P)


def upper_of_star(X: NomSet) -> Callable:
    """I^*I_*X -> X: [A, p] ↦ p moved onto A."""
    return lambda e: X.act(_onto(e[0]), e[1])


# -- equivariant maps between orbit-finite sets ----------------------------------

def _transport(X: NomSet, x):
    """(x', β) with x' the orbit canonical form and β·x = x'."""
    s = sorted(support(X, x))
    best = None
    from itertools import permutations
    for img in permutations(range(len(s))):
        beta = extend_bijection(dict(zip(s, img)))
        val = X.act(beta, x)
        if best is None or okey(val) < okey(best[0]):
            best = (val, beta)
    return best


def equivariant_maps(X: NomSet, Y: NomSet, support_preserving: bool = False, limit: int = 10_000) -> list:
    """Every equivariant map X -> Y, as dicts from orbit shapes of X to images.

    An image of a shape x' must be supported by supp x' and fixed by its
    stabiliser; with ``support_preserving`` its support must equal supp x'.
    """
    top = X.max_support if X.max_support is not None else 2
    xshapes = [xs for k in range(top + 1) for xs in shapes(X, k)]
    options = []
    from itertools import permutations
    for xs in xshapes:
        k = len(support(X, xs))
        stab = [extend_bijection(dict(enumerate(s))) for s in permutations(range(k))
                if X.act(extend_bijection(dict(enumerate(s))), xs) == xs]
        cands = [y for y in Y.stage_elements(k)
                 if all(Y.act(pi, y) == y for pi in stab)
                 and (not support_preserving or support(Y, y) == frozenset(range(k)))]
        options.append(cands)
    out = []
    for choice in product(*options):
        out.append(dict(zip(xshapes, choice)))
        if len(out) >= limit:
            break
    return out


def apply_map(X: NomSet, Y: NomSet, table: dict) -> Callable:
    """The equivariant extension of a table on orbit shapes."""
    def f(x):
        xs, beta = _transport(X, x)
        return Y.act(beta.inverse(), table[xs])
    return f


# -- species -------------------------------------------------------------------

def is_support_preserving(f: Callable, X: NomSet, Y: NomSet, n: int = 3) -> bool:
    return all(support(Y, f(x)) == support(X, x) for m in range(n + 1) for x in X.stage_elements(m))


def relevance_witness(X: NomSet, n: int = 3):
    """First (ρ, x) with supp(ρ·x) ≠ ρ[supp x], ρ ranging over renamings of stage n."""
    from ..atoms import all_renamings
    from .renaming import ren_support
    for rho in all_renamings(range(n)):
        for x in X.stage_elements(n):
            s = ren_support(X, x)
            lhs, rhs = ren_support(X, X.act(rho, x)), frozenset(rho(a) for a in s)
            if lhs != rhs:
                return {"rho": str(rho), "elem": X.show(x), "supp": sorted(s),
                        "supp_image": sorted(lhs), "image_supp": sorted(rhs)}
    return None


def species_of(X: NomSet, bound: int, cat: IndexCat = BIJ) -> TruncPresheaf:
    """𝒮X: n ↦ elements with support exactly {0..n-1}.

    Over surjections a map acts through its extension by the identity, which
    keeps supports exact only for relevance sets; otherwise NotRelevant.
    """
    if cat is SURJ:
        w = relevance_witness(X, min(bound, 3))
        if w is not None:
            raise NotRelevant(w)

    def elems(n):
        full = frozenset(range(n))
        return [x for x in X.stage_elements(n) if support(X, x) == full]

    return tabulate(cat, bound, elems, lambda f, x: _mor_action(X, f, x),
                    name=f"S{X.name}", show=X.show)


def species_map(f: Callable, X: NomSet, Y: NomSet, bound: int, cat: IndexCat = BIJ) -> NatTrans:
    """𝒮f, defined only for support-preserving f."""
    if not is_support_preserving(f, X, Y, bound):
        raise NotSupportPreserving(f"map does not preserve supports on stages <= {bound}")
    return NatTrans.from_function(species_of(X, bound, cat), species_of(Y, bound, cat), lambda n, x: f(x))


@cached_stages
class CoprodSet(NomSet):
    """∐F: elements κ_A(x) stored as (A sorted, x ∈ F(|A|)); supp κ_A(x) = A."""

    def __init__(self, F: TruncPresheaf):
        self.F = F
        self.name = f"∐{F.name}"
        self.max_support = F.bound
        self.renaming_closed = F.cat is SURJ

    def act(self, rho, e):
        A, x = e
        img = [rho(a) for a in A]
        B = sorted(set(img))
        return (tuple(B), self.F.act(Mor(len(A), len(B), tuple(B.index(b) for b in img)), x))

    def over_support(self, e):
        return frozenset(e[0])

    def stage_elements(self, n):
        return [(A, x) for m in range(min(n, self.F.bound) + 1)
                for A in combinations(range(n), m) for x in self.F.elems[m]]

    def show(self, e):
        return f"κ{{{', '.join(f'a{a}' for a in e[0])}}}({self.F.show(e[1])})"


def coprod(F: TruncPresheaf) -> CoprodSet:
    return CoprodSet(F)


def species_roundtrip(F: TruncPresheaf) -> NatTrans:
    """F -> 𝒮∐F, x ↦ κ_{0..n-1}(x)."""
    S = species_of(coprod(F), F.bound, F.cat)
    return NatTrans.from_function(F, S, lambda n, x: (tuple(range(n)), x))


def coprod_of_species(X: NomSet) -> Callable:
    """∐𝒮X -> X: κ_A(x) ↦ x moved onto A."""
    return lambda e: X.act(_onto(e[0]), e[1])


# -- fresh product and Day sum ----------------------------------------------------

def fresh_product_bridge(X: NomSet, Y: NomSet, bound: int) -> NatTrans:
    """I_*X ⊕ I_*Y -> I_*(X * Y): κ_j(x, y) ↦ (j|_A·x, j|_B·y)."""
    D = DaySum([i_star(X, bound), i_star(Y, bound)])
    XY = i_star(FreshProduct(X, Y), bound)

    def fn(C, blocks):
        (s1, x), (s2, y) = blocks
        return (X.act(_onto(s1), x), Y.act(_onto(s2), y))
    return NatTrans.from_function(D, XY, fn)


def sum_is_product_bridge(P: TruncPresheaf, Q: TruncPresheaf) -> NatTrans:
    """Over 𝔽 the Day sum is the pointwise product: κ_j(p, q) ↦ (j|_A·p, j|_B·q)."""
    from ..presheaf.core import product_psh
    D = DaySum([P, Q])
    prod = product_psh(P, Q)

    def fn(C, blocks):
        (s1, p), (s2, q) = blocks
        return (P.act(Mor(len(s1), C, tuple(s1)), p), Q.act(Mor(len(s2), C, tuple(s2)), q))
    return NatTrans.from_function(D, prod, fn)


# -- the monad R and Nom= ------------------------------------------------------------

@cached_stages
class RSet(NomSet):
    """RX = {(x, A) | supp x ⊆ A}, supp (x, A) = A."""

    def __init__(self, X: NomSet, extra: int = 1):
        self.X = X
        self.extra = extra
        self.name = f"R{X.name}"
        self.max_support = None if X.max_support is None else X.max_support + extra
        self.renaming_closed = X.renaming_closed

    def act(self, rho, e):
        x, A = e
        return (self.X.act(rho, x), frozenset(rho(a) for a in A))

    def over_support(self, e):
        return e[1]

    def stage_elements(self, n):
        out = []
        for x in self.X.stage_elements(n):
            s = support(self.X, x)
            rest = sorted(set(range(n)) - s)
            for k in range(len(rest) + 1):
                for extra in combinations(rest, k):
                    out.append((x, s | frozenset(extra)))
        return out

    def show(self, e):
        return f"({self.X.show(e[0])}, {{{', '.join(f'a{a}' for a in sorted(e[1]))}}})"


def unit_R(X: NomSet) -> Callable:
    return lambda x: (x, support(X, x))


def mult_R(e):
    """((x, A), B) ↦ (x, B)."""
    (x, _), B = e
    return (x, B)


def kleisli_transpose(f: Callable, X: NomSet) -> Callable:
    """f ↦ f_=, x ↦ (f(x), supp x)."""
    return lambda x: (f(x), support(X, x))


def kleisli_untranspose(g: Callable) -> Callable:
    return lambda x: g(x)[0]


def kleisli_report(X: NomSet, Y: NomSet, stage: int = 3) -> dict:
    """Nom(X, Y) against support-preserving maps X -> RY under transposition."""
    plain = equivariant_maps(X, Y)
    RY = RSet(Y)
    kleisli = equivariant_maps(X, RY, support_preserving=True)
    elems = [x for n in range(stage + 1) for x in X.stage_elements(n)]
    ok_there = ok_back = True
    seen = set()
    for t in plain:
        f = apply_map(X, Y, t)
        ft = kleisli_transpose(f, X)
        key = tuple(ft(x) for x in elems)
        seen.add(key)
        ok_there &= all(support(RY, ft(x)) == support(X, x) for x in elems)
        ok_back &= all(kleisli_untranspose(ft)(x) == f(x) for x in elems)
    kl_keys = {tuple(apply_map(X, RY, t)(x) for x in elems) for t in kleisli}
    return {"X": X.name, "Y": Y.name, "nom_maps": len(plain), "kleisli_maps": len(kleisli),
            "support_preserving": ok_there, "roundtrip": ok_back,
            "bijective": ok_there and ok_back and seen == kl_keys and len(plain) == len(kleisli)}


def writer_iso(X: NomSet, powerset_size: int = 8) -> tuple:
    """RX ≅ 1_= * X with 1_= = 𝒫f𝔸: (x, A) ↦ (A ∖ supp x, x); returns (map, inverse, target)."""
    target = FreshProduct(FinPowerset(powerset_size), X)
    fwd = lambda e: (e[1] - support(X, e[0]), e[0])
    bwd = lambda p: (p[1], p[0] | support(X, p[1]))
    return fwd, bwd, target


def writer_monad_witness(X: NomSet, stage: int = 3):
    """The writer iso against unit and multiplication of both monads."""
    fwd, _, _ = writer_iso(X)
    for n in range(stage + 1):
        for x in X.stage_elements(n):
            if fwd(unit_R(X)(x)) != (frozenset(), x):
                return {"law": "unit", "elem": X.show(x)}
        RX = RSet(X)
        for e in RSet(RX).stage_elements(n):
            (x, A), B = e
            lhs = fwd(mult_R(e))
            inner = fwd((x, A))                           # 𝒯(iso) then iso on the outside
            outer = (B - A, inner)
            rhs = (outer[0] | outer[1][0], outer[1][1])
            if lhs != rhs:
                return {"law": "multiplication", "elem": RSet(RX).show(e)}
    return None


@cached_stages
class EqProduct(NomSet):
    """X ×_= Y: pairs with equal supports."""

    def __init__(self, X: NomSet, Y: NomSet):
        self.X, self.Y = X, Y
        self.name = f"({X.name} ×= {Y.name})"
        self.max_support = X.max_support
        self.renaming_closed = X.renaming_closed and Y.renaming_closed

    def act(self, rho, p):
        return (self.X.act(rho, p[0]), self.Y.act(rho, p[1]))

    def over_support(self, p):
        return self.X.over_support(p[0]) | self.Y.over_support(p[1])

    def stage_elements(self, n):
        return [(x, y) for x in self.X.stage_elements(n) for y in self.Y.stage_elements(n)
                if support(self.X, x) == support(self.Y, y)]

    def show(self, p):
        return f"({self.X.show(p[0])}, {self.Y.show(p[1])})"


def eq_terminal(size: int = 8) -> FinPowerset:
    """1_= = 𝒫f𝔸; the unique support-preserving map into it is x ↦ supp x."""
    return FinPowerset(size)


def eq_universal_report(W: NomSet, X: NomSet, Y: NomSet) -> dict:
    """Support-preserving maps W -> X ×_= Y against pairs of maps W -> X, W -> Y,
    and the unique map W -> 1_=."""
    into_prod = equivariant_maps(W, EqProduct(X, Y), support_preserving=True)
    into_x = equivariant_maps(W, X, support_preserving=True)
    into_y = equivariant_maps(W, Y, support_preserving=True)
    into_one = equivariant_maps(W, eq_terminal(W.max_support or 2), support_preserving=True)
    pairs = {tuple((k, (a[k], b[k])) for k in a) for a in into_x for b in into_y}
    tupled = {tuple(t.items()) for t in into_prod}
    return {"W": W.name, "product_maps": len(into_prod), "pairs": len(into_x) * len(into_y),
            "product_ok": pairs == tupled, "terminal_maps": len(into_one),
            "terminal_ok": len(into_one) == 1}


# -- supported sets ------------------------------------------------------------------

@dataclass(frozen=True)
class SupportedSet:
    """A set with a declared support function and no action."""

    elems: tuple
    supp: Callable
    name: str = ""

    def is_morphism_to(self, other: "SupportedSet", f: Callable) -> bool:
        """s'(f(x)) ⊆ s(x) for every element."""
        return all(other.supp(f(x)) <= self.supp(x) for x in self.elems)


def underlying_supported(X: NomSet, n: int) -> SupportedSet:
    return SupportedSet(tuple(X.stage_elements(n)), lambda x: support(X, x), X.name)
