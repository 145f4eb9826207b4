"""Finitary monads as ◇-monoids and the commutativity test through φ.

A finitary monad is given by its values on finite sets {0..n-1}, truncated
to terms of bounded size, together with fmap/unit/bind on plain Python
values.  Law checks never need results to stay inside the truncation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

from ..errors import LawViolation
from ..finset import FIN, IndexCat
from .core import NatTrans, TruncPresheaf, tabulate
from .day import DayTimes
from .subst import SubstTensor, associator, left_unitor, phi, right_unitor, tensor_map


@dataclass(frozen=True)
class FinitaryMonad:
    name: str
    terms: Callable[[int, int], list]        # (n, size) -> terms over {0..n-1}
    fmap: Callable[[Callable, object], object]
    unit: Callable[[object], object]
    bind: Callable[[object, Callable], object]
    size: int = 2
    show: Callable = repr

    def elems(self, n: int) -> list:
        return self.terms(n, self.size)

    def mult_blocks(self, x, blocks):
        """bind(x, a ↦ fmap(j_a, t_a)) for blocks (j_a table, t_a)."""
        return self.bind(x, lambda a: self.fmap(lambda b, j=blocks[a][0]: j[b], blocks[a][1]))


def _words(n, size, commutative=False):
    out = []
    for k in range(size + 1):
        for w in product(range(n), repeat=k):
            if not commutative or list(w) == sorted(w):
                out.append(w)
    return out


def _msort(w):
    w = list(w)
    return tuple(sorted(w, key=repr)) if any(not isinstance(v, int) for v in w) else tuple(sorted(w))


def identity_monad() -> FinitaryMonad:
    return FinitaryMonad("Id", lambda n, s: list(range(n)), lambda f, t: f(t), lambda a: a,
                         lambda t, k: k(t))


def maybe_monad() -> FinitaryMonad:
    return FinitaryMonad("Maybe", lambda n, s: [None] + list(range(n)),
                         lambda f, t: None if t is None else f(t), lambda a: a,
                         lambda t, k: None if t is None else k(t))


def list_monad(size: int = 2) -> FinitaryMonad:
    return FinitaryMonad("List", _words, lambda f, t: tuple(f(a) for a in t), lambda a: (a,),
                         lambda t, k: tuple(b for a in t for b in k(a)), size=size, show=list)


def multiset_monad(size: int = 2) -> FinitaryMonad:
    return FinitaryMonad("Multiset", lambda n, s: _words(n, s, True),
                         lambda f, t: _msort(f(a) for a in t), lambda a: (a,),
                         lambda t, k: _msort(b for a in t for b in k(a)), size=size, show=list)


def powerset_monad() -> FinitaryMonad:
    return FinitaryMonad("Pf", lambda n, s: [frozenset(c) for k in range(n + 1)
                                             for c in combinations(range(n), k)],
                         lambda f, t: frozenset(f(a) for a in t), lambda a: frozenset([a]),
                         lambda t, k: frozenset().union(*(k(a) for a in t)),
                         show=lambda t: sorted(t, key=repr))


def writer_monad(monoid=("", "p", "q"), op=None, unit="") -> FinitaryMonad:
    """Terms (w, a); the default monoid is {1, p, q} with the first non-unit
    letter winning, a finite non-commutative monoid."""
    op = op or (lambda u, v: u or v)
    return FinitaryMonad("Writer", lambda n, s: [(w, a) for w in monoid for a in range(n)],
                         lambda f, t: (t[0], f(t[1])), lambda a: (unit, a),
                         lambda t, k: (lambda r: (op(t[0], r[0]), r[1]))(k(t[1])))


MONADS = {
    "Id": identity_monad,
    "Maybe": maybe_monad,
    "List": list_monad,
    "Multiset": multiset_monad,
    "Pf": powerset_monad,
    "Writer": writer_monad,
}


# -- laws on monad data --------------------------------------------------------

def _kleisli_maps(T: FinitaryMonad, n: int, m: int, rng: random.Random, limit: int):
    targets = T.elems(m)
    if not targets and n:
        return []
    if len(targets) ** n <= limit:
        return [tuple(k) for k in product(targets, repeat=n)]
    return [tuple(rng.choice(targets) for _ in range(n)) for _ in range(limit)]


def monad_law_witness(T: FinitaryMonad, bound: int = 3, seed: int = 0, limit: int = 60):
    """First violated unit/associativity law on terms over stages <= bound."""
    rng = random.Random(seed)
    for n in range(bound + 1):
        for a in range(n):
            for m in range(bound + 1):
                for k in _kleisli_maps(T, n, m, rng, limit):
                    if T.bind(T.unit(a), lambda v: k[v]) != k[a]:
                        return {"law": "left unit", "a": a, "k": k}
        for t in T.elems(n):
            if T.bind(t, T.unit) != t:
                return {"law": "right unit", "t": T.show(t)}
            for m in range(bound + 1):
                for k in _kleisli_maps(T, n, m, rng, limit // 4):
                    for p in range(bound + 1):
                        for h in _kleisli_maps(T, m, p, rng, 4):
                            lhs = T.bind(T.bind(t, lambda v: k[v]), lambda v: h[v])
                            rhs = T.bind(t, lambda v: T.bind(k[v], lambda w: h[w]))
                            if lhs != rhs:
                                return {"law": "associativity", "t": T.show(t), "k": k, "h": h}
    return None


def m_otimes(T: FinitaryMonad, A: int, B: int, j: tuple, x, y):
    """m·φ on κ_{A,B}(j, x, y): the blocks j restricted to {a} × B carry y."""
    return T.mult_blocks(x, [(j[a * B:(a + 1) * B], y) for a in range(A)])


def comm_mon_witness(T: FinitaryMonad, bound: int = 3):
    """The square T_⊗A × T_⊗B -> T_⊗(A × B) against its transpose through τ.

    Pairs of A × B are encoded as a·|B| + b.  Returns None when the square
    commutes on all terms over stages <= bound.
    """
    for A in range(bound + 1):
        for B in range(bound + 1):
            ident = tuple(range(A * B))
            tau = {b * A + a: a * B + b for a in range(A) for b in range(B)}
            for s in T.elems(A):
                for t in T.elems(B):
                    top = m_otimes(T, A, B, ident, s, t)
                    bottom = T.fmap(tau.__getitem__, m_otimes(T, B, A, tuple(range(A * B)), t, s))
                    if top != bottom:
                        return {"A": A, "B": B, "s": T.show(s), "t": T.show(t),
                                "top": T.show(top), "bottom": T.show(bottom)}
    return None


def check_commutative(T: FinitaryMonad, bound: int = 3) -> None:
    w = comm_mon_witness(T, bound)
    if w is not None:
        raise LawViolation("commutativity square", w)


# -- the same monoid inside the presheaf engine ---------------------------------

def monad_presheaf(T: FinitaryMonad, cat: IndexCat = FIN, bound: int = 2) -> TruncPresheaf:
    return tabulate(cat, bound, T.elems, lambda f, t: T.fmap(f, t), name=T.name, show=T.show)


@dataclass
class PresheafMonoid:
    """A ◇-monoid (M, mult, unit) with the tensors its laws need."""

    M: TruncPresheaf
    MM: SubstTensor
    mult: NatTrans
    unit: NatTrans
    Y1: TruncPresheaf


def monoid_of(T: FinitaryMonad, M: TruncPresheaf, inner: int | None = None) -> PresheafMonoid:
    """mult: [x, (S_a, t_a)] ↦ bind(x, a ↦ S_a·t_a) and unit 𝐲1 -> M at 0 ↦ η(0).

    Raises ValueError when the truncation of M is not closed under bind.
    """
    from .core import representable
    MM = SubstTensor(M, M, inner)
    mult = NatTrans.from_function(MM, M, lambda C, e: T.mult_blocks(e[1], e[2]))
    Y1 = representable(M.cat, M.bound, 1)
    unit = NatTrans.from_function(Y1, M, lambda C, t: T.unit(t[0]))
    return PresheafMonoid(M, MM, mult, unit, Y1)


def monoid_law_report(P: PresheafMonoid, inner: int | None = None) -> list:
    """Associativity and unit squares checked elementwise; [{law, status, witness?}]."""
    M, MM, mult, unit = P.M, P.MM, P.mult, P.unit
    out = []
    L = SubstTensor(MM, M, inner)
    R = SubstTensor(M, MM, inner)
    assoc = associator(L, R)
    left = tensor_map(mult, None, L, MM)
    right = tensor_map(None, mult, R, MM)
    wit = None
    for C in range(M.bound + 1):
        for e in L.elems[C]:
            u = mult(C, left(C, e))
            v = mult(C, right(C, assoc(C, e)))
            if u != v:
                wit = {"stage": C, "elem": L.show(e), "lhs": M.show(u), "rhs": M.show(v)}
                break
        if wit:
            break
    out.append({"law": "associativity", "status": "pass" if wit is None else "fail",
                **({"witness": wit} if wit else {})})
    for law, T, lam, f, g in (
        ("left unit", SubstTensor(P.Y1, M, inner), left_unitor, unit, None),
        ("right unit", SubstTensor(M, P.Y1, inner), right_unitor, None, unit),
    ):
        via = tensor_map(f, g, T, MM).then(mult)
        lam_t = lam(T)
        wit = None
        for C in range(M.bound + 1):
            for e in T.elems[C]:
                if via(C, e) != lam_t(C, e):
                    wit = {"stage": C, "elem": T.show(e)}
                    break
            if wit:
                break
        out.append({"law": law, "status": "pass" if wit is None else "fail",
                    **({"witness": wit} if wit else {})})
    return out


def otimes_mult(P: PresheafMonoid, D: DayTimes) -> NatTrans:
    """m_⊗ = mult · φ : M ⊗ M -> M."""
    return phi(D, P.MM).then(P.mult)


def otimes_commutativity_witness(P: PresheafMonoid, D: DayTimes):
    """m_⊗ against m_⊗ precomposed with the symmetry of ⊗."""
    m = otimes_mult(P, D)
    for C in range(D.bound + 1):
        for e in D.elems[C]:
            a, b, j, x, y = e
            swapped = tuple(j[q * b + p] for p in range(b) for q in range(a))
            e2 = D.lookup(C, (b, a, swapped, y, x))
            if m(C, e) != m(C, e2):
                return {"stage": C, "elem": D.show(e), "lhs": P.M.show(m(C, e)),
                        "rhs": P.M.show(m(C, e2))}
    return None
