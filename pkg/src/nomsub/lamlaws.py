"""Laws of the λ-term monoid (Λ, bind, var) on Λ ◇ Λ and Λ ◇̂ Λ.

A class x[γ] in either tensor is stored as (x', g) with g[i] the term
substituted for atom i of x', so bind is plain substitution on the
representative.  The affine tensor only ever sees pairwise fresh values;
the captureful one takes arbitrary values, which is where full
simultaneous substitution lives.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import lam as L
from .atoms import all_perms
from .nominal.core import LamTerms, support
from .nominal.hom import HomSet, curry, padded, uncurry
from .nominal.renaming import RenTensor
from .nominal.tensor import associator, move_to, tensor, tensor_map
from .report import law

LAM = LamTerms(3)


@dataclass
class LambdaConfig:
    depth: int = 3               # deepest terms, sampled
    exhaustive_depth: int = 2    # enumerate every term up to here
    stage: int = 4               # permutations for equivariance
    oracle_samples: int = 500
    samples: int = 300
    seed: int = 0


def class_bind(c):
    xs, g = c
    return L.bind(xs, dict(enumerate(g)))


def worked_example() -> dict:
    """[λx. x y, [y ↦ x y]] with x, y shared free names."""
    env = {}
    t = L.parse_term("λx. x y", env)
    u = L.parse_term("x y", env)
    T = tensor(LAM, LAM, "sub")
    c = T.make(t, {env["y"]: u})
    out = class_bind(c)
    expected = L.parse_term("λz. z (x y)", env)
    names = {a: n for n, a in env.items()}
    return {"input": f"[{L.show(t, names)}, [y ↦ {L.show(u, names)}]]",
            "output": L.show(out, names), "expected": L.show(expected, names),
            "canonical": L.show(out), "verified": out == expected}


# -- generators ------------------------------------------------------------------

def _values(rng, atoms, depth, n, fresh_blocks: bool):
    """n value terms: on disjoint atom blocks when ``fresh_blocks``, else over ``atoms``."""
    out, nxt = [], 0
    for _ in range(n):
        if fresh_blocks:
            t = move_to(LAM, L.random_term(rng, range(2), depth), nxt)
            nxt += len(L.free_vars(t))
        else:
            t = L.random_term(rng, atoms, depth)
        out.append(t)
    return out


def random_class(rng, depth: int, kind: str, atoms=range(3)):
    """A raw (x, γ) with γ on supp x; pairwise fresh values for kind "sub"."""
    x = L.random_term(rng, range(2), depth)
    s = sorted(L.free_vars(x))
    vals = _values(rng, atoms, rng.randint(0, depth), len(s), kind == "sub")
    return x, dict(zip(s, vals))


def oracle_agreement(cfg: LambdaConfig) -> dict:
    """bind on classes against de Bruijn substitution, on both tensors."""
    rng = random.Random(cfg.seed)
    count, witness = 0, None
    for kind in ("cap", "sub"):
        T = tensor(LAM, LAM, kind)
        for _ in range(cfg.oracle_samples):
            x, g = random_class(rng, cfg.depth, kind)
            got, want = class_bind(T.make(x, g)), L.oracle_bind(x, g)
            count += 1
            if got != want and witness is None:
                witness = {"term": L.show(x), "sub": {f"a{a}": L.show(t) for a, t in g.items()},
                           "bind": L.show(got), "oracle": L.show(want)}
    return law("bind = de Bruijn substitution", witness,
               {"depth": cfg.depth, "samples": cfg.oracle_samples, "seed": cfg.seed}, instances=count)


def unit_laws(cfg: LambdaConfig) -> list:
    T = tensor(LAM, LAM, "cap")
    rng = random.Random(cfg.seed + 1)
    xs = list(L.terms(range(2), cfg.exhaustive_depth))
    xs += [L.random_term(rng, range(3), cfg.depth) for _ in range(cfg.samples)]
    w_right = next(({"term": L.show(x)} for x in xs
                    if class_bind(T.make(x, {a: L.var(a) for a in L.free_vars(x)})) != x), None)
    w_left = next(({"term": L.show(t)} for t in xs if class_bind(T.make(L.var(0), {0: t})) != t), None)
    b = {"depth": cfg.depth, "exhaustive_depth": cfg.exhaustive_depth, "samples": cfg.samples}
    return [law("unit: bind(x[a ↦ a]) = x", w_right, b), law("unit: bind(a[a ↦ t]) = t", w_left, b)]


def _assoc_routes(kind: str):
    LHS, RHS, fwd, _ = associator(LAM, LAM, LAM, kind)
    LL = tensor(LAM, LAM, kind)
    left = tensor_map(LHS, LL, class_bind, None)
    right = tensor_map(RHS, LL, None, class_bind)
    return LHS, (lambda u: class_bind(left(u))), (lambda u: class_bind(right(fwd(u))))


def _assoc_instances(cfg: LambdaConfig, kind: str):
    """Exhaustive outer terms and first substitutions at the exhaustive depth
    (values of height <= 1 over two atoms), then random triples at full depth."""
    rng = random.Random(cfg.seed + 1)
    pool = L.terms(range(2), 1)
    for x in L.terms(range(2), cfg.exhaustive_depth):
        s = sorted(L.free_vars(x))
        for vals in product(pool, repeat=len(s)):
            if kind == "sub":
                vals = [move_to(LAM, v, 2 * i) for i, v in enumerate(vals)]
            yield x, dict(zip(s, vals)), rng
    for _ in range(cfg.samples):
        x, g = random_class(rng, cfg.depth, kind)
        yield x, g, rng


def associativity(cfg: LambdaConfig, kind: str) -> dict:
    """bind∘(bind ◇ id) = bind∘(id ◇ bind)∘α on (Λ ◇ Λ) ◇ Λ."""
    LHS, left, right = _assoc_routes(kind)
    XY = LHS.X
    n = 0
    for x, g, rng in _assoc_instances(cfg, kind):
        w = XY.make(x, g)
        outer = sorted(support(XY, w))
        d = _values(rng, range(4), cfg.depth - 1, len(outer), kind == "sub")
        u = LHS.make(w, dict(zip(outer, d)))
        n += 1
        a, b = left(u), right(u)
        if a != b:
            return law(f"associativity ({kind})", {"class": LHS.show(u), "left": L.show(a), "right": L.show(b)},
                       {"depth": cfg.depth, "exhaustive_depth": cfg.exhaustive_depth}, instances=n)
    return law(f"associativity ({kind})", None,
               {"depth": cfg.depth, "exhaustive_depth": cfg.exhaustive_depth, "samples": cfg.samples},
               instances=n)


def _stage_classes(cfg: LambdaConfig, kind: str, count: int):
    rng = random.Random(cfg.seed + 2)
    T = tensor(LAM, LAM, kind)
    out = []
    while len(out) < count:
        x, g = random_class(rng, cfg.exhaustive_depth, kind, atoms=range(cfg.stage))
        if all(max(L.free_vars(t), default=-1) < cfg.stage for t in g.values()):
            out.append((x, g, T.make(x, g)))
    return T, out


def equivariance(cfg: LambdaConfig, kind: str) -> dict:
    T, cls = _stage_classes(cfg, kind, 60)
    perms = all_perms(range(cfg.stage))
    for _, _, c in cls:
        for pi in perms:
            if L.act(pi, class_bind(c)) != class_bind(T.act(pi, c)):
                return law(f"bind equivariant ({kind})", {"class": T.show(c), "perm": str(pi)},
                           {"stage": cfg.stage})
    return law(f"bind equivariant ({kind})", None, {"stage": cfg.stage, "perms": len(perms)}, classes=len(cls))


def representative_independence(cfg: LambdaConfig, kind: str) -> dict:
    """(π·x, γ∘π⁻¹) names the same class and binds to the same term."""
    T, cls = _stage_classes(cfg, kind, 60)
    perms = all_perms(range(cfg.stage))
    for x, g, c in cls:
        for pi in perms:
            px, pg = L.act(pi, x), {pi(a): t for a, t in g.items()}
            if T.make(px, pg) != c or L.bind(px, pg) != L.bind(x, g):
                return law(f"bind independent of representative ({kind})",
                           {"term": L.show(x), "perm": str(pi)}, {"stage": cfg.stage})
    return law(f"bind independent of representative ({kind})", None, {"stage": cfg.stage}, classes=len(cls))


def _db_beta(redex):
    ctx = sorted(L.free_vars(redex))
    _, (_, body), arg = L.to_db(redex, ctx)
    return L.from_db(L.db_shift(L.db_subst(body, {0: L.db_shift(arg, 1)}), -1), ctx)


def beta_rule(cfg: LambdaConfig) -> dict:
    """(λ. p) q through a singleton bind, against de Bruijn β."""
    rng = random.Random(cfg.seed + 3)
    for _ in range(cfg.samples):
        body = L.random_term(rng, range(2), cfg.depth - 1, k=1)
        redex = L.app(("lam", body), L.random_term(rng, range(3), cfg.depth - 1))
        if L.beta(redex) != _db_beta(redex):
            return law("β via bind", {"redex": L.show(redex)}, {"depth": cfg.depth})
    return law("β via bind", None, {"depth": cfg.depth, "samples": cfg.samples})


def curry_roundtrip(cfg: LambdaConfig) -> list:
    """uncurry(curry bind) = bind on classes; curry(uncurry g) = g as reducible
    maps, also for a g with a superfluous position."""
    T = tensor(LAM, LAM, "sub")
    H = HomSet(LamTerms(2), LamTerms(2))
    g = curry(class_bind, T, "bind")
    f1, f2 = uncurry(g, T), uncurry(padded(g, T), T, choice=3)
    rng = random.Random(cfg.seed + 4)
    w1 = w2 = None
    for _ in range(cfg.samples):
        x, gam = random_class(rng, cfg.depth, "sub")
        c = T.make(x, gam)
        if w1 is None and not (f1(c) == f2(c) == class_bind(c)):
            w1 = {"class": T.show(c)}
    for x in L.terms(range(2), 2):
        if w2 is None and not H.equal(curry(f2, T)(x), g(x)):
            w2 = {"term": L.show(x)}
    b = {"depth": cfg.depth, "samples": cfg.samples}
    return [law("uncurry∘curry = id on bind", w1, b),
            law("curry∘uncurry = id on curry(bind)", w2, {"depth": 2, "exact": H.is_exact(4)})]


def ren_curry_roundtrip(cfg: LambdaConfig) -> dict:
    """The same round trip over renamings, where values may collide."""
    T = RenTensor(LAM, LAM)
    g = curry(class_bind, T, "bind")
    f = uncurry(g, T)
    rng = random.Random(cfg.seed + 5)
    for _ in range(cfg.samples):
        x, gam = random_class(rng, min(cfg.depth, 2), "cap", atoms=range(2))
        c = T.make(x, gam)
        if f(c) != class_bind(c) or class_bind(c) != L.bind(x, gam):
            return law("renaming bind curry round trip", {"class": T.show(c)}, {"depth": 2})
    return law("renaming bind curry round trip", None, {"depth": 2, "samples": cfg.samples})


def example_law() -> dict:
    ex = worked_example()
    return law("worked example", None if ex["verified"] else ex, {}, example=ex)


def law_suite(cfg: LambdaConfig | None = None) -> list:
    cfg = cfg or LambdaConfig()
    out = [oracle_agreement(cfg), example_law(), beta_rule(cfg)]
    out += unit_laws(cfg)
    for kind in ("sub", "cap"):
        out += [associativity(cfg, kind), equivariance(cfg, kind), representative_independence(cfg, kind)]
    out += curry_roundtrip(cfg)
    out.append(ren_curry_roundtrip(cfg))
    return out
