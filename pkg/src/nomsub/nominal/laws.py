"""Law checks on the nominal side: the tensor ◇ and its variants, the bridges to
presheaves, and renaming sets."""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..atoms import all_perms, all_renamings, extend_bijection
from ..errors import NonEquivariant, NotRelevant, NotSupportPreserving
from ..finset import BIJ, FIN, INJ, SURJ
from ..presheaf.checks import preimages_witness
from ..presheaf.core import NatTrans, product_psh, representable
from ..presheaf.corpus import random_presheaf
from ..report import law
from . import bridges as BR
from .core import FinPowerset, FreshProduct, Product, Tuples, corpus, least_support_oracle, orbit_reps, \
    support, terminal
from .hom import HomSet, constant_map, curry, factorization_support, hom_support, padded, uncurry
from .renaming import FreeGroup, RenTensor, counterexamples, ren_least_support_oracle, ren_oracle_report, \
    ren_support
from .tensor import associator, bijection_report, left_unitor, left_unitor_inv, oracle_report, \
    pentagon_witness, right_unitor, right_unitor_inv, tensor, tensor_map
from .uniform import UniformDay, UniformHom, comparison_report, symmetry, uniform_from_presheaf, uniform_uncurry

NOM = corpus()


def _bij_witness(f, S, T, stages, inverse=None):
    """First stage where f is not a bijection S -> T (or the inverse fails)."""
    for n in stages:
        r = bijection_report(f, S, T, n, inverse)
        if not (r["bijective"] and r["inverse_ok"]):
            return r
    return None


def _iso_witness(alpha: NatTrans):
    w = alpha.naturality_witness()
    if w is not None:
        return {"naturality": repr(w)}
    if not alpha.is_bijective():
        return {"source": alpha.source.sizes(), "target": alpha.target.sizes()}
    return None


def _equivariance_witness(f, S, T, n):
    for pi in all_perms(range(n)):
        for x in S.stage_elements(n):
            if f(S.act(pi, x)) != T.act(pi, f(x)):
                return {"elem": S.show(x), "perm": str(pi)}
    return None


# -- substitution tensor -------------------------------------------------------------

@dataclass
class NomConfig:
    stage: int = 4
    support_stage: int = 3
    pentagon_samples: int = 60
    random_classes: int = 100
    seed: int = 0
    oracle_pairs: tuple = (("A", "A"), ("A", "A*2"), ("A", "PfA@1"), ("A*2", "A"), ("A*2", "A*2"),
                           ("A*2", "PfA@1"), ("PfA@2", "A"), ("PfA@2", "A*2"), ("PfA@2", "PfA@1"),
                           ("A^2", "A"), ("A^2", "A*2"), ("A^2", "PfA@1"))
    unit_sets: tuple = ("1", "A", "A*2", "A^2", "PfA@2", "Lam@depth1")
    triples: tuple = (("A", "A", "A"), ("A*2", "A", "PfA@1"), ("PfA@2", "A*2", "A"), ("A^2", "PfA@1", "A"),
                      ("A", "A*2", "A*2"), ("PfA@1", "PfA@2", "A"))
    quadruples: tuple = (("A*2", "A", "PfA@1", "A"), ("PfA@2", "A*2", "A", "A"), ("A", "A^2", "A", "PfA@1"))


def support_laws(cfg: NomConfig) -> list:
    n = cfg.support_stage
    bad = None
    checked = 0
    for name in ("2", "A", "A*2", "A^2", "PfA@2", "Lam@depth1", "A*A", "A+1"):
        X = NOM[name]
        for x in X.stage_elements(n):
            checked += 1
            if support(X, x) != least_support_oracle(X, x) and bad is None:
                bad = {"set": name, "elem": X.show(x)}
    out = [law("swap-test support is least", bad, {"stage": n, "extra_atoms": 2}, elements=checked)]

    counts = {"A {a,b}": len(orbit_reps(NOM["A"], [0, 1])),
              "PfA {a,b}": len(orbit_reps(NOM["PfA@2"], [0, 1])),
              "A*2 stage 3": len(orbit_reps(NOM["A*2"], range(3)))}
    want = {"A {a,b}": 1, "PfA {a,b}": 3, "A*2 stage 3": 1}
    elems = len(NOM["A*2"].stage_elements(3))
    out.append(law("orbit counts", None if counts == want and elems == 6 else {"got": counts, "elements": elems},
                   {"stage": 3}, orbits=counts))
    bad = [m for m in range(cfg.stage + 1) if len(NOM["A*A"].stage_elements(m)) != m * (m - 1)]
    out.append(law("|A * A| = n(n-1)", {"stages": bad} if bad else None, {"stage": cfg.stage}))
    return out


def oracle_laws(cfg: NomConfig) -> list:
    out = []
    for kind in ("sub", "cap"):
        worst, raws = None, 0
        for x, y in cfg.oracle_pairs:
            for n in range(cfg.stage + 1):
                r = oracle_report(tensor(NOM[x], NOM[y], kind), n)
                raws += r["raw"]
                if worst is None and (r["search_mismatches"] or r["canonical_mismatches"]
                                      or r["classes"] != r["enumerated"]):
                    worst = r
        sym = "◇" if kind == "sub" else "◇̂"
        out.append(law(f"π-search = closure oracle ({sym})", worst, {"stage": cfg.stage},
                       pairs=len(cfg.oracle_pairs), raw_representatives=raws))
    return out


def class_examples() -> list:
    P, A2, A = NOM["PfA@2"], NOM["A*2"], NOM["A"]
    Y = NOM["A*2"]
    ya, yb = (4, 5), (6, 7)
    T = tensor(P, Y)
    ab, cd = frozenset({0, 1}), frozenset({2, 3})
    rename = T.make(ab, {0: ya, 1: yb}) == T.make(cd, {2: ya, 3: yb})
    swap = T.make(ab, {0: ya, 1: yb}) == T.make(ab, {1: ya, 0: yb})
    S = tensor(A2, A)
    ordered = S.make((0, 1), {0: 2, 1: 3}) != S.make((0, 1), {0: 3, 1: 2})
    one = tensor(A, Y).make(0, {0: (2, 3)})
    single = tensor(A, Y).class_support(one) == {2, 3}
    out = [law("{a,b}[a↦ya, b↦yb] = {c,d}[c↦ya, d↦yb]", None if rename else {}, {}),
           law("{a,b}[a↦ya, b↦yb] = {a,b}[b↦ya, a↦yb]", None if swap else {}, {}),
           law("(a,b)[a↦c, b↦d] ≠ (a,b)[a↦d, b↦c]", None if ordered else {}, {}),
           law("supp a[a↦(c,d)] = {c,d}", None if single else {}, {})]
    return out


def class_structure_laws(cfg: NomConfig) -> list:
    rng = random.Random(cfg.seed)
    pairs = [("A*2", "PfA@1"), ("PfA@2", "A*2"), ("A^2", "A"), ("Lam@depth1", "A")]
    w_supp = w_act = None
    for i in range(cfg.random_classes):
        x, y = pairs[i % len(pairs)]
        for kind in ("sub", "cap"):
            T = tensor(NOM[x], NOM[y], kind)
            c = T.sample(rng)
            if w_supp is None and support(T, c) != T.class_support(c):
                w_supp = {"class": T.show(c), "kind": kind}
            xs, g = T.parts(c)
            pi = extend_bijection(dict(zip(range(6), rng.sample(range(6), 6))))
            moved = T.make(xs, {a: T.Y.act(pi, v) for a, v in g.items()})
            if w_act is None and T.act(pi, c) != moved:
                w_act = {"class": T.show(c), "perm": str(pi)}
    b = {"samples": cfg.random_classes}
    return [law("supp x[γ] = ⋃ supp γ(a) (swap test)", w_supp, b),
            law("π·x[γ] = x[π·γ]", w_act, b)]


def unit_laws(cfg: NomConfig) -> list:
    stages = range(cfg.stage + 1)
    out = []
    A = NOM["A"]
    for name in cfg.unit_sets:
        Y = NOM[name]
        T = tensor(A, Y)
        out.append(law(f"left unit A◇{name} ≅ {name}", _bij_witness(left_unitor(T), T, Y, stages, left_unitor_inv(T)),
                       {"stage": cfg.stage}))
        T = tensor(Y, A)
        out.append(law(f"right unit {name}◇A ≅ {name}",
                       _bij_witness(right_unitor(T), T, Y, stages, right_unitor_inv(T)), {"stage": cfg.stage}))
    return out


def associator_laws(cfg: NomConfig) -> list:
    out = []
    for x, y, z in cfg.triples:
        LHS, RHS, fwd, bwd = associator(NOM[x], NOM[y], NOM[z])
        w = _bij_witness(fwd, LHS, RHS, range(cfg.stage + 1), bwd)
        out.append(law(f"associator ({x}◇{y})◇{z} ≅ {x}◇({y}◇{z})", w, {"stage": cfg.stage}))
    total, w = 0, None
    for i, (a, b, c, d) in enumerate(cfg.quadruples):
        total += cfg.pentagon_samples
        w = w or pentagon_witness(NOM[a], NOM[b], NOM[c], NOM[d], cfg.pentagon_samples, cfg.seed + i)
    out.append(law("pentagon", w, {"samples": total, "quadruples": len(cfg.quadruples)}))
    return out


# curried maps: (name, tensor, hom, f)
def _curry_cases():
    A, A2, P2 = NOM["A"], NOM["A*2"], NOM["PfA@2"]
    L1 = NOM["Lam@depth1"]
    P4 = FinPowerset(4)
    T1 = tensor(A, A2)
    T2 = tensor(A2, A)
    T3 = tensor(A2, P2)
    T4 = tensor(L1, A)
    union = lambda c: frozenset().union(*c[1])
    return [("left unitor A◇A*2 → A*2", T1, HomSet(A2, A2), left_unitor(T1), A2),
            ("right unitor A*2◇A → A*2", T2, HomSet(A, A2), right_unitor(T2), A2),
            ("union A*2◇PfA@2 → Pf", T3, HomSet(P2, P4), union, P4),
            ("renaming Lam◇A → Lam", T4, HomSet(A, L1), right_unitor(T4), L1)]


def curry_laws(cfg: NomConfig) -> list:
    out = []
    n = cfg.support_stage
    for name, T, H, f, Z in _curry_cases():
        g = curry(f, T, name)
        classes = [c for m in range(n + 1) for c in T.stage_elements(m)]
        xs = [x for m in range(n + 1) for x in T.X.stage_elements(m)]
        w = None
        try:
            from .hom import check_equivariant
            check_equivariant(f, T, Z, stage=n)
        except NonEquivariant as e:
            w = {"non_equivariant": str(e)}
        for choice in (0, 1, 2):
            f2 = uncurry(padded(g, T), T, choice=choice)
            bad = next((T.show(c) for c in classes if uncurry(g, T)(c) != f(c) or f2(c) != f(c)), None)
            if w is None and bad is not None:
                w = {"direction": "uncurry∘curry", "class": bad, "choice": choice}
        bad = next((T.X.show(x) for x in xs if not H.equal(curry(uncurry(g, T), T)(x), g(x))), None)
        if w is None and bad is not None:
            w = {"direction": "curry∘uncurry", "elem": bad}
        out.append(law(f"curry/uncurry round trip: {name}", w, {"stage": n},
                       classes=len(classes), exact=H.is_exact(len(support(T.X, xs[-1])))))
        bad = None
        for x in xs:
            h = g(x)
            s = support(T.X, x)
            if not (hom_support(H, h) == factorization_support(H, h) == s):
                bad = {"elem": T.X.show(x), "swap": sorted(hom_support(H, h)),
                       "factorization": sorted(factorization_support(H, h)), "supp": sorted(s)}
                break
        out.append(law(f"reduction support = supp x: {name}", bad, {"stage": n}))

    # naturality in X: curry(f∘(h◇id)) = curry(f)∘h for the swap h on A*2
    name, T, H, f, _ = _curry_cases()[2]
    h = lambda t: (t[1], t[0])
    fh = lambda c: f(tensor_map(T, T, h, None)(c))
    bad = next((x for m in range(n + 1) for x in T.X.stage_elements(m)
                if not H.equal(curry(fh, T)(x), curry(f, T)(h(x)))), None)
    out.append(law("curry natural in X (swap on A*2)", None if bad is None else {"elem": str(bad)}, {"stage": n}))
    return out


def hom_laws(cfg: NomConfig) -> list:
    A2, D = NOM["A*2"], NOM["2"]
    H = HomSet(A2, D)
    k = constant_map(1)
    out = [law("constant map has empty support", None if hom_support(H, k) == frozenset() else {}, {})]
    ce = counterexamples()[1]["witness"]
    out.append(law("eq map γ(a) = γ(b) has support {a,b}", None if ce["supp_f"] == [0, 1] else ce, {}))

    # (π·f)(γ) = f(γπ) for curried maps
    _, T, Hc, f, _ = _curry_cases()[2]
    g = curry(f, T)
    w = None
    for x in T.X.stage_elements(3):
        fx = g(x)
        for pi in all_perms(range(4)):
            pf = fx.act(pi)
            for gam in Hc.family(pf.positions):
                pulled = {a: gam[pi(a)] for a in fx.positions}
                if pf(gam) != fx(pulled) and w is None:
                    w = {"elem": T.X.show(x), "perm": str(pi)}
    out.append(law("(π·f)(γ) = f(γπ)", w, {"stage": 3}))
    return out


def captureful_laws(cfg: NomConfig) -> list:
    T = tensor(NOM["A*2"], NOM["A"], "cap")
    A2 = Tuples(2)
    w = _bij_witness(right_unitor(T, A2), T, A2, range(cfg.stage + 1))
    n3, m3 = len(T.stage_elements(3)), len(NOM["A*2"].stage_elements(3))
    return [law("A*2 ◇̂ A ≅ A²", w, {"stage": cfg.stage}),
            law("◇̂ has no right unit: |A*2 ◇̂ A| > |A*2| at stage 3", None if n3 > m3 else {"tensor": n3, "A*2": m3},
                {"stage": 3}, tensor=n3, fresh_pairs=m3)]


def uniform_laws(cfg: NomConfig) -> tuple:
    """Laws for ⊗ and ⊸⊗, plus a note on the subset reading of ⊗."""
    P, A2, P1 = NOM["PfA@2"], NOM["A*2"], NOM["PfA@1"]
    n = cfg.stage
    out = []
    U, V = UniformDay(P, A2), UniformDay(A2, P)
    fwd, back = symmetry(U, V), symmetry(V, U)
    out.append(law("⊗ symmetry PfA@2 ⊗ A*2 ≅ A*2 ⊗ PfA@2",
                   _bij_witness(fwd, U, V, range(n + 1), back) or _equivariance_witness(fwd, U, V, 3), {"stage": n}))

    w = None
    for x, y in (("A", "PfA@1"), ("A*2", "A"), ("PfA@2", "A")):
        U, up, to_upper = uniform_from_presheaf(NOM[x], NOM[y], n)
        w = w or _bij_witness(to_upper, U, up, range(n + 1)) or _equivariance_witness(to_upper, U, up, 3)
    out.append(law("X ⊗ Y ≅ I^(I_*X ⊗ I_*Y)", w, {"stage": n}))

    T = tensor(A2, P, "uniform")
    w = None
    for c in T.stage_elements(3):
        for pi in all_perms(range(3)):
            if T.violation(list(T.act(pi, c)[1])) is not None and w is None:
                w = {"class": T.show(c), "perm": str(pi)}
    out.append(law("⊗ ⊆ ◇ closed under the action", w, {"stage": 3}))

    Tu = tensor(A2, P1, "uniform")
    H = UniformHom(P1, FinPowerset(4))
    f = lambda c: frozenset().union(*c[1])
    g = curry(f, Tu)
    w = None
    for c in [c for m in range(4) for c in Tu.stage_elements(m)]:
        if (uniform_uncurry(g, Tu)(c) != f(c) or uniform_uncurry(padded(g, Tu), Tu)(c) != f(c)) and w is None:
            w = {"direction": "uncurry∘curry", "class": Tu.show(c)}
    for x in A2.stage_elements(3):
        if not H.equal(curry(uniform_uncurry(g, Tu), Tu)(x), g(x)) and w is None:
            w = {"direction": "curry∘uncurry", "elem": A2.show(x)}
    out.append(law("⊸⊗ curry/uncurry round trip (union)", w, {"stage": 3}))

    note = {"subset_form_vs_day_form": [comparison_report(P, A2, n), comparison_report(A2, P, n)]}
    return out, note


def nom_substitution(cfg: NomConfig | None = None) -> tuple:
    cfg = cfg or NomConfig()
    out = support_laws(cfg) + oracle_laws(cfg) + class_examples() + class_structure_laws(cfg)
    out += unit_laws(cfg) + associator_laws(cfg) + curry_laws(cfg) + hom_laws(cfg) + captureful_laws(cfg)
    uni, note = uniform_laws(cfg)
    return out + uni, note


# -- bridges -----------------------------------------------------------------------------

@dataclass
class BridgeConfig:
    bound: int = 4
    species_bound: int = 3
    random_species: int = 10
    seed: int = 0
    fresh_pairs: tuple = (("A", "A"), ("A", "PfA@2"), ("A*2", "A"), ("PfA@1", "PfA@1"), ("1", "A*2"))
    round_trip_sets: tuple = ("1", "A", "A*2", "A^2", "PfA@2", "Lam@depth1")
    kleisli_pairs: tuple = (("A", "PfA@2"), ("A*2", "A"), ("PfA@1", "A*2"), ("A^2", "A"))


def bridge_laws(cfg: BridgeConfig | None = None) -> list:
    cfg = cfg or BridgeConfig()
    b = cfg.bound
    stages = range(b + 1)
    bounds = {"bound": b}
    out = []

    w = next((_iso_witness(BR.fresh_product_bridge(NOM[x], NOM[y], b)) for x, y in cfg.fresh_pairs
              if _iso_witness(BR.fresh_product_bridge(NOM[x], NOM[y], b))), None)
    out.append(law("I_*X ⊕ I_*Y ≅ I_*(X * Y)", w, bounds, pairs=len(cfg.fresh_pairs)))
    one_x = FreshProduct(terminal(), NOM["A*2"])
    out.append(law("1 * X ≅ X", _bij_witness(lambda p: p[1], one_x, NOM["A*2"], stages), bounds))

    w = None
    for name in cfg.round_trip_sets:
        X = NOM[name]
        w = w or _bij_witness(BR.upper_of_star(X), BR.i_upper(BR.i_star(X, b)), X, stages)
    out.append(law("I^ I_* X ≅ X", w, bounds, sets=list(cfg.round_trip_sets)))

    w = None
    for k in range(4):
        up = BR.i_upper(representable(INJ, b, k))
        to_tuple = lambda e: tuple(e[0][i] for i in e[1])
        w = w or _bij_witness(to_tuple, up, Tuples(k, injective=True), stages) \
            or _equivariance_witness(to_tuple, up, Tuples(k, injective=True), 3)
    out.append(law("I^(yA) ≅ A^{*A}", w, bounds, sizes=[0, 1, 2, 3]))

    # Nom= ≃ PSh 𝔹
    rng = random.Random(cfg.seed)
    w = None
    for _ in range(cfg.random_species):
        F = random_presheaf(BIJ, cfg.species_bound, rng)
        w = w or _iso_witness(BR.species_roundtrip(F))
    out.append(law("F ≅ 𝒮∐F on random species", w, {"bound": cfg.species_bound, "samples": cfg.random_species}))
    w = None
    for name in cfg.round_trip_sets:
        X = NOM[name]
        C = BR.coprod(BR.species_of(X, b))
        w = w or _bij_witness(BR.coprod_of_species(X), C, X, stages)
    out.append(law("∐𝒮X ≅ X", w, bounds, sets=list(cfg.round_trip_sets)))
    A = NOM["A"]
    term = lambda x: ()
    sp = BR.is_support_preserving(term, A, terminal(), 3)
    try:
        BR.species_map(term, A, terminal(), 3)
        raised = False
    except NotSupportPreserving:
        raised = True
    out.append(law("terminal map A → 1 is not support-preserving", None if not sp and raised else
                   {"support_preserving": sp, "raised": raised}, {"stage": 3}))

    # Kleisli and writer
    reps = [BR.kleisli_report(NOM[x], NOM[y], b) for x, y in cfg.kleisli_pairs]
    bad = next((r for r in reps if not r["bijective"]), None)
    out.append(law("Nom(X, Y) ≅ Nom=(X, RY) by transposition", bad, bounds,
                   counts={f"{r['X']}→{r['Y']}": r["nom_maps"] for r in reps}))
    w = None
    for name in cfg.round_trip_sets:
        X = NOM[name]
        ident = BR.kleisli_transpose(lambda x: x, X)
        if not BR.is_support_preserving(ident, X, BR.RSet(X), b) and w is None:
            w = {"set": name}
    out.append(law("transpose of id is support-preserving", w, bounds))

    w = None
    for name in cfg.round_trip_sets:
        X = NOM[name]
        fwd, bwd, target = BR.writer_iso(X)
        w = w or _bij_witness(fwd, BR.RSet(X, extra=b), target, stages, bwd) or BR.writer_monad_witness(X, 3)
    fwd, _, _ = BR.writer_iso(A)
    example = fwd((0, frozenset({0, 1}))) == (frozenset({1}), 0)
    out.append(law("RX ≅ 1= * X, compatible with the monads", w or (None if example else {"example": False}),
                   bounds))
    R1 = BR.RSet(terminal(), extra=b)
    out.append(law("R1 ≅ PfA", _bij_witness(lambda e: e[1], R1, FinPowerset(8), stages), bounds))

    reps = [BR.eq_universal_report(NOM[w_], NOM[x], NOM[y])
            for w_, x, y in (("A", "A", "PfA@1"), ("A*2", "A^2", "PfA@2"), ("PfA@2", "PfA@2", "PfA@2"))]
    bad = next((r for r in reps if not (r["product_ok"] and r["terminal_ok"])), None)
    out.append(law("×= and 1= universal in Nom=", bad, {}))

    w = None
    for x, y in (("A", "PfA@2"), ("A^2", "A"), ("PfA@1", "PfA@1")):
        P, Q = BR.i_star(NOM[x], 3, FIN), BR.i_star(NOM[y], 3, FIN)
        w = w or _iso_witness(BR.sum_is_product_bridge(P, Q))
        XY = Product(NOM[x], NOM[y])
        w = w or _bij_witness(BR.upper_of_star(XY), BR.i_upper(product_psh(P, Q)), XY, range(4))
    out.append(law("Day ⊕ over 𝔽 = product, carried to X × Y", w, {"bound": 3}))
    return out


# -- renaming sets --------------------------------------------------------------------

@dataclass
class RenConfig:
    stage: int = 4
    support_stage: int = 3
    bound: int = 3
    random_presheaves: int = 10
    seed: int = 0
    oracle_pairs: tuple = (("A", "A"), ("A", "PfA@1"), ("PfA@2", "A"), ("PfA@2", "PfA@1"), ("A^2", "A"),
                           ("A^2", "PfA@1"), ("Lam@depth1", "A"))
    relevant: tuple = ("A", "A^2", "PfA@2", "Lam@depth1", "A+1")


def _ren_equivariance_witness(f, S, T, n):
    for rho in all_renamings(range(n)):
        for x in S.stage_elements(n):
            if f(S.act(rho, x)) != T.act(rho, f(x)):
                return {"elem": S.show(x), "rho": str(rho)}
    return None


def renaming_laws(cfg: RenConfig | None = None) -> list:
    cfg = cfg or RenConfig()
    out = []
    for ce in counterexamples():
        out.append(law(f"counterexample {ce['name']}", None if ce["verified"] else ce["witness"], {},
                       counterexample=ce))

    G = FreeGroup(2)
    n = cfg.support_stage
    bad, checked = None, 0
    for X in [NOM[k] for k in cfg.relevant] + [G]:
        for x in X.stage_elements(n):
            checked += 1
            if ren_support(X, x) != ren_least_support_oracle(X, x) and bad is None:
                bad = {"set": X.name, "elem": X.show(x)}
    out.append(law("collapsing-test support is least", bad, {"stage": n}, elements=checked))

    worst, raws = None, 0
    for x, y in cfg.oracle_pairs:
        for m in range(cfg.stage + 1):
            r = ren_oracle_report(RenTensor(NOM[x], NOM[y]), m)
            raws += r["raw"]
            if worst is None and (r["search_mismatches"] or r["canonical_mismatches"]
                                  or r["classes"] != r["enumerated"]):
                worst = r
    out.append(law("π-search = closure oracle (Ren ◇)", worst, {"stage": cfg.stage},
                   pairs=len(cfg.oracle_pairs), raw_representatives=raws))

    T = RenTensor(NOM["A^2"], NOM["A"])
    merged = T.make((0, 1), {0: 2, 1: 2}) == T.make((0, 0), {0: 2})
    out.append(law("(a,b)[a↦c, b↦c] = (a,a)[a↦c]", None if merged else {}, {}))

    from .bridges import relevance_witness
    w = next(({"set": k, **relevance_witness(NOM[k], 4 if NOM[k].max_support <= 2 else 3)}
              for k in cfg.relevant if relevance_witness(NOM[k], 4 if NOM[k].max_support <= 2 else 3)), None)
    out.append(law("corpus renaming sets are relevant", w, {"stage": 4}, sets=list(cfg.relevant)))
    gw = relevance_witness(G, 3)
    out.append(law("FreeGroup@2 is not relevant", None if gw else {"relevant": True}, {"stage": 3}, counterexample=gw))

    w = None
    for x, y in (("A", "PfA@1"), ("PfA@2", "A"), ("A^2", "A")):
        T = RenTensor(NOM[x], NOM[y])
        w = w or relevance_witness(T, 3)
        for c in T.stage_elements(3):
            if ren_support(T, c) != T.class_support(c) and w is None:
                w = {"class": T.show(c), "law": "support union"}
    out.append(law("X, Y relevant ⟹ X ◇ Y relevant, supp = ⋃ supp γ(a)", w, {"stage": 3}))

    stages = range(cfg.stage + 1)
    w = None
    for name in ("A", "A^2", "PfA@2"):
        Y = NOM[name]
        T = RenTensor(NOM["A"], Y)
        w = w or _bij_witness(left_unitor(T), T, Y, stages, left_unitor_inv(T))
        T = RenTensor(Y, NOM["A"])
        w = w or _bij_witness(right_unitor(T), T, Y, stages, right_unitor_inv(T)) \
            or _ren_equivariance_witness(right_unitor(T), T, Y, 3)
    out.append(law("Ren ◇ unit isos with unit A", w, {"stage": cfg.stage}))

    # Relev= ≃ PSh 𝕊
    b = cfg.bound
    rng = random.Random(cfg.seed)
    w = None
    randoms = [random_presheaf(SURJ, b, rng) for _ in range(cfg.random_presheaves)]
    for F in randoms:
        w = w or _iso_witness(BR.species_roundtrip(F))
    out.append(law("F ≅ 𝒮^𝕊∐^𝕊F on random 𝕊-presheaves", w, {"bound": b, "samples": len(randoms)}))
    w = None
    for name in ("A", "A^2", "PfA@2"):
        X = NOM[name]
        C = BR.coprod(BR.species_of(X, b, SURJ))
        w = w or _bij_witness(BR.coprod_of_species(X), C, X, range(b + 1)) \
            or _ren_equivariance_witness(BR.coprod_of_species(X), C, X, 3)
    out.append(law("∐^𝕊𝒮^𝕊X ≅ X", w, {"bound": b}))
    try:
        BR.species_of(G, b, SURJ)
        raised = None
    except NotRelevant as e:
        raised = str(e)
    out.append(law("𝒮^𝕊(FreeGroup@2) raises NotRelevant", None if raised else {"raised": False}, {"bound": b}))

    # preimages: relevance sets ⟹ I_* preserves them; preimage-preserving ⟹ I^ relevant
    w = next(({"set": k} for k in cfg.relevant if preimages_witness(BR.i_star(NOM[k], b, FIN))), None)
    out.append(law("I_*X preserves preimages for relevance sets", w, {"bound": b}))
    gw = preimages_witness(BR.i_star(G, b, FIN))
    out.append(law("I_*(FreeGroup@2) fails preimages", None if gw else {"preserves": True}, {"bound": b},
                   counterexample=repr(gw)))
    w, used = None, 0
    for F in randoms:
        P = BR.i_star(BR.coprod(F), b, FIN)
        if preimages_witness(P) is not None:
            w = w or {"source": F.name, "law": "I_*∐^𝕊F preserves preimages"}
            continue
        used += 1
        rw = relevance_witness(BR.i_upper(P), 3)
        if rw is not None and w is None:
            w = {"source": F.name, **rw}
    out.append(law("preimage-preserving 𝔽-presheaves from 𝕊 give relevance sets", w, {"bound": b}, presheaves=used))

    # Kleisli transposition for relevance sets: f_= is Ren-equivariant and support-preserving
    maps = [("A", "PfA@1", lambda a: frozenset({a})), ("A^2", "PfA@2", lambda t: frozenset(t)),
            ("PfA@2", "PfA@2", lambda s: s)]
    w = None
    for x, y, f in maps:
        X, RY = NOM[x], BR.RSet(NOM[y])
        ft = BR.kleisli_transpose(f, X)
        w = w or _ren_equivariance_witness(ft, X, RY, 3)
        if w is None and not BR.is_support_preserving(ft, X, RY, 3):
            w = {"map": f"{x} → {y}", "law": "support-preserving"}
    out.append(law("Kleisli transpose on relevance sets", w, {"stage": 3}))
    return out
