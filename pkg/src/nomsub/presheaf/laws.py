"""Law checks for the presheaf engine: the ◇ monoidal structure over 𝔹, 𝕀, 𝕊, 𝔽,
the ◁ identities, currying, Day units, φ, monads, and the sheaf criteria."""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

from ..errors import TruncationUnstable
from ..finset import CATEGORIES, INJ
from ..report import law, skipped
from .checks import ictx_agreement, random_subset_presheaf, subset_agreement
from .core import NatTrans, find_iso, nat_enumerate, representable
from .corpus import free_group, powerset, random_recipe
from .day import DaySum, DayTimes, day_plus
from .monads import MONADS, comm_mon_witness, monad_law_witness, monad_presheaf, monoid_law_report, monoid_of, \
    otimes_commutativity_witness
from .subst import InternalHom, SubstTensor, associator, curry, distributor, flatten_power, iterated_power, \
    left_unitor, phi, phi_well_defined_witness, right_unitor, subst_tensor, substitution_presheaf, uncurry


@dataclass
class PresheafConfig:
    bound: int = 3
    cats: tuple = ("B", "I", "S", "F")
    hom_bound: int = 2           # Nat enumeration for currying
    clean_cats: tuple = ("B", "I")
    pairs: tuple = (("y1", "Pf"), ("Pf", "y1"), ("y2", "y2"), ("y2", "Pf"), ("Pf", "y2"))
    triples: tuple = (("y1", "y2", "Pf"), ("Pf", "y1", "y1"), ("y2", "y1", "Pf"))


def pcorpus(cat, bound: int) -> dict:
    return {"y0": representable(cat, bound, 0), "y1": representable(cat, bound, 1),
            "y2": representable(cat, bound, 2), "Pf": powerset(cat, bound)}


def _iso_witness(alpha: NatTrans):
    w = alpha.naturality_witness()
    if w is not None:
        return {"naturality": repr(w)}
    if not alpha.is_bijective():
        return {"source": alpha.source.sizes(), "target": alpha.target.sizes()}
    return None


def _functoriality(P):
    w = P.functoriality_witness()
    return None if w is None else {"presheaf": P.name, "witness": repr(w)}


def tensor_laws(cat_name: str, cfg: PresheafConfig) -> list:
    """Unitors, distributor, associator and the inner-stage diagnostic over one category."""
    cat = CATEGORIES[cat_name]
    b = cfg.bound
    C = pcorpus(cat, b)
    wide = pcorpus(cat, b + 1)
    out = []
    tag = f"[{cat_name}]"
    bounds = {"cat": cat_name, "bound": b}

    diags, flagged = {}, []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationUnstable)
        for x, y in cfg.pairs:
            T = subst_tensor(wide[x], wide[y], outer=b, diagnose=True)
            diags[f"{x}◇{y}"] = T.diagnostic
            if not T.diagnostic["stable"]:
                flagged.append(f"{x}◇{y}")
    if cat_name in cfg.clean_cats:
        out.append(law(f"◇ stable under enlarging inner stages {tag}",
                       {"unstable": flagged} if flagged else None, bounds, stabilization=diags))
    else:
        out.append(law(f"◇ stabilization diagnostic {tag}", None, bounds, stabilization=diags, flagged=flagged))

    for y in ("y1", "y2", "Pf"):
        T = SubstTensor(C["y1"], C[y])
        out.append(law(f"left unit y1◇{y} ≅ {y} {tag}", _iso_witness(left_unitor(T)) or _functoriality(T), bounds))
        T = SubstTensor(C[y], C["y1"])
        out.append(law(f"right unit {y}◇y1 ≅ {y} {tag}", _iso_witness(right_unitor(T)) or _functoriality(T), bounds))

    # a distributor through a truncation-unstable tensor compares two different
    # truncations, so it is only run where every tensor involved is stable
    for x, y, z in (("y1", "Pf", "y1"), ("y1", "y2", "Pf"), ("Pf", "y1", "y2")):
        name = f"distributor ({x}⊕{y})◇{z} ≅ {x}◇{z} ⊕ {y}◇{z} {tag}"
        unstable = [p for p in (f"{x}◇{z}", f"{y}◇{z}") if p in flagged]
        if unstable:
            out.append(skipped(name, "truncation-unstable", bounds, unstable=unstable))
            continue
        X, Y, Z = C[x], C[y], C[z]
        T = SubstTensor(day_plus(X, Y), Z)
        Txz, Tyz = SubstTensor(X, Z), SubstTensor(Y, Z)
        d = distributor(T, Txz, Tyz, day_plus(Txz, Tyz))
        out.append(law(name, _iso_witness(d), bounds))

    for x, y, z in cfg.triples:
        X, Y, Z = C[x], C[y], C[z]
        L = SubstTensor(SubstTensor(X, Y), Z)
        R = SubstTensor(X, SubstTensor(Y, Z))
        out.append(law(f"associator ({x}◇{y})◇{z} ≅ {x}◇({y}◇{z}) {tag}", _iso_witness(associator(L, R)), bounds))
    return out


def triangle_witness(cat_name: str, bound: int):
    """(X ◇ 𝐲1) ◇ Y -> X ◇ (𝐲1 ◇ Y) -> X ◇ Y against ρ ◇ id."""
    from .subst import tensor_map
    cat = CATEGORIES[cat_name]
    C = pcorpus(cat, bound)
    X, Y, U = C["Pf"], C["y2"], C["y1"]
    XU, UY, XY = SubstTensor(X, U), SubstTensor(U, Y), SubstTensor(X, Y)
    L, R = SubstTensor(XU, Y), SubstTensor(X, UY)
    a = associator(L, R)
    top = a.then(tensor_map(None, left_unitor(UY), R, XY))
    side = tensor_map(right_unitor(XU), None, L, XY)
    for n in range(bound + 1):
        for e in L.elems[n]:
            if top(n, e) != side(n, e):
                return {"stage": n, "elem": L.show(e)}
    return None


def power_laws(cat_name: str, cfg: PresheafConfig) -> list:
    cat = CATEGORIES[cat_name]
    b, tag = cfg.bound, f"[{cat_name}]"
    C = pcorpus(cat, b)
    bounds = {"cat": cat_name, "bound": b}
    out = []
    for name in ("y1", "Pf"):
        X = C[name]
        out.append(law(f"0◁{name} ≅ y0 {tag}", None if find_iso(substitution_presheaf(0, X), C["y0"]) else
                       {"sizes": substitution_presheaf(0, X).sizes()}, bounds))
        out.append(law(f"1◁{name} ≅ {name} {tag}", None if find_iso(substitution_presheaf(1, X), X) else
                       {"sizes": substitution_presheaf(1, X).sizes()}, bounds))
    bad = [A for A in range(b + 1)
           if find_iso(substitution_presheaf(A, C["y1"]), representable(cat, b, A)) is None]
    out.append(law(f"A◁y1 ≅ yA {tag}", {"A": bad} if bad else None, bounds))
    bad = []
    for A in range(2, b + 1):
        for name in ("y1", "Pf"):
            P, I = substitution_presheaf(A, C[name]), iterated_power(A, C[name])
            m = NatTrans.from_function(I, P, lambda n, e, A=A, P=P: P.lookup(n, flatten_power(A, n, e)))
            if _iso_witness(m):
                bad.append(f"{A}◁{name}")
    out.append(law(f"A◁X ≅ iterated ⊕ {tag}", {"failing": bad} if bad else None, bounds))
    return out


def currying_laws(cat_name: str, cfg: PresheafConfig) -> list:
    """Nat(X ◇ Y, Z) ≅ Nat(X, Y ⊸ Z) by the explicit curry/uncurry pair."""
    cat = CATEGORIES[cat_name]
    b, tag = cfg.hom_bound, f"[{cat_name}]"
    C = pcorpus(cat, b)
    out = []
    for x, y, z in (("y1", "y1", "Pf"), ("Pf", "y1", "Pf"), ("y1", "Pf", "y1")):
        X, Y, Z = C[x], C[y], C[z]
        T, H = SubstTensor(X, Y), InternalHom(Y, Z)
        left, right = nat_enumerate(T, Z), nat_enumerate(X, H)
        w = None
        for a in left:
            if uncurry(curry(a, T, H), T, H) != a:
                w = {"direction": "uncurry∘curry"}
                break
        for g in right:
            if w is None and curry(uncurry(g, T, H), T, H) != g:
                w = {"direction": "curry∘uncurry"}
        if w is None and len(left) != len(right):
            w = {"nat_tensor": len(left), "nat_hom": len(right)}
        out.append(law(f"curry/uncurry Nat({x}◇{y}, {z}) ≅ Nat({x}, {y}⊸{z}) {tag}", w,
                       {"cat": cat_name, "bound": b}, count=len(left)))
    return out


def day_laws(cfg: PresheafConfig) -> list:
    out = []
    b = cfg.bound
    for name in cfg.cats:
        cat = CATEGORIES[name]
        y1 = representable(cat, b, 1)
        iso = find_iso(DayTimes(y1, y1, 1), y1)
        out.append(law(f"y1 ⊗ y1 ≅ y1 [{name}]", None if iso else {"sizes": DayTimes(y1, y1, 1).sizes()},
                       {"cat": name, "bound": b}))
    y1 = representable(INJ, b, 1)
    s = DaySum([y1, y1]).sizes()
    want = [n * (n - 1) for n in range(b + 1)]
    out.append(law("(y1 ⊕ y1)(n) = n(n-1) [I]", None if s == want else {"sizes": s, "expected": want}, {"bound": b}))
    F = CATEGORIES["F"]
    bad = []
    for x, y in (("y1", "y1"), ("y1", "y2"), ("y2", "y2")):
        C = pcorpus(F, b)
        inner = max(int(x[1]), int(y[1]))
        D, T = DayTimes(C[x], C[y], inner), SubstTensor(C[x], C[y])
        a = phi(D, T)
        w = phi_well_defined_witness(D, a) or a.naturality_witness()
        if w is not None or not a.is_injective():
            bad.append({"pair": f"{x},{y}", "witness": repr(w)})
    out.append(law("φ: X ⊗ Y -> X ◇ Y well defined, natural, injective on representables [F]",
                   bad or None, {"bound": b}))
    return out


def monad_laws(cfg: PresheafConfig) -> list:
    out = []
    b = cfg.bound
    for name, mk in MONADS.items():
        out.append(law(f"monad laws {name}", monad_law_witness(mk(), b), {"bound": b}))
    w = comm_mon_witness(MONADS["Multiset"](), b)
    out.append(law("commutativity square holds for Multiset", w, {"bound": b}))
    w = comm_mon_witness(MONADS["List"](), b)
    out.append(law("commutativity square fails for List", None if w else {"reason": "square commuted"}, {"bound": b},
                   counterexample=w))
    F = CATEGORIES["F"]
    for name in ("Pf", "Maybe", "Id", "Writer"):
        T = MONADS[name]()
        P = monoid_of(T, monad_presheaf(T, F, 2))
        rep = monoid_law_report(P)
        bad = [r for r in rep if r["status"] != "pass"]
        out.append(law(f"◇-monoid laws for {name} [F]", bad or None, {"bound": 2}))
    for name, commutes in (("Pf", True), ("Writer", False)):
        T = MONADS[name]()
        M = monad_presheaf(T, F, 2)
        w = otimes_commutativity_witness(monoid_of(T, M), DayTimes(M, M, 2))
        verdict_ok = (w is None) == commutes
        out.append(law(f"m·φ {'commutes' if commutes else 'does not commute'} for {name} [F]",
                       None if verdict_ok else {"witness": w}, {"bound": 2}, counterexample=w))
    return out


def presheaf_monoidal(cfg: PresheafConfig | None = None) -> list:
    cfg = cfg or PresheafConfig()
    out = []
    for c in cfg.cats:
        out += tensor_laws(c, cfg)
        out += power_laws(c, cfg)
        out += currying_laws(c, cfg)
        out.append(law(f"triangle [{c}]", triangle_witness(c, cfg.bound), {"cat": c, "bound": cfg.bound}))
    out += day_laws(cfg)
    out += monad_laws(cfg)
    return out


# -- sheaves -------------------------------------------------------------------

@dataclass
class SheafConfig:
    bound: int = 3
    samples: int = 30
    seed: int = 0
    ambient: int = 3
    cats: tuple = field(default=("I",))


def sheaf_laws(cfg: SheafConfig | None = None) -> list:
    """Intersection preservation against the ℐ-sheaf condition on random
    presheaves, and against 𝒪-sheaf plus ℐ-separated on subset posets."""
    cfg = cfg or SheafConfig()
    out = []
    rng = random.Random(cfg.seed)
    for name in cfg.cats:
        cat = CATEGORIES[name]
        rows, bad, sheaves = [], [], 0
        for _ in range(cfg.samples):
            r = random_recipe(cat, cfg.bound, rng)
            rep = ictx_agreement(r, cat, cfg.bound)
            rows.append(rep)
            sheaves += rep["sheaf"]
            if not rep["agree"]:
                bad.append({k: rep[k] for k in ("name", "intersections", "sheaf")})
        out.append(law(f"intersection-preserving ⇔ ℐ-sheaf [{name}]", bad or None,
                       {"bound": cfg.bound, "covers": cfg.bound + 1, "tabulated": 2 * (cfg.bound + 1), "samples": cfg.samples, "seed": cfg.seed},
                       sheaves=sheaves, samples=len(rows)))
    rows, bad, ip = [], [], 0
    for _ in range(cfg.samples):
        P = random_subset_presheaf(cfg.ambient, rng)
        rep = subset_agreement(P)
        rows.append(rep)
        ip += rep["intersections"]
        if not rep["agree"]:
            bad.append(rep)
    out.append(law("intersection-preserving ⇔ 𝒪-sheaf ∧ ℐ-separated [Isub]", bad or None,
                   {"ambient": cfg.ambient, "samples": cfg.samples, "seed": cfg.seed},
                   intersection_preserving=ip, samples=len(rows)))
    G = free_group(CATEGORIES["F"], cfg.bound)
    from .checks import intersections_witness, preimages_witness
    ok = intersections_witness(G) is None and preimages_witness(G) is not None
    out.append(law("free group over F: intersections preserved, preimages not", None if ok else
                   {"intersections": repr(intersections_witness(G)), "preimages": repr(preimages_witness(G))},
                   {"bound": cfg.bound}))
    bad = [k for k in range(cfg.bound + 1)
           if intersections_witness(representable(INJ, cfg.bound, k)) is not None]
    out.append(law("representables over I preserve intersections", {"k": bad} if bad else None,
                   {"bound": cfg.bound}))
    return out
