import random

import pytest

from nomsub import lam as L
from nomsub.atoms import all_perms, extend_bijection
from nomsub.errors import DomainMismatch, FreshnessViolation, InsufficientTuple, NonEquivariant
from nomsub.lamlaws import class_bind
from nomsub.nominal.core import FinPowerset, LamTerms, Tuples, corpus, support
from nomsub.nominal.hom import (HomSet, ReducibleMap, check_equivariant, constant_map, curry,
                                factorization_support, hom_support, padded, uncurry)
from nomsub.nominal.tensor import (associator, bijection_report, class_eq, left_unitor, left_unitor_inv,
                                   oracle_report, pentagon_witness, raw_pairs, right_unitor,
                                   right_unitor_inv, tensor)
from nomsub.nominal.uniform import (UniformDay, UniformHom, comparison_report, symmetry,
                                    uniform_from_presheaf, uniform_uncurry)

NOM = corpus()


def orbit_classes(T, n):
    """Classes of raw pairs by the full orbit {(π·x, γ∘π⁻¹)} under all
    permutations of the pool atoms; independent of the closure oracle."""
    pool = T.X.max_support
    pis = all_perms(range(pool))
    classes = set()
    for x, gam in raw_pairs(T, n):
        g = dict(gam)
        orbit = frozenset((T.X.act(p, x), tuple(sorted((p(a), y) for a, y in g.items()))) for p in pis)
        classes.add(orbit)
    return len(classes)


def test_subset_examples():
    T = tensor(NOM["PfA@2"], NOM["A*2"])
    ya, yb = (4, 5), (6, 7)
    ab, cd = frozenset({0, 1}), frozenset({2, 3})
    assert T.make(ab, {0: ya, 1: yb}) == T.make(cd, {2: ya, 3: yb})
    assert T.make(ab, {0: ya, 1: yb}) == T.make(ab, {1: ya, 0: yb})


def test_ordered_pair_classes_differ():
    S = tensor(NOM["A*2"], NOM["A"])
    assert S.make((0, 1), {0: 2, 1: 3}) != S.make((0, 1), {0: 3, 1: 2})


def test_make_rejects_bad_substitutions():
    T = tensor(NOM["A*2"], NOM["A"])
    with pytest.raises(FreshnessViolation):
        T.make((0, 1), {0: 2, 1: 2})
    with pytest.raises(DomainMismatch):
        T.make((0, 1), {0: 2})
    # the captureful tensor has no freshness condition
    tensor(NOM["A*2"], NOM["A"], "cap").make((0, 1), {0: 2, 1: 2})


def test_empty_support_class():
    T = tensor(NOM["1"], NOM["A"])
    c = T.make((), {})
    assert T.class_support(c) == frozenset()
    assert T.stage_elements(3) == [c]


def test_class_support_single_atom():
    T = tensor(NOM["A"], NOM["A*2"])
    assert T.class_support(T.make(0, {0: (2, 3)})) == {2, 3}


@pytest.mark.parametrize("pair", [("A*2", "A*2"), ("PfA@2", "A"), ("A^2", "PfA@1")])
@pytest.mark.parametrize("kind", ["sub", "cap"])
def test_class_counts_against_orbit_oracle(pair, kind):
    T = tensor(NOM[pair[0]], NOM[pair[1]], kind)
    for n in range(4):
        assert len(T.stage_elements(n)) == orbit_classes(T, n)


def test_fresh_pairs_tensor_stage4_count():
    T = tensor(NOM["A*2"], NOM["A*2"])
    r = oracle_report(T, 4)
    assert r["classes"] == r["enumerated"] == orbit_classes(T, 4)
    assert r["search_mismatches"] == r["canonical_mismatches"] == 0


@pytest.mark.parametrize("pair", [("A", "A*2"), ("PfA@2", "PfA@1"), ("A^2", "A")])
def test_search_matches_closure_oracle(pair):
    for kind in ("sub", "cap"):
        r = oracle_report(tensor(NOM[pair[0]], NOM[pair[1]], kind), 3)
        assert r["search_mismatches"] == 0 and r["canonical_mismatches"] == 0


def test_class_eq_is_an_equivalence():
    T = tensor(NOM["PfA@2"], NOM["A"])
    raws = [(x, dict(g)) for x, g in raw_pairs(T, 3)]
    for a in raws:
        assert class_eq(T, a, a)
        for b in raws:
            assert class_eq(T, a, b) == class_eq(T, b, a)


@pytest.mark.parametrize("seed", range(5))
def test_action_and_support_laws(seed):
    rng = random.Random(seed)
    for x, y in (("A*2", "PfA@1"), ("PfA@2", "A*2"), ("Lam@depth1", "A")):
        T = tensor(NOM[x], NOM[y])
        c = T.sample(rng)
        assert support(T, c) == T.class_support(c)
        xs, g = T.parts(c)
        pi = extend_bijection(dict(zip(range(6), rng.sample(range(6), 6))))
        assert T.act(pi, c) == T.make(xs, {a: T.Y.act(pi, v) for a, v in g.items()})


@pytest.mark.parametrize("name", ["A", "A*2", "PfA@2", "Lam@depth1", "1"])
def test_unitors_are_bijections(name):
    Y, A = NOM[name], NOM["A"]
    for T, f, g in ((tensor(A, Y), left_unitor, left_unitor_inv), (tensor(Y, A), right_unitor, right_unitor_inv)):
        for n in range(4):
            r = bijection_report(f(T), T, Y, n, g(T))
            assert r["bijective"] and r["inverse_ok"]


def test_left_unitor_formula():
    T = tensor(NOM["A"], NOM["A*2"])
    assert left_unitor(T)(T.make(0, {0: (3, 5)})) == (3, 5)


def test_right_unitor_formula():
    T = tensor(NOM["A*2"], NOM["A"])
    assert right_unitor(T)(T.make((0, 1), {0: 4, 1: 2})) == (4, 2)


def test_associator_bijective():
    LHS, RHS, fwd, bwd = associator(NOM["A*2"], NOM["A"], NOM["PfA@1"])
    for n in range(4):
        r = bijection_report(fwd, LHS, RHS, n, bwd)
        assert r["bijective"] and r["inverse_ok"]


def test_pentagon_samples():
    assert pentagon_witness(NOM["A*2"], NOM["A"], NOM["PfA@1"], NOM["A"], 50, 0) is None


def test_captureful_tensor_is_ordered_pairs():
    T = tensor(NOM["A*2"], NOM["A"], "cap")
    A2 = Tuples(2)
    for n in range(5):
        r = bijection_report(right_unitor(T, A2), T, A2, n)
        assert r["bijective"]
    assert len(T.stage_elements(3)) == 9 > len(NOM["A*2"].stage_elements(3)) == 6


# -- internal hom --------------------------------------------------------------

def test_constant_map_has_empty_support():
    H = HomSet(NOM["A*2"], NOM["2"])
    assert hom_support(H, constant_map(1)) == frozenset()


def test_eq_map_support_and_missing_positions():
    D = NOM["2"]
    H = HomSet(D, D, fresh=False)
    f = ReducibleMap((0, 1), lambda t: int(t[0] == t[1]), "eq")
    assert hom_support(H, f) == {0, 1} == factorization_support(H, f)
    with pytest.raises(InsufficientTuple):
        f({0: 1})


def test_action_on_maps_precomposes():
    A2, P4 = NOM["A*2"], FinPowerset(4)
    T = tensor(A2, NOM["PfA@2"])
    H = HomSet(NOM["PfA@2"], P4)
    g = curry(lambda c: frozenset().union(*c[1]), T)
    fx = g((0, 1))
    for pi in all_perms(range(4)):
        pf = fx.act(pi)
        for gam in H.family(pf.positions):
            assert pf(gam) == fx({a: gam[pi(a)] for a in fx.positions})


def lam_bind_tensor():
    L1 = LamTerms(1)
    return tensor(L1, L1, "sub")


def test_curried_bind_at_a_variable_is_evaluation():
    T = lam_bind_tensor()
    g = curry(class_bind, T)
    h = g(L.var(0))
    assert h.positions == (0,)
    for t in T.Y.stage_elements(2):
        assert h({0: t}) == t


def test_curry_uncurry_roundtrip_for_bind():
    T = lam_bind_tensor()
    g = curry(class_bind, T)
    classes = [c for n in range(3) for c in T.stage_elements(n)]
    assert all(uncurry(g, T)(c) == class_bind(c) for c in classes)
    assert all(uncurry(padded(g, T), T, choice=k)(c) == class_bind(c) for c in classes for k in (0, 1))
    H = HomSet(T.Y, T.Y)
    for x in T.X.stage_elements(2):
        assert H.equal(curry(uncurry(g, T), T)(x), g(x))
        assert hom_support(H, g(x)) == factorization_support(H, g(x)) == support(T.X, x)


def test_check_equivariant_rejects():
    T = tensor(NOM["A"], NOM["A"])
    with pytest.raises(NonEquivariant):
        check_equivariant(lambda c: 0, T, NOM["A"], stage=3)


# -- uniform tensor ------------------------------------------------------------

def test_uniform_symmetry_is_bijective():
    U, V = UniformDay(NOM["PfA@2"], NOM["A*2"]), UniformDay(NOM["A*2"], NOM["PfA@2"])
    fwd, back = symmetry(U, V), symmetry(V, U)
    for n in range(5):
        r = bijection_report(fwd, U, V, n, back)
        assert r["bijective"] and r["inverse_ok"]


def test_subset_form_is_not_symmetric():
    one = comparison_report(NOM["A*2"], NOM["PfA@2"], 4)
    other = comparison_report(NOM["PfA@2"], NOM["A*2"], 4)
    assert (one["day_form"], one["subset_form"], one["onto"], one["injective"]) == (25, 19, True, False)
    assert (other["day_form"], other["subset_form"], other["injective"]) == (25, 25, True)


def test_uniform_from_presheaf_is_bijective():
    U, up, to_upper = uniform_from_presheaf(NOM["A*2"], NOM["A"], 3)
    for n in range(4):
        assert bijection_report(to_upper, U, up, n)["bijective"]


def test_uniform_hom_roundtrip():
    A2, P1 = NOM["A*2"], NOM["PfA@1"]
    Tu = tensor(A2, P1, "uniform")
    H = UniformHom(P1, FinPowerset(4))
    f = lambda c: frozenset().union(*c[1])
    g = curry(f, Tu)
    assert all(uniform_uncurry(g, Tu)(c) == f(c) for n in range(4) for c in Tu.stage_elements(n))
    assert all(H.equal(curry(uniform_uncurry(g, Tu), Tu)(x), g(x)) for x in A2.stage_elements(3))
