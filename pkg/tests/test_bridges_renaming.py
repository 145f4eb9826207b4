import random

import pytest

from nomsub.atoms import Renaming
from nomsub.errors import NotRelevant, NotSupportPreserving
from nomsub.finset import BIJ, FIN, INJ, SURJ
from nomsub.nominal import bridges as BR
from nomsub.nominal.core import FinPowerset, FreshProduct, Tuples, corpus, support, terminal
from nomsub.nominal.renaming import (FreeGroup, RenTensor, counterexamples, ren_least_support_oracle,
                                     ren_oracle_report, ren_support, relevance_report)
from nomsub.nominal.tensor import bijection_report, left_unitor, right_unitor
from nomsub.presheaf.checks import preimages_witness
from nomsub.presheaf.core import representable
from nomsub.presheaf.corpus import random_presheaf

NOM = corpus()


def bijective(f, S, T, stages, inv=None):
    return all((lambda r: r["bijective"] and r["inverse_ok"])(bijection_report(f, S, T, n, inv)) for n in stages)


def iso(alpha):
    return alpha.naturality_witness() is None and alpha.is_bijective()


def test_i_star_of_atoms():
    P = BR.i_star(NOM["A"], 4)
    assert P.sizes() == [0, 1, 2, 3, 4]
    assert P.elems[3] == (0, 1, 2)


@pytest.mark.parametrize("pair", [("A", "A"), ("A", "PfA@2"), ("A*2", "A"), ("1", "A*2")])
def test_fresh_product_bridge(pair):
    assert iso(BR.fresh_product_bridge(NOM[pair[0]], NOM[pair[1]], 4))


def test_unit_of_fresh_product():
    assert bijective(lambda p: p[1], FreshProduct(terminal(), NOM["A*2"]), NOM["A*2"], range(5))


@pytest.mark.parametrize("name", ["A", "A*2", "PfA@2", "Lam@depth1"])
def test_upper_star_roundtrip(name):
    X = NOM[name]
    assert bijective(BR.upper_of_star(X), BR.i_upper(BR.i_star(X, 4)), X, range(5))


@pytest.mark.parametrize("k", range(4))
def test_upper_of_representable_is_fresh_tuples(k):
    up = BR.i_upper(representable(INJ, 4, k))
    assert bijective(lambda e: tuple(e[0][i] for i in e[1]), up, Tuples(k, injective=True), range(5))


@pytest.mark.parametrize("seed", range(5))
def test_species_roundtrip(seed):
    F = random_presheaf(BIJ, 3, random.Random(seed))
    assert iso(BR.species_roundtrip(F))


@pytest.mark.parametrize("name", ["A*2", "A^2", "PfA@2"])
def test_coprod_of_species(name):
    X = NOM[name]
    C = BR.coprod(BR.species_of(X, 4))
    assert bijective(BR.coprod_of_species(X), C, X, range(5))


def test_coprod_supports_are_exact():
    F = random_presheaf(BIJ, 3, random.Random(7))
    C = BR.coprod(F)
    for n in range(4):
        for e in C.stage_elements(n):
            assert len(support(C, e)) == len(C.over_support(e))


def test_terminal_map_is_not_support_preserving():
    term = lambda x: ()
    assert not BR.is_support_preserving(term, NOM["A"], terminal(), 3)
    with pytest.raises(NotSupportPreserving):
        BR.species_map(term, NOM["A"], terminal(), 3)


def test_r_of_point_is_powerset():
    R1 = BR.RSet(terminal(), extra=4)
    assert bijective(lambda e: e[1], R1, FinPowerset(8), range(5))


def test_writer_iso_example_and_laws():
    fwd, bwd, target = BR.writer_iso(NOM["A"])
    assert fwd((0, frozenset({0, 1}))) == (frozenset({1}), 0)
    assert bwd((frozenset({1}), 0)) == (0, frozenset({0, 1}))
    assert bijective(fwd, BR.RSet(NOM["A"], extra=4), target, range(5), bwd)
    assert BR.writer_monad_witness(NOM["A*2"], 3) is None


@pytest.mark.parametrize("pair", [("A", "PfA@2"), ("A*2", "A"), ("A^2", "A")])
def test_kleisli_transposition(pair):
    r = BR.kleisli_report(NOM[pair[0]], NOM[pair[1]], 4)
    assert r["bijective"] and r["nom_maps"] == r["kleisli_maps"]


def test_transpose_of_identity():
    X = NOM["A*2"]
    t = BR.kleisli_transpose(lambda x: x, X)
    assert t((0, 1)) == ((0, 1), frozenset({0, 1}))
    assert BR.is_support_preserving(t, X, BR.RSet(X), 3)


def test_eq_product_universal():
    r = BR.eq_universal_report(NOM["A*2"], NOM["A^2"], NOM["PfA@2"])
    assert r["product_ok"] and r["terminal_ok"]


def test_supported_set_morphisms():
    S = BR.underlying_supported(NOM["A*2"], 3)
    T = BR.underlying_supported(NOM["A"], 3)
    assert S.is_morphism_to(T, lambda p: p[0])
    assert not T.is_morphism_to(S, lambda a: (a, (a + 1) % 3))


def test_day_sum_over_F_is_product():
    P, Q = BR.i_star(NOM["A"], 3, FIN), BR.i_star(NOM["PfA@2"], 3, FIN)
    assert iso(BR.sum_is_product_bridge(P, Q))


# -- renaming sets -----------------------------------------------------------------

def test_counterexamples_bit_exact():
    fg, hom = counterexamples()
    assert fg["verified"] and hom["verified"]
    assert fg["witness"]["supp_rho_x"] == [] and fg["witness"]["rho_supp_x"] == [2]
    assert hom["witness"]["supp_f"] == [0, 1]
    assert hom["witness"]["values_of_rho_f"] == [1]
    assert hom["witness"]["supp_rho_f"] == [] and hom["witness"]["rho_supp_f"] == [2]
    assert set(fg) == {"name", "claim_ref", "witness", "verified"}


def test_free_group_word_collapses():
    G = FreeGroup(2)
    x = ((0, 1), (1, -1))
    assert G.act(Renaming.of({0: 2, 1: 2}), x) == ()
    assert ren_support(G, x) == {0, 1}


@pytest.mark.parametrize("name", ["A", "A^2", "PfA@2", "A+1"])
def test_renaming_support_is_least(name):
    X = NOM[name]
    for x in X.stage_elements(3):
        assert ren_support(X, x) == ren_least_support_oracle(X, x)


@pytest.mark.parametrize("name", ["A", "PfA@2", "A^2"])
def test_relevance(name):
    assert relevance_report(NOM[name], 4 if NOM[name].max_support <= 2 else 3)["relevant"]


def test_free_group_is_not_relevant():
    r = relevance_report(FreeGroup(2), 3)
    assert not r["relevant"] and r["witness"]["supp_image"] == []


def test_ren_tensor_merges_collapsed_atoms():
    T = RenTensor(NOM["A^2"], NOM["A"])
    assert T.make((0, 1), {0: 2, 1: 2}) == T.make((0, 0), {0: 2})


@pytest.mark.parametrize("pair", [("A", "PfA@1"), ("A^2", "A"), ("PfA@2", "A")])
def test_ren_search_matches_oracle(pair):
    r = ren_oracle_report(RenTensor(NOM[pair[0]], NOM[pair[1]]), 3)
    assert r["search_mismatches"] == r["canonical_mismatches"] == 0
    assert r["classes"] == r["enumerated"]


def test_ren_tensor_relevance_and_support():
    T = RenTensor(NOM["PfA@2"], NOM["A"])
    assert BR.relevance_witness(T, 3) is None
    assert all(ren_support(T, c) == T.class_support(c) for c in T.stage_elements(3))


def test_ren_action_on_classes():
    T = RenTensor(NOM["A^2"], NOM["A"])
    c = T.make((0, 1), {0: 2, 1: 3})
    rho = Renaming.of({2: 3})
    assert T.act(rho, c) == T.make((0, 1), {0: 3, 1: 3})


def test_ren_unitors():
    for name in ("A", "PfA@2"):
        Y = NOM[name]
        assert bijective(left_unitor(RenTensor(NOM["A"], Y)), RenTensor(NOM["A"], Y), Y, range(4))
        assert bijective(right_unitor(RenTensor(Y, NOM["A"])), RenTensor(Y, NOM["A"]), Y, range(4))


@pytest.mark.parametrize("seed", range(4))
def test_surjection_species_roundtrip(seed):
    F = random_presheaf(SURJ, 3, random.Random(seed))
    assert iso(BR.species_roundtrip(F))


def test_species_over_surjections_needs_relevance():
    with pytest.raises(NotRelevant):
        BR.species_of(FreeGroup(2), 3, SURJ)


def test_preimages_distinguish_free_group():
    assert preimages_witness(BR.i_star(NOM["PfA@2"], 3, FIN)) is None
    assert preimages_witness(BR.i_star(FreeGroup(2), 3, FIN)) is not None
