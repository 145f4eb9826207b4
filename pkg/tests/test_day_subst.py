import warnings

import pytest

from nomsub.errors import TruncationUnstable
from nomsub.finset import BIJ, CATEGORIES, FIN, INJ, SURJ, IndexCat
from nomsub.presheaf.core import NatTrans, find_iso, nat_enumerate, product_psh, representable
from nomsub.presheaf.corpus import powerset
from nomsub.presheaf.day import DaySum, DayTimes
from nomsub.presheaf.laws import PresheafConfig, currying_laws, power_laws, triangle_witness
from nomsub.presheaf.subst import (InternalHom, SubstTensor, associator, curry, distributor,
                                   flatten_power, iterated_power, left_unitor, phi,
                                   phi_well_defined_witness, right_unitor, subst_tensor,
                                   substitution_presheaf, uncurry)

CATS = [CATEGORIES[c] for c in "BISF"]


def iso_ok(alpha):
    return alpha.naturality_witness() is None and alpha.is_bijective()


@pytest.mark.parametrize("cat", CATS, ids=str)
def test_day_times_unit(cat):
    y1 = representable(cat, 3, 1)
    assert find_iso(DayTimes(y1, y1, 1), y1) is not None


def test_day_sum_counts_injective_pairs():
    y1 = representable(INJ, 4, 1)
    assert DaySum([y1, y1]).sizes() == [n * (n - 1) for n in range(5)]


@pytest.mark.parametrize("cat", [INJ, FIN, BIJ], ids=str)
def test_day_sum_of_representables_is_representable(cat):
    # 𝐲a ⊕ 𝐲b ≅ 𝐲(a+b)
    for a, b in ((1, 1), (1, 2), (0, 2)):
        D = DaySum([representable(cat, 3, a), representable(cat, 3, b)])
        assert find_iso(D, representable(cat, 3, a + b)) is not None


ALL_MAPS = IndexCat("F-generic", lambda f: True)


@pytest.mark.parametrize("names", [("y1", "Pf"), ("y2", "y1"), ("Pf", "Pf")])
def test_fast_path_over_F_matches_generic_quotient(names):
    def build(cat):
        C = {"y1": representable(cat, 3, 1), "y2": representable(cat, 3, 2), "Pf": powerset(cat, 3)}
        return DaySum([C[n] for n in names])

    fast, slow = build(FIN), build(ALL_MAPS)
    assert fast.sizes() == slow.sizes()
    assert fast.functoriality_witness() is None
    # both are the pointwise product
    X, Y = (dict(y1=representable(FIN, 3, 1), y2=representable(FIN, 3, 2), Pf=powerset(FIN, 3))[n]
            for n in names)
    assert find_iso(fast, product_psh(X, Y)) is not None


def test_stabilization_flags_growth_over_surjections():
    Pf, y2 = powerset(SURJ, 4), representable(SURJ, 4, 2)
    with pytest.warns(TruncationUnstable):
        T = subst_tensor(Pf, y2, outer=3, inner=3, diagnose=True)
    d = T.diagnostic
    assert not d["stable"] and d["unstable_stages"] == [2, 3]
    assert d["counts"][:2] == d["counts_larger_inner"][:2]


def test_stabilization_clean_over_injections():
    Pf, y2 = powerset(INJ, 4), representable(INJ, 4, 2)
    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationUnstable)
        T = subst_tensor(Pf, y2, outer=3, inner=3, diagnose=True)
    assert T.diagnostic["stable"]


@pytest.mark.parametrize("cat", CATS, ids=str)
def test_power_identities(cat):
    assert all(r["status"] == "pass" for r in power_laws(cat.name, PresheafConfig(bound=3)))


@pytest.mark.parametrize("cat", [INJ, FIN], ids=str)
def test_substitution_presheaf_of_y1_is_representable(cat):
    for A in range(5):
        assert find_iso(substitution_presheaf(A, representable(cat, 4, 1)), representable(cat, 4, A))


def test_power_agrees_with_iterated_day_sum():
    Pf = powerset(INJ, 3)
    P, I = substitution_presheaf(3, Pf), iterated_power(3, Pf)
    m = NatTrans.from_function(I, P, lambda n, e: P.lookup(n, flatten_power(3, n, e)))
    assert iso_ok(m)


@pytest.mark.parametrize("cat", CATS, ids=str)
def test_unitors(cat):
    y1, y2, Pf = representable(cat, 3, 1), representable(cat, 3, 2), powerset(cat, 3)
    for X in (y2, Pf):
        assert iso_ok(left_unitor(SubstTensor(y1, X)))
        assert iso_ok(right_unitor(SubstTensor(X, y1)))


def test_distributor_over_injections():
    cat = INJ
    Pf, y1, y2 = powerset(cat, 3), representable(cat, 3, 1), representable(cat, 3, 2)
    S = DaySum([Pf, y1])
    T, Txz, Tyz = SubstTensor(S, y2), SubstTensor(Pf, y2), SubstTensor(y1, y2)
    assert iso_ok(distributor(T, Txz, Tyz, DaySum([Txz, Tyz])))


@pytest.mark.parametrize("cat", [BIJ, INJ], ids=str)
def test_associator(cat):
    y1, y2, Pf = representable(cat, 3, 1), representable(cat, 3, 2), powerset(cat, 3)
    X, Y, Z = y2, y1, Pf
    L = SubstTensor(SubstTensor(X, Y), Z)
    R = SubstTensor(X, SubstTensor(Y, Z))
    assert iso_ok(associator(L, R))


@pytest.mark.parametrize("cat", "BI")
def test_triangle(cat):
    assert triangle_witness(cat, 3) is None


def test_curry_uncurry_are_inverse_bijections():
    cat = INJ
    X, Y, Z = representable(cat, 2, 1), representable(cat, 2, 1), powerset(cat, 2)
    T, H = SubstTensor(X, Y), InternalHom(Y, Z)
    left, right = nat_enumerate(T, Z), nat_enumerate(X, H)
    assert len(left) == len(right) > 0
    assert {curry(a, T, H) for a in left} == set(right)
    assert all(uncurry(curry(a, T, H), T, H) == a for a in left)


@pytest.mark.parametrize("cat", "BISF")
def test_currying_law_group(cat):
    assert all(r["status"] == "pass" for r in currying_laws(cat, PresheafConfig()))


@pytest.mark.parametrize("pair", [(1, 1), (1, 2), (2, 2)])
def test_phi_on_representables_over_F(pair):
    a, b = pair
    X, Y = representable(FIN, 3, a), representable(FIN, 3, b)
    D, T = DayTimes(X, Y, max(a, b)), SubstTensor(X, Y)
    f = phi(D, T)
    assert phi_well_defined_witness(D, f) is None
    assert f.naturality_witness() is None and f.is_injective()


def test_phi_on_units_is_identity_up_to_unitors():
    y1 = representable(FIN, 3, 1)
    D, T = DayTimes(y1, y1, 1), SubstTensor(y1, y1)
    f = phi(D, T)
    lam = left_unitor(T)
    assert f.then(lam).is_bijective()
