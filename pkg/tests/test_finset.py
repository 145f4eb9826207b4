from itertools import product
from math import comb, factorial, perm

import pytest
from hypothesis import given, strategies as st

from nomsub.finset import (BIJ, CATEGORIES, FIN, ID, INJ, ISUB, SURJ, IndexCat, Mor, all_maps,
                           contextuality_check, covers, generates, hom_enumerate, ictx_stability,
                           identity, inclusion, matching_families, plus, preimage, pullback)
from nomsub.presheaf.core import representable


def surj_count(m, n):
    # inclusion-exclusion, independent of the enumerator
    return sum((-1) ** k * comb(n, k) * (n - k) ** m for k in range(n + 1))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(5) for n in range(5)])
def test_hom_counts_match_closed_forms(m, n):
    assert len(hom_enumerate(FIN, m, n)) == n ** m
    assert len(hom_enumerate(INJ, m, n)) == (perm(n, m) if m <= n else 0)
    assert len(hom_enumerate(SURJ, m, n)) == surj_count(m, n)
    assert len(hom_enumerate(BIJ, m, n)) == (factorial(n) if m == n else 0)
    assert len(hom_enumerate(ISUB, m, n)) == comb(n, m)
    assert len(hom_enumerate(ID, m, n)) == (1 if m == n else 0)


def test_hom_examples():
    assert len(hom_enumerate(BIJ, 3, 3)) == 6
    assert len(hom_enumerate(INJ, 2, 3)) == 6
    assert len(hom_enumerate(SURJ, 3, 2)) == 6


@pytest.mark.parametrize("cat", list(CATEGORIES.values()), ids=str)
def test_homs_listed_once_in_lexicographic_order(cat):
    for m, n in product(range(4), repeat=2):
        tables = [f.table for f in hom_enumerate(cat, m, n)]
        assert tables == sorted(set(tables))


maps = st.integers(0, 3).flatmap(
    lambda m: st.integers(1, 3).flatmap(
        lambda n: st.tuples(*[st.integers(0, n - 1)] * m).map(lambda t: Mor(m, n, t))))


@given(maps, st.data())
def test_composition_laws(f, data):
    g = data.draw(st.tuples(*[st.integers(0, 2)] * f.cod).map(lambda t: Mor(f.cod, 3, t)))
    h = data.draw(st.tuples(*[st.integers(0, 1)] * 3).map(lambda t: Mor(3, 2, t)))
    assert h.after(g.after(f)) == h.after(g).after(f)
    assert f.after(identity(f.dom)) == f == identity(f.cod).after(f)


@pytest.mark.parametrize("cat", list(CATEGORIES.values()), ids=str)
def test_categories_closed_under_composition(cat):
    ms = cat.all_homs(3)
    for f in ms:
        assert identity(f.dom) in cat
        for g in ms:
            if g.dom == f.cod:
                assert g.after(f) in cat


@pytest.mark.parametrize("cat", [BIJ, INJ, SURJ, FIN], ids=str)
def test_generators_generate(cat):
    assert generates(cat, cat.generators(4), 4)


def test_pullback_along_identity():
    b = Mor(3, 2, (0, 1, 1))
    pb = pullback(identity(2), b)
    assert pb.reindex == identity(3)
    assert pb.proj == b


def test_pullback_pairs_and_projection():
    f, b = Mor(2, 1, (0, 0)), Mor(3, 1, (0, 0, 0))
    pb = pullback(f, b)
    assert pb.carrier == tuple(product(range(2), range(3)))
    assert pb.reindex.table == tuple(beta for _, beta in product(range(2), range(3)))


def cones(f, b, n):
    return [(p, q) for p in all_maps(n, f.dom) for q in all_maps(n, b.dom)
            if f.after(p) == b.after(q)]


@pytest.mark.parametrize("seed", range(12))
def test_pullback_universal_property(seed):
    import random
    rng = random.Random(seed)
    m, k, c = rng.randint(0, 3), rng.randint(0, 3), rng.randint(1, 3)
    f = Mor(m, c, tuple(rng.randrange(c) for _ in range(m)))
    b = Mor(k, c, tuple(rng.randrange(c) for _ in range(k)))
    pb = pullback(f, b)
    P = len(pb.carrier)
    assert f.after(pb.proj) == b.after(pb.reindex)
    for n in range(3):
        for p, q in cones(f, b, n):
            mediators = [u for u in all_maps(n, P) if pb.proj.after(u) == p and pb.reindex.after(u) == q]
            assert len(mediators) == 1
    for x, beta in pb.carrier:
        assert f(x) == b(beta)


def test_preimage():
    assert preimage(Mor(2, 1, (0, 0)), {0}) == {0, 1}
    assert preimage(Mor(3, 3, (2, 0, 2)), {2}) == {0, 2}


@pytest.mark.parametrize("cat", [FIN, INJ, SURJ, BIJ], ids=str)
def test_standard_categories_are_contextual(cat):
    r = contextuality_check(cat, 4 if cat is not FIN else 3)
    assert r.contextual and r.criteria_agree


def test_identities_only_is_not_contextual():
    r = contextuality_check(ID, 3)
    assert not r.contextual
    assert r.witness["kind"] == "pullback"
    assert Mor(*r.witness["reindex"][:2], tuple(r.witness["reindex"][2])) not in ID


def test_bijection_primality_instance():
    s = Mor(2, 2, (1, 0))
    assert plus(s, s) in BIJ and s in BIJ


def test_user_subcategory_even_maps():
    # maps between even stages only, plus identities: not closed under +
    even = IndexCat("even", lambda f: f.is_identity() or (f.dom % 2 == 0 and f.cod % 2 == 0))
    r = contextuality_check(even, 3)
    assert r.sum_closed is False or r.pullback_stable is False


def test_ictx_covers_include_identity():
    for n in range(4):
        assert [identity(n)] in [[c[0]] for c in covers("I_Ctx", n, 4)]


def test_o_covers_example():
    fams = covers("O", {0}, {0, 1, 2})
    assert [frozenset({0, 1}), frozenset({0, 2})] in fams
    assert all(frozenset.intersection(*f) == {0} for f in fams)


def test_ictx_stability_square():
    for g in INJ.homs(2, 3):
        cover, g2 = ictx_stability([inclusion(2, 4)], g)
        assert g2.after(inclusion(2, 4)) == cover[0].after(g)


def test_representable_families_amalgamate_uniquely():
    y1 = representable(INJ, 4, 1)
    fams = matching_families(y1, [inclusion(1, 2)])
    assert fams
    for fam, amalgams in fams:
        assert len(amalgams) == 1
