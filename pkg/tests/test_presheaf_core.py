import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from nomsub.finset import BIJ, CATEGORIES, FIN, INJ, SURJ
from nomsub.presheaf.core import (NatTrans, Quotient, closure_partition, coproduct, find_iso,
                                  identity_nat, nat_enumerate, product_psh, representable, terminal)
from nomsub.presheaf.corpus import (PresheafRecipe, free_group, powerset, quotient_presheaf,
                                    random_presheaf, sum_of_representables, words)

CATS = [CATEGORIES[c] for c in "BISF"]


def union_find_labels(n, edges):
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for u, v in edges:
        parent[find(u)] = find(v)
    return [find(i) for i in range(n)]


graphs = st.integers(1, 30).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                                             max_size=40)))


@given(graphs)
def test_quotient_matches_fixpoint_and_union_find(g):
    n, edges = g
    nodes = list(range(n))
    q = Quotient(nodes, edges)
    fix = closure_partition(nodes, edges)
    uf = union_find_labels(n, edges)
    for u in nodes:
        for v in nodes:
            same = uf[u] == uf[v]
            assert (q.rep(u) == q.rep(v)) == same == (fix[u] == fix[v])
    # class representative is the first node of its class
    for r, members in q.classes().items():
        assert r == min(members)


@pytest.mark.parametrize("seed", range(20))
def test_random_quotient_presheaf_classes_against_oracle(seed):
    rng = random.Random(seed)
    F = random_presheaf(INJ, 3, rng)
    assert F.functoriality_witness() is None


@pytest.mark.parametrize("cat", CATS, ids=str)
def test_corpus_presheaves_are_functors(cat):
    for P in (representable(cat, 3, 2), powerset(cat, 3), free_group(cat, 3), words(cat, 3),
              terminal(cat, 3), coproduct(representable(cat, 3, 1), powerset(cat, 3))):
        assert P.functoriality_witness() is None, P.name


def test_representable_sizes():
    assert representable(INJ, 4, 2).sizes() == [0, 0, 2, 6, 12]
    assert representable(FIN, 3, 2).sizes() == [0, 1, 4, 9]
    assert representable(SURJ, 3, 2).sizes() == [0, 1, 2, 0]
    assert powerset(BIJ, 3).sizes() == [1, 2, 4, 8]


def brute_nat_count(X, Y):
    """Every family of functions X(n) -> Y(n), filtered by naturality."""
    stages = range(X.bound + 1)
    per_stage = [list(product(Y.elems[n], repeat=X.size(n))) for n in stages]
    count = 0
    for choice in product(*per_stage):
        a = NatTrans(X, Y, dict(zip(stages, choice)))
        count += a.is_natural()
    return count


@pytest.mark.parametrize("cat", [BIJ, INJ, FIN], ids=str)
def test_nat_enumeration_against_brute_force(cat):
    X, Y = representable(cat, 2, 1), powerset(cat, 2)
    assert len(nat_enumerate(X, Y)) == brute_nat_count(X, Y)
    Z = quotient_presheaf(sum_of_representables(cat, 2, (1,)), [], name="y1'")
    assert len(nat_enumerate(Z, representable(cat, 2, 1))) == brute_nat_count(Z, representable(cat, 2, 1))


@pytest.mark.parametrize("cat", CATS, ids=str)
@pytest.mark.parametrize("k", [0, 1, 2])
def test_yoneda_count(cat, k):
    for F in (powerset(cat, 3), free_group(cat, 3)):
        assert len(nat_enumerate(representable(cat, 3, k), F)) == F.size(k)


def test_identity_is_among_endomorphisms():
    X = powerset(INJ, 2)
    assert identity_nat(X) in nat_enumerate(X, X)


def test_find_iso_on_relabelled_presheaf():
    X = representable(INJ, 3, 1)
    Y = sum_of_representables(INJ, 3, (1,))
    iso = find_iso(X, Y)
    assert iso is not None and iso.is_bijective() and iso.is_natural()
    assert find_iso(X, powerset(INJ, 3)) is None


def test_coproduct_and_product_sizes():
    X, Y = representable(FIN, 3, 1), powerset(FIN, 3)
    assert coproduct(X, Y).sizes() == [a + b for a, b in zip(X.sizes(), Y.sizes())]
    assert product_psh(X, Y).sizes() == [a * b for a, b in zip(X.sizes(), Y.sizes())]


def test_recipe_builds_identically_at_any_bound():
    r = PresheafRecipe((2, 1), ((3, (0, (2, 1)), (0, (0, 2))),))
    small, large = r.build(INJ, 3), r.build(INJ, 5)
    assert small.sizes() == large.sizes()[:4]


def test_json_dump_schema():
    d = representable(INJ, 2, 1).to_json()
    assert {"cat", "bound", "stages", "action"} <= set(d)
    assert [s["n"] for s in d["stages"]] == [0, 1, 2]
