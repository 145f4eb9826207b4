from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from nomsub import lam as L
from nomsub.atoms import Perm, all_perms
from nomsub.nominal.core import (Discrete, FinPowerset, corpus, equivariance_witness, is_fresh,
                                 least_support_oracle, orbit_canon, orbit_reps, shapes, support)

NOM = corpus()
NAMES = sorted(NOM)


def eq_supp_least(X, x, pool):
    """Least S ⊆ pool such that every π of the pool fixing S fixes x."""
    pis = all_perms(pool)
    for k in range(len(pool) + 1):
        for S in combinations(pool, k):
            if all(X.act(p, x) == x for p in pis if all(p(a) == a for a in S)):
                return frozenset(S)


def test_support_of_lambda_term():
    env = {}
    t = L.parse_term("λa. a b", env)
    assert support(NOM["Lam@depth2"], t) == {env["b"]}


def test_discrete_elements_have_empty_support():
    D = Discrete((0, 1, 2))
    assert all(support(D, x) == frozenset() for x in D.stage_elements(3))


def test_pair_support_against_four_atom_oracle():
    X = NOM["A^2"]
    for x in X.stage_elements(2):
        assert support(X, x) == eq_supp_least(X, x, [0, 1, 2, 3]) == set(x)


@pytest.mark.parametrize("name", ["A", "A*2", "A^2", "PfA@2", "A*A", "AxA", "A+1", "Lam@depth1", "2"])
def test_swap_test_is_least(name):
    X = NOM[name]
    for x in X.stage_elements(3):
        s = support(X, x)
        assert s == least_support_oracle(X, x)
        # every proper subset is moved by some permutation fixing it
        pool = sorted(X.over_support(x)) + [10, 11]
        for k in range(len(s)):
            for S in combinations(sorted(s), k):
                assert any(X.act(p, x) != x for p in all_perms(pool) if all(p(a) == a for a in S))


@pytest.mark.parametrize("name", NAMES)
def test_action_is_a_group_action(name):
    X = NOM[name]
    ps = all_perms(range(3))
    for x in X.stage_elements(2):
        assert X.act(Perm(), x) == x
        for p in ps[:4]:
            for q in ps[2:]:
                assert X.act(p * q, x) == X.act(p, X.act(q, x))


@pytest.mark.parametrize("name", NAMES)
def test_stage_enumerations_nest_and_intersect(name):
    X = NOM[name]
    for n in range(3):
        assert set(X.stage_elements(n)) <= set(X.stage_elements(n + 1))
    # intersection property: supported by A and by B ⟹ supported by A ∩ B
    A, B = [0, 1, 2], [1, 2, 3]
    both = set(X.elements(A)) & set(X.elements(B))
    assert both == set(X.elements([1, 2]))


def test_orbit_examples():
    assert len(orbit_reps(NOM["A"], [0, 1])) == 1
    assert len(orbit_reps(NOM["PfA@2"], [0, 1])) == 3
    assert len(orbit_reps(NOM["A*2"], range(3))) == 1
    assert len(NOM["A*2"].stage_elements(3)) == 6


@given(st.lists(st.integers(0, 5), min_size=2, max_size=2, unique=True), st.permutations(range(6)))
def test_orbit_canon_is_invariant(pair, img):
    X = NOM["A*2"]
    p = Perm.of(dict(enumerate(img)))
    x = tuple(pair)
    assert orbit_canon(X, X.act(p, x)) == orbit_canon(X, x)


def test_fresh_product_counts_injective_pairs():
    X = NOM["A*A"]
    for n in range(6):
        assert len(X.stage_elements(n)) == n * (n - 1)
    assert all(is_fresh(NOM["A"], a, NOM["A"], b) for a, b in X.stage_elements(4))


def test_fresh_product_support_is_union():
    X = NOM["A*A"]
    assert all(support(X, p) == set(p) for p in X.stage_elements(4))


def test_shapes_of_powerset():
    assert shapes(FinPowerset(3), 2) == [frozenset({0, 1})]


def test_equivariance_witness_detects_non_equivariant_map():
    A = NOM["A"]
    assert equivariance_witness(lambda a: a, A, A, 3) is None
    assert equivariance_witness(lambda a: 0, A, A, 3) is not None
