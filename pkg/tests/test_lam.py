import random

import pytest
from hypothesis import given, strategies as st

from nomsub import lam as L
from nomsub.atoms import Perm, all_perms
from nomsub.errors import ParseError
from nomsub.lamlaws import LambdaConfig, class_bind, law_suite, worked_example
from nomsub.nominal.core import LamTerms, support
from nomsub.nominal.tensor import tensor

ATOMS = st.integers(0, 4)


def named_terms():
    """(free-variable oracle, term) pairs built through the named constructors."""
    leaf = ATOMS.map(lambda a: (frozenset([a]), L.var(a)))

    def extend(children):
        apps = st.tuples(children, children).map(lambda p: (p[0][0] | p[1][0], L.app(p[0][1], p[1][1])))
        lams = st.tuples(ATOMS, children).map(lambda p: (p[1][0] - {p[0]}, L.lam(p[0], p[1][1])))
        return apps | lams

    return st.recursive(leaf, extend, max_leaves=8)


@given(named_terms())
def test_free_vars_match_named_oracle(pair):
    fv, t = pair
    assert L.free_vars(t) == fv
    assert L.is_locally_closed(t)


@given(named_terms())
def test_print_parse_roundtrip(pair):
    _, t = pair
    assert L.parse_term(L.show(t)) == t


def test_roundtrip_on_200_generated_terms():
    rng = random.Random(0)
    for _ in range(200):
        t = L.random_term(rng, range(3), 4)
        assert L.parse_term(L.show(t)) == t


def test_alpha_equivalence():
    assert L.alpha_eq(L.parse_term("λa. a b"), L.parse_term("λc. c b"))
    env = {}
    assert not L.alpha_eq(L.parse_term("λa. a b", env), L.parse_term("λa. a c", env))


def test_swap_acts_on_free_names_only():
    t = L.parse_term("λa0. a0 a1")
    assert L.act(Perm.swap(0, 1), t) == L.parse_term("λz. z a0")


def test_free_vars_examples():
    env = {}
    assert L.free_vars(L.parse_term("λa. a b", env)) == {env["b"]}
    assert L.free_vars(L.parse_term("λa. a")) == frozenset()


def test_free_vars_is_least_support():
    X = LamTerms(2)
    for t in X.stage_elements(2):
        assert support(X, t) == L.free_vars(t)


@pytest.mark.parametrize("src,pos", [("λ. x", 1), ("(x y", 4), ("x )", 2), ("x # y", 2)])
def test_parse_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as e:
        L.parse_term(src)
    assert e.value.pos == pos


def test_worked_example():
    ex = worked_example()
    assert ex["verified"]
    assert ex["output"] == ex["expected"] == "λa2. a2 (x y)"


def test_bind_on_variable_and_identity():
    t = L.parse_term("λa0. a0 a1 a2")
    assert L.bind(L.var(3), {3: t}) == t
    assert L.bind(t, {a: L.var(a) for a in L.free_vars(t)}) == t


@given(named_terms(), st.lists(named_terms(), min_size=5, max_size=5))
def test_bind_matches_de_bruijn_oracle(x, values):
    _, t = x
    gamma = {a: v[1] for a, v in zip(sorted(L.free_vars(t)), values)}
    assert L.bind(t, gamma) == L.oracle_bind(t, gamma)


def test_bind_avoids_capture():
    env = {}
    x = L.parse_term("x", env)
    t = L.parse_term("λx. x y", env)
    assert L.bind(t, {env["y"]: x}) == L.parse_term("λz. z x", env)


def test_bind_equivariant_on_classes():
    LAM = LamTerms(3)
    T = tensor(LAM, LAM, "cap")
    rng = random.Random(1)
    for _ in range(30):
        x = L.random_term(rng, range(2), 2)
        g = {a: L.random_term(rng, range(3), 1) for a in L.free_vars(x)}
        c = T.make(x, g)
        for pi in all_perms(range(4))[::5]:
            assert L.act(pi, class_bind(c)) == class_bind(T.act(pi, c))


def test_beta_via_bind():
    env = {}
    redex = L.parse_term("(λx. x y) (λz. z)", env)
    assert L.beta(redex) == L.parse_term("(λz. z) y", env)
    with pytest.raises(ValueError):
        L.beta(L.parse_term("x y"))


def test_law_suite_at_depth_2():
    laws = law_suite(LambdaConfig(depth=2, exhaustive_depth=2, samples=100, oracle_samples=300))
    assert all(r["status"] == "pass" for r in laws), [r for r in laws if r["status"] != "pass"]
