"""λ-terms modulo α in locally nameless form.

A term is one of
    ('var', a)        a free atom
    ('bv', i)         a bound occurrence, de Bruijn index i
    ('lam', body)
    ('app', f, x)
so α-equivalent terms are equal tuples.  Substitution for free atoms never
needs renaming: substituted terms are locally closed and binders carry no
names.
"""
from __future__ import annotations

import random
import re
from typing import Iterable, Mapping

from .atoms import Renaming, atom_name, fresh
from .errors import ParseError


def var(a: int) -> tuple:
    return ("var", a)


def app(f, x) -> tuple:
    return ("app", f, x)


def _close(t, a, depth):
    tag = t[0]
    if tag == "var":
        return ("bv", depth) if t[1] == a else t
    if tag == "bv":
        return t
    if tag == "lam":
        return ("lam", _close(t[1], a, depth + 1))
    return ("app", _close(t[1], a, depth), _close(t[2], a, depth))


def _open(t, u, depth=0):
    tag = t[0]
    if tag == "bv":
        return u if t[1] == depth else t
    if tag == "var":
        return t
    if tag == "lam":
        return ("lam", _open(t[1], u, depth + 1))
    return ("app", _open(t[1], u, depth), _open(t[2], u, depth))


def lam(a: int, body) -> tuple:
    """λa. body, abstracting the free atom a."""
    return ("lam", _close(body, a, 0))


def free_vars(t) -> frozenset:
    tag = t[0]
    if tag == "var":
        return frozenset([t[1]])
    if tag == "bv":
        return frozenset()
    if tag == "lam":
        return free_vars(t[1])
    return free_vars(t[1]) | free_vars(t[2])


def act(rho: Renaming, t):
    """Rename free atoms; works for permutations and arbitrary renamings."""
    tag = t[0]
    if tag == "var":
        return ("var", rho(t[1]))
    if tag == "bv":
        return t
    if tag == "lam":
        return ("lam", act(rho, t[1]))
    return ("app", act(rho, t[1]), act(rho, t[2]))


def subst(t, sigma: Mapping[int, tuple]):
    """Capture-avoiding simultaneous substitution of free atoms."""
    tag = t[0]
    if tag == "var":
        return sigma.get(t[1], t)
    if tag == "bv":
        return t
    if tag == "lam":
        return ("lam", subst(t[1], sigma))
    return ("app", subst(t[1], sigma), subst(t[2], sigma))


def bind(x, gamma: Mapping[int, tuple]):
    """The monoid multiplication: x[γ] ↦ xγ."""
    return subst(x, gamma)


def beta(redex):
    """(λ. p) q ↦ p with q for the bound variable, via a singleton bind."""
    if redex[0] != "app" or redex[1][0] != "lam":
        raise ValueError("not a β-redex")
    body, arg = redex[1][1], redex[2]
    a = fresh(free_vars(body) | free_vars(arg))[0]
    return bind(_open(body, var(a)), {a: arg})


def size(t) -> int:
    tag = t[0]
    if tag in ("var", "bv"):
        return 1
    if tag == "lam":
        return 1 + size(t[1])
    return 1 + size(t[1]) + size(t[2])


def is_locally_closed(t, depth=0) -> bool:
    tag = t[0]
    if tag == "bv":
        return t[1] < depth
    if tag == "var":
        return True
    if tag == "lam":
        return is_locally_closed(t[1], depth + 1)
    return is_locally_closed(t[1], depth) and is_locally_closed(t[2], depth)


# -- text ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(λ|\\)|(\.)|(\()|(\))|([A-Za-z_][A-Za-z0-9_']*))")
_ATOM = re.compile(r"a(\d+)$")


def _tokens(src: str):
    pos = 0
    out = []
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            pos += len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = ["lam", "dot", "lp", "rp", "name"][m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


def parse(src: str, env: dict | None = None):
    """Parse ``t ::= a | λa. t | t t``; returns (term, env).

    Names of the form a<n> denote atom n.  Other free names are given the
    least atoms not already used, recorded in ``env`` so that several
    inputs can share names.
    """
    env = {} if env is None else env
    toks = _tokens(src)
    explicit = {int(_ATOM.match(v).group(1)) for k, v, _ in toks if k == "name" and _ATOM.match(v)}
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        k, v, p = toks[i]
        if k != kind:
            raise ParseError(f"expected {kind}, found {v or k!r}", p)
        i += 1
        return v

    def atom_of(name):
        m = _ATOM.match(name)
        if m:
            return int(m.group(1))
        if name not in env:
            env[name] = fresh(explicit | set(env.values()))[0]
        return env[name]

    def term(bound):
        nonlocal i
        if peek()[0] == "lam":
            i += 1
            name = take("name")
            take("dot")
            body = term(bound + [name])
            return ("lam", body)
        t = atomic(bound)
        while peek()[0] in ("name", "lp", "lam"):
            if peek()[0] == "lam":
                t = ("app", t, term(bound))
            else:
                t = ("app", t, atomic(bound))
        return t

    def atomic(bound):
        k, v, p = peek()
        if k == "lp":
            take("lp")
            t = term(bound)
            take("rp")
            return t
        if k == "name":
            take("name")
            if v in bound:
                return ("bv", bound[::-1].index(v))
            return ("var", atom_of(v))
        raise ParseError(f"unexpected {v or k!r}", p)

    t = term([])
    if peek()[0] != "end":
        raise ParseError(f"trailing input {peek()[1]!r}", peek()[2])
    return t, env


def parse_term(src: str, env: dict | None = None):
    return parse(src, env)[0]


def show(t, names: Mapping[int, str] | None = None) -> str:
    """Binders are printed as the least atoms not free in the term, so
    parse(show(t)) == t."""
    names = names or {}
    used = set(free_vars(t)) | set(names)

    def nm(a):
        return names.get(a, atom_name(a))

    def go(t, ctx, prec):
        tag = t[0]
        if tag == "var":
            return nm(t[1])
        if tag == "bv":
            return nm(ctx[-1 - t[1]])
        if tag == "lam":
            b = fresh(used | set(ctx))[0]
            s = f"λ{nm(b)}. " + go(t[1], ctx + [b], 0)
            return f"({s})" if prec > 0 else s
        s = go(t[1], ctx, 1) + " " + go(t[2], ctx, 2)
        return f"({s})" if prec > 1 else s

    return go(t, [], 0)


def alpha_eq(t, u) -> bool:
    return t == u


# -- generation ----------------------------------------------------------------

def terms(atoms: Iterable[int], depth: int) -> list:
    """All locally closed terms of height <= depth over the given free atoms."""
    atoms = sorted(atoms)
    memo = {}

    def gen(d, k):
        if (d, k) in memo:
            return memo[(d, k)]
        out = [("var", a) for a in atoms] + [("bv", i) for i in range(k)]
        if d > 0:
            out += [("lam", b) for b in gen(d - 1, k + 1)]
            sub = gen(d - 1, k)
            out += [("app", f, x) for f in sub for x in sub]
        memo[(d, k)] = out
        return out

    return gen(depth, 0)


def random_term(rng: random.Random, atoms: Iterable[int], depth: int, k: int = 0):
    atoms = sorted(atoms)
    leaves = [("var", a) for a in atoms] + [("bv", i) for i in range(k)]
    if depth == 0 or (leaves and rng.random() < 0.3):
        if not leaves:
            return ("lam", random_term(rng, atoms, max(depth - 1, 0), k + 1))
        return rng.choice(leaves)
    if rng.random() < 0.4:
        return ("lam", random_term(rng, atoms, depth - 1, k + 1))
    return ("app", random_term(rng, atoms, depth - 1, k), random_term(rng, atoms, depth - 1, k))


# -- de Bruijn oracle ------------------------------------------------------------
#
# Pure de Bruijn terms ('V', i), ('L', b), ('A', f, x): free atoms become
# indices past the binders into an explicit context list, and substitution
# is the textbook shifting definition.  Shares no code with the above.

def to_db(t, ctx: list):
    def go(t, depth):
        tag = t[0]
        if tag == "var":
            return ("V", depth + ctx.index(t[1]))
        if tag == "bv":
            return ("V", t[1])
        if tag == "lam":
            return ("L", go(t[1], depth + 1))
        return ("A", go(t[1], depth), go(t[2], depth))
    return go(t, 0)


def from_db(t, ctx: list):
    def go(t, depth):
        tag = t[0]
        if tag == "V":
            i = t[1]
            return ("bv", i) if i < depth else ("var", ctx[i - depth])
        if tag == "L":
            return ("lam", go(t[1], depth + 1))
        return ("app", go(t[1], depth), go(t[2], depth))
    return go(t, 0)


def db_shift(t, d, cutoff=0):
    tag = t[0]
    if tag == "V":
        return ("V", t[1] + d) if t[1] >= cutoff else t
    if tag == "L":
        return ("L", db_shift(t[1], d, cutoff + 1))
    return ("A", db_shift(t[1], d, cutoff), db_shift(t[2], d, cutoff))


def db_subst(t, s: Mapping[int, tuple], depth=0):
    """Replace free index j (relative to the top) by s[j], shifting under binders."""
    tag = t[0]
    if tag == "V":
        i = t[1]
        if i >= depth and (i - depth) in s:
            return db_shift(s[i - depth], depth)
        return t
    if tag == "L":
        return ("L", db_subst(t[1], s, depth + 1))
    return ("A", db_subst(t[1], s, depth), db_subst(t[2], s, depth))


def oracle_bind(x, gamma: Mapping[int, tuple]):
    """Simultaneous substitution computed on de Bruijn terms."""
    ctx = sorted(free_vars(x) | set().union(*(free_vars(u) for u in gamma.values()), set()))
    s = {ctx.index(a): to_db(u, ctx) for a, u in gamma.items()}
    return from_db(db_subst(to_db(x, ctx), s), ctx)
