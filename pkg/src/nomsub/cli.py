"""nomsub: run law suites and dump tensors, presheaves, homs and orbits as JSON.

    nomsub run all --bound 3 --out report.json
    nomsub tensor --kind sub A*2 A --stage 3
    nomsub presheaf "I_star(PfA@2)" --cat I --bound 3
    nomsub hom y2 --cat I --bound 4
    nomsub orbit PfA@2 --stage 2
    nomsub lambda bind "λx. x y" --sub "y=x y"
    nomsub counterexamples
"""
from __future__ import annotations

import argparse
import os
import re
import sys
import warnings

from . import lam as L
from .errors import NomsubError, TruncationUnstable, UnknownObject
from .finset import CATEGORIES, hom_enumerate
from .nominal.bridges import i_star
from .nominal.core import corpus, orbit_canon, orbit_reps, support
from .nominal.renaming import FreeGroup, RenTensor, counterexamples
from .nominal.tensor import tensor
from .presheaf.core import representable
from .presheaf.corpus import free_group, powerset
from .report import SCHEMA_VERSION, to_json
from .suites import SUITES, SuiteConfig, run_suite


def nom_object(name: str):
    if name.startswith("FreeGroup@"):
        return FreeGroup(int(name.split("@")[1]))
    if name == "FreeGroup":
        return FreeGroup(2)
    try:
        return corpus()[name]
    except KeyError:
        raise UnknownObject(f"unknown nominal set {name!r}; known: {', '.join(sorted(corpus()))}") from None


def presheaf_object(name: str, cat_name: str, bound: int):
    if cat_name not in CATEGORIES:
        raise UnknownObject(f"unknown index category {cat_name!r}; known: {', '.join(CATEGORIES)}")
    cat = CATEGORIES[cat_name]
    m = re.fullmatch(r"I_star\((.+)\)", name)
    if m:
        return i_star(nom_object(m.group(1)), bound, cat)
    m = re.fullmatch(r"y(\d+)", name)
    if m:
        return representable(cat, bound, int(m.group(1)))
    if name == "Pf":
        return powerset(cat, bound)
    if name == "FreeGroup":
        return free_group(cat, bound)
    if name in corpus():
        return i_star(nom_object(name), bound, cat)
    raise UnknownObject(f"unknown presheaf {name!r}; use yK, Pf, FreeGroup, a nominal set name or I_star(NAME)")


def _default_bound(fallback: int) -> int:
    env = os.environ.get("NOMSUB_BOUND")
    return int(env) if env else fallback


# -- commands ------------------------------------------------------------------------

def cmd_run(args) -> tuple:
    report = run_suite(args.suite, SuiteConfig(bound=args.bound, seed=args.seed, timing=args.timing))
    return report, int(report["summary"]["fail"] > 0)


def cmd_tensor(args) -> tuple:
    X, Y = nom_object(args.X), nom_object(args.Y)
    T = RenTensor(X, Y) if args.kind == "ren" else tensor(X, Y, args.kind)
    stage = args.stage if args.stage is not None else _default_bound(3)
    classes = T.stage_elements(stage)
    rows = [{"class": T.show(c), "support": sorted(T.class_support(c))} for c in classes]
    return {"schema_version": SCHEMA_VERSION, "what": "tensor", "kind": args.kind, "X": X.name, "Y": Y.name,
            "stage": stage, "count": len(rows), "classes": rows}, 0


def cmd_presheaf(args) -> tuple:
    bound = args.bound if args.bound is not None else _default_bound(3)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationUnstable)
        P = presheaf_object(args.name, args.cat, bound)
        out = {"schema_version": SCHEMA_VERSION, "what": "presheaf", "name": args.name, **P.to_json()}
    out["warnings"] = [str(w.message) for w in caught if issubclass(w.category, TruncationUnstable)]
    return out, 0


def cmd_hom(args) -> tuple:
    bound = args.bound if args.bound is not None else _default_bound(4)
    P = presheaf_object(args.name, args.cat, bound)
    out = {"schema_version": SCHEMA_VERSION, "what": "hom", "name": args.name, **P.to_json()}
    m = re.fullmatch(r"y(\d+)", args.name)
    if m:
        k, cat = int(m.group(1)), CATEGORIES[args.cat]
        out["homs"] = [{"n": n, "maps": [f.to_json() for f in hom_enumerate(cat, k, n)]} for n in range(bound + 1)]
    return out, 0


def cmd_orbit(args) -> tuple:
    X = nom_object(args.X)
    stage = args.stage if args.stage is not None else _default_bound(2)
    reps = orbit_reps(X, range(stage))
    rows = []
    for x in reps:
        size = sum(1 for y in X.stage_elements(stage) if orbit_canon(X, y) == orbit_canon(X, x))
        rows.append({"rep": X.show(x), "support": sorted(support(X, x)), "size_at_stage": size})
    return {"schema_version": SCHEMA_VERSION, "what": "orbit", "X": X.name, "stage": stage,
            "count": len(rows), "orbits": rows}, 0


def cmd_lambda(args) -> tuple:
    env = {}
    t = L.parse_term(args.term, env)
    gamma = {a: L.var(a) for a in L.free_vars(t)}
    subs = []
    for part in filter(None, (p.strip() for p in (args.sub or "").split(","))):
        if "=" not in part:
            raise NomsubError(f"substitution entry {part!r} is not NAME=TERM")
        name, src = (s.strip() for s in part.split("=", 1))
        value = L.parse_term(src, env)
        subs.append((name, src))
        if name in env and env[name] in gamma:
            gamma[env[name]] = value
    out = L.bind(t, gamma)
    names = {a: n for n, a in env.items()}
    return {"schema_version": SCHEMA_VERSION, "what": "lambda-bind", "term": L.show(t, names),
            "sub": {n: s for n, s in sorted(subs)}, "result": L.show(out, names)}, 0


def cmd_counterexamples(args) -> tuple:
    ces = counterexamples()
    return {"schema_version": SCHEMA_VERSION, "what": "counterexamples", "counterexamples": ces}, \
        int(not all(c["verified"] for c in ces))


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--format", choices=["json"], default="json")

    p = argparse.ArgumentParser(prog="nomsub", description="Substitution tensors checked at finite stages.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run a law suite")
    r.add_argument("suite", help=" | ".join(list(SUITES) + ["all"]))
    r.add_argument("--bound", type=int, default=None)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--timing", action="store_true", help="include wall-clock seconds per suite")
    r.set_defaults(fn=cmd_run)

    t = sub.add_parser("tensor", parents=[common], help="classes of X ◇ Y at a stage")
    t.add_argument("--kind", choices=["sub", "cap", "uniform", "ren"], default="sub")
    t.add_argument("X")
    t.add_argument("Y")
    t.add_argument("--stage", type=int, default=None)
    t.set_defaults(fn=cmd_tensor)

    for cmd, fn, helptext in (("presheaf", cmd_presheaf, "a truncated presheaf as JSON"),
                              ("hom", cmd_hom, "a representable with its hom tables")):
        q = sub.add_parser(cmd, parents=[common], help=helptext)
        q.add_argument("name")
        q.add_argument("--cat", default="I", help="B | I | S | F")
        q.add_argument("--bound", type=int, default=None)
        q.set_defaults(fn=fn)

    o = sub.add_parser("orbit", parents=[common], help="orbit representatives of a nominal set")
    o.add_argument("X")
    o.add_argument("--stage", type=int, default=None)
    o.set_defaults(fn=cmd_orbit)

    lam = sub.add_parser("lambda", parents=[common], help="λ-term operations")
    lsub = lam.add_subparsers(dest="op", required=True)
    b = lsub.add_parser("bind", parents=[common], help="simultaneous capture-avoiding substitution")
    b.add_argument("term")
    b.add_argument("--sub", default="", help='"a=<term>,b=<term>"')
    b.set_defaults(fn=cmd_lambda)

    c = sub.add_parser("counterexamples", parents=[common], help="the two relevance counterexamples")
    c.set_defaults(fn=cmd_counterexamples)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, code = args.fn(args)
    except NomsubError as e:
        print(f"nomsub: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    text = to_json(result) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
