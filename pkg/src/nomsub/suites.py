"""The law suites by name, and report assembly.

Each suite reads one bound: presheaf and sheaf suites use it as the presheaf
bound, nominal suites as the largest stage, the λ suite as the term depth.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable

from . import lamlaws
from .errors import UnknownSuite
from .nominal import laws as nl
from .presheaf import laws as pl
from .report import SCHEMA_VERSION

DEFAULT_BOUNDS = {"presheaf-monoidal": 3, "nom-substitution": 4, "bridges": 4, "sheaf": 3,
                  "renaming": 4, "lambda": 3}


@dataclass
class SuiteConfig:
    bound: int | None = None     # None: the suite default (or NOMSUB_BOUND)
    seed: int = 0
    timing: bool = False         # wall-clock per suite; off keeps reports byte-identical

    def bound_for(self, suite: str) -> int:
        if self.bound is not None:
            return self.bound
        env = os.environ.get("NOMSUB_BOUND")
        return int(env) if env else DEFAULT_BOUNDS[suite]


def _presheaf(b, seed):
    return pl.presheaf_monoidal(pl.PresheafConfig(bound=b)), {}


def _sheaf(b, seed):
    return pl.sheaf_laws(pl.SheafConfig(bound=b, seed=seed)), {}


def _nom(b, seed):
    laws, note = nl.nom_substitution(nl.NomConfig(stage=b, support_stage=min(b, 3), seed=seed))
    return laws, note


def _bridges(b, seed):
    return nl.bridge_laws(nl.BridgeConfig(bound=b, species_bound=b, seed=seed)), {}


def _renaming(b, seed):
    return nl.renaming_laws(nl.RenConfig(stage=b, support_stage=min(b, 3), bound=b, seed=seed)), {}


def _lambda(b, seed):
    cfg = lamlaws.LambdaConfig(depth=b, exhaustive_depth=min(2, b), seed=seed)
    return lamlaws.law_suite(cfg), {"example": lamlaws.worked_example()}


SUITES: dict[str, Callable] = {
    "presheaf-monoidal": _presheaf,
    "nom-substitution": _nom,
    "bridges": _bridges,
    "sheaf": _sheaf,
    "renaming": _renaming,
    "lambda": _lambda,
}


def _assemble(name: str, laws: list) -> list:
    out, seen = [], set()
    for entry in laws:
        lid = f"{name}/{entry['law']}"
        if lid in seen:
            raise ValueError(f"law registered twice: {lid}")
        seen.add(lid)
        out.append({"id": lid, **entry})
    return sorted(out, key=lambda e: e["id"])


def run_suite(name: str, config: SuiteConfig | None = None) -> dict:
    config = config or SuiteConfig()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    laws, notes, bounds, timing = [], {}, {}, {}
    for n in names:
        b = config.bound_for(n)
        t0 = time.perf_counter()
        got, note = SUITES[n](b, config.seed)
        timing[n] = round(time.perf_counter() - t0, 3)
        laws += _assemble(n, got)
        bounds[n] = b
        if note:
            notes[n] = note
    laws.sort(key=lambda e: e["id"])
    counts = {s: sum(e["status"] == s for e in laws) for s in ("pass", "fail", "skipped")}
    report = {"schema_version": SCHEMA_VERSION, "suite": name, "seed": config.seed, "bounds": bounds,
              "summary": counts, "laws": laws, "notes": notes}
    if config.timing:
        report["timing"] = timing
    return report
