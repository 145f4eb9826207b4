"""Intersection preservation vs the ℐ-sheaf condition on random presheaves.

Reports how many presented presheaves agree, for the default cover bound
(bound + 1) and for the naive one (bound) that misses late-surfacing failures.

    python3 scripts/sheaf_agreement.py --samples 100 --seed 1
"""
import argparse
import random
from dataclasses import dataclass

from nomsub.finset import CATEGORIES
from nomsub.presheaf.checks import ictx_agreement
from nomsub.presheaf.corpus import random_recipe


@dataclass
class AgreementConfig:
    cat: str = "I"
    bound: int = 3
    samples: int = 30
    seed: int = 0
    naive: bool = True   # also try cover_bound = bound


def main(cfg: AgreementConfig) -> None:
    cat = CATEGORIES[cfg.cat]
    rng = random.Random(cfg.seed)
    recipes = [random_recipe(cat, cfg.bound, rng) for _ in range(cfg.samples)]
    cover_bounds = [cfg.bound + 1] + ([cfg.bound] if cfg.naive else [])
    for cb in cover_bounds:
        reps = [ictx_agreement(r, cat, cfg.bound, cover_bound=cb) for r in recipes]
        sheaves = sum(r["sheaf"] for r in reps)
        bad = [r for r in reps if not r["agree"]]
        print(f"cover_bound={cb}: {len(reps) - len(bad)}/{len(reps)} agree, {sheaves} sheaves")
        for r in bad:
            print(f"    {r['name']}: intersections={r['intersections']} sheaf={r['sheaf']}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cat", default="I", choices=list(CATEGORIES))
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--samples", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-naive", dest="naive", action="store_false")
    main(AgreementConfig(**vars(p.parse_args())))
