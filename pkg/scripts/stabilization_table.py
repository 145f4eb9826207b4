"""Class counts of X ◇ Y per stage, at inner bound k and k + 1, over each category.

    python3 scripts/stabilization_table.py --cats B I S --bound 3
"""
import argparse
import warnings
from dataclasses import dataclass, field

from nomsub.errors import TruncationUnstable
from nomsub.finset import CATEGORIES
from nomsub.presheaf.laws import pcorpus
from nomsub.presheaf.subst import subst_tensor


@dataclass
class TableConfig:
    cats: list = field(default_factory=lambda: ["B", "I", "S", "F"])
    bound: int = 3
    pairs: list = field(default_factory=lambda: ["y1,Pf", "Pf,y1", "y2,y2", "y2,Pf", "Pf,y2"])


def main(cfg: TableConfig) -> None:
    print(f"{'cat':<4}{'tensor':<10}{'inner k':<22}{'inner k+1':<22}unstable")
    for name in cfg.cats:
        C = pcorpus(CATEGORIES[name], cfg.bound + 1)
        for pair in cfg.pairs:
            x, y = pair.split(",")
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", TruncationUnstable)
                d = subst_tensor(C[x], C[y], outer=cfg.bound, diagnose=True).diagnostic
            print(f"{name:<4}{x + '◇' + y:<10}{str(d['counts']):<22}{str(d['counts_larger_inner']):<22}"
                  f"{d['unstable_stages'] or '-'}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cats", nargs="+", default=["B", "I", "S", "F"], choices=list(CATEGORIES))
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--pairs", nargs="+", default=TableConfig().pairs, help="X,Y names from y0 y1 y2 Pf")
    main(TableConfig(**vars(p.parse_args())))
