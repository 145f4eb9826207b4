"""Run law suites and print a per-suite summary table; optionally save the report.

    python3 scripts/run_all_suites.py --suites lambda bridges --bound 3 --out report.json
"""
import argparse
import time
from dataclasses import dataclass, field

from nomsub.report import to_json
from nomsub.suites import SUITES, SuiteConfig, run_suite


@dataclass
class RunConfig:
    suites: list = field(default_factory=lambda: list(SUITES))
    bound: int | None = None
    seed: int = 0
    out: str | None = None


def main(cfg: RunConfig) -> int:
    reports = {}
    print(f"{'suite':<20}{'bound':>6}{'pass':>6}{'fail':>6}{'skip':>6}{'secs':>9}")
    for name in cfg.suites:
        t0 = time.perf_counter()
        r = run_suite(name, SuiteConfig(bound=cfg.bound, seed=cfg.seed))
        s = r["summary"]
        print(f"{name:<20}{r['bounds'][name]:>6}{s['pass']:>6}{s['fail']:>6}{s['skipped']:>6}"
              f"{time.perf_counter() - t0:>9.1f}")
        for e in r["laws"]:
            if e["status"] != "pass":
                print(f"    {e['status']:<8} {e['id']}")
        reports[name] = r
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(to_json(reports) + "\n")
    return int(any(r["summary"]["fail"] for r in reports.values()))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--suites", nargs="+", choices=list(SUITES), default=list(SUITES))
    p.add_argument("--bound", type=int, default=None, help="override every suite's default bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    raise SystemExit(main(RunConfig(**vars(p.parse_args()))))
