"""Law results and suite reports."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager

from .order import okey

SCHEMA_VERSION = 1


def law(name: str, witness=None, bounds: dict | None = None, **info) -> dict:
    """A law passes exactly when no witness was found."""
    out = {"law": name, "status": "pass" if witness is None else "fail", "bounds": bounds or {}}
    if witness is not None:
        out["witness"] = witness
    out.update(info)
    return out


def skipped(name: str, reason: str, bounds: dict | None = None, **info) -> dict:
    """Not run at these bounds; neither a pass nor a failure."""
    return {"law": name, "status": "skipped", "reason": reason, "bounds": bounds or {}, **info}


@contextmanager
def timed(sink: dict, key: str):
    t0 = time.perf_counter()
    yield
    sink[key] = round(time.perf_counter() - t0, 3)


def failed(results: list) -> list:
    return [r for r in results if r["status"] == "fail"]


def plain(v):
    """JSON-ready copy with sets sorted, so dumps do not depend on hash order."""
    if isinstance(v, dict):
        return {str(k): plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [plain(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return [plain(x) for x in sorted(v, key=okey)]
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return str(v)


def to_json(report) -> str:
    return json.dumps(plain(report), indent=2, sort_keys=True, ensure_ascii=False)
