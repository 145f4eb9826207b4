"""A total order on the payloads used throughout (ints, strings, tuples, sets).

Python refuses to compare frozensets lexicographically and mixed types at
all, so canonical forms are chosen by comparing ``okey`` images instead.
"""


def okey(v):
    if isinstance(v, bool) or isinstance(v, int):
        return (1, int(v))
    if isinstance(v, str):
        return (2, v)
    if isinstance(v, tuple):
        return (3, tuple(okey(e) for e in v))
    if isinstance(v, (frozenset, set)):
        return (4, tuple(sorted(okey(e) for e in v)))
    if v is None:
        return (0,)
    sk = getattr(v, "sort_key", None)
    if sk is not None:
        return (5, type(v).__name__, sk())
    raise TypeError(f"no canonical order for {type(v).__name__}")


def least(values):
    return min(values, key=okey)
