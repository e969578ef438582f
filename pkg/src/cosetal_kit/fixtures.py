"""The in-repo fixture catalog.

Every example in the test-suite is built from these tables. Names are
case-insensitive; a few aliases are accepted (``2`` for the two-element
meet-semilattice, ``1`` for the trivial monoid, ``klein`` for K4).
"""
from __future__ import annotations

from itertools import permutations

from .monoid import FiniteMonoid


def cyclic(n: int) -> FiniteMonoid:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteMonoid.from_table(table, 0, [str(a) for a in range(n)], f"Z{n}")


def trivial() -> FiniteMonoid:
    return FiniteMonoid.from_table([[0]], 0, ["1"], "1")


def two() -> FiniteMonoid:
    """{top, bot} under meet; top is the identity."""
    return FiniteMonoid.from_table([[0, 1], [1, 1]], 0, ["T", "B"], "2")


def klein() -> FiniteMonoid:
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return FiniteMonoid.from_table(table, 0, ["00", "01", "10", "11"], "K4")


def m3() -> FiniteMonoid:
    """Z2 with an adjoined absorbing element inf."""
    table = [[0, 1, 2], [1, 0, 2], [2, 2, 2]]
    return FiniteMonoid.from_table(table, 0, ["0", "1", "inf"], "M3")


def s3() -> FiniteMonoid:
    perms = sorted(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    labels = ["".join(map(str, p)) for p in perms]
    return FiniteMonoid.from_table(table, idx[(0, 1, 2)], labels, "S3")


def left_zero_plus_identity() -> FiniteMonoid:
    """Two left zeros a, b (xy = x) with an adjoined identity."""
    table = [[0, 1, 2], [1, 1, 1], [2, 2, 2]]
    return FiniteMonoid.from_table(table, 0, ["1", "a", "b"], "LZ2+1")


_BUILDERS = {
    "1": trivial,
    "2": two,
    "z2": lambda: cyclic(2),
    "z3": lambda: cyclic(3),
    "z4": lambda: cyclic(4),
    "k4": klein,
    "m3": m3,
    "s3": s3,
    "lz2+1": left_zero_plus_identity,
}

_ALIASES = {
    "trivial": "1",
    "z1": "1",
    "two": "2",
    "bool": "2",
    "klein": "k4",
    "v4": "k4",
    "lz": "lz2+1",
}

CATALOG = tuple(_BUILDERS)


def get(name: str) -> FiniteMonoid:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in _BUILDERS:
        raise KeyError(f"no fixture named {name!r}; known: {', '.join(CATALOG)}")
    return _BUILDERS[key]()


def is_fixture(name: str) -> bool:
    key = name.strip().lower()
    return _ALIASES.get(key, key) in _BUILDERS
