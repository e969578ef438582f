"""Size caps for the exponential enumerations.

Caps live in a context variable so they can be raised for one block of code
(``with limits(max_enum_size=5): ...``) without touching global state.
"""
from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

from .errors import CapExceeded


@dataclass(frozen=True)
class Limits:
    max_monoid_size: int = 64
    # |H| and |N| for relation/action/factor-set enumeration
    max_enum_size: int = 4
    # |H| for the brute-force cosetal extension oracle
    max_oracle_h: int = 3
    # valid actions, i.e. objects, in the materialised inverse category
    max_category_objects: int = 32


_current: ContextVar[Limits] = ContextVar("cosetal_kit_limits", default=Limits())


def get_limits() -> Limits:
    return _current.get()


@contextmanager
def limits(**overrides):
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def require_enum(*monoids, cap=None):
    cap = get_limits().max_enum_size if cap is None else cap
    for m in monoids:
        if m.size > cap:
            raise CapExceeded(
                f"monoid {m.name or '?'} has {m.size} elements; enumeration cap is {cap}"
            )
