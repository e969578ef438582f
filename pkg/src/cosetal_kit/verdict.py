from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """A boolean answer that carries the reason when it is negative."""

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


PASS = Verdict(True)
