"""Resource caps shared by every module."""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


class CapExceeded(ValueError):
    """Raised when an operation would exceed a configured grade cap."""


@dataclass(frozen=True)
class Limits:
    # coproduct of a grade-n word has 2**n terms
    coproduct_grade: int = 8
    # Symm/ASymm average over n! permutations
    projection_grade: int = 7


_current = Limits()


def limits() -> Limits:
    return _current


@contextlib.contextmanager
def override_limits(**changes):
    """Temporarily replace the active caps, e.g. ``override_limits(projection_grade=3)``."""
    global _current
    saved = _current
    _current = replace(saved, **changes)
    try:
        yield _current
    finally:
        _current = saved


def check_coproduct_grade(n: int) -> None:
    if n > _current.coproduct_grade:
        raise CapExceeded(f"coproduct of a grade-{n} word exceeds cap {_current.coproduct_grade}")


def check_projection_grade(n: int) -> None:
    if n > _current.projection_grade:
        raise CapExceeded(f"projection of a grade-{n} word exceeds cap {_current.projection_grade}")
