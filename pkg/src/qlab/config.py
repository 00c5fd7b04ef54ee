"""Global resource bounds.

``max_cells`` caps any exhaustive enumeration (|V|^|X| presheaf vectors,
functor tables, Kleisli intermediate lists). ``max_list_len`` bounds list
lengths wherever a property quantifies over all finite lists.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass

from .errors import ResourceCap


@dataclass
class Limits:
    max_cells: int = 1 << 20
    max_list_len: int = 6
    max_size: int = 10


def _from_env() -> Limits:
    lim = Limits()
    raw = os.environ.get("QLAB_MAX_CELLS")
    if raw:
        lim.max_cells = int(raw)
    return lim


limits = _from_env()


@contextmanager
def override(**kwargs):
    """Temporarily change limits, e.g. ``with override(max_list_len=3): ...``."""
    old = {k: getattr(limits, k) for k in kwargs}
    for k, v in kwargs.items():
        setattr(limits, k, v)
    try:
        yield limits
    finally:
        for k, v in old.items():
            setattr(limits, k, v)


def require_cells(count: int, what: str) -> None:
    if count > limits.max_cells:
        raise ResourceCap(f"{what}: {count} exceeds cap {limits.max_cells}", witness=(count, limits.max_cells))
