"""V-relations (the arrows of V-Mat) and their list extension.

A relation ``r : X ⇸ Y`` is a ``|X|×|Y|`` table of quantale elements.
Relations over lists are never materialized: the list extension and Kleisli
composites are evaluated one query at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Callable, Sequence

from . import config
from .errors import DimensionMismatch, NotLax, QuantaleMismatch
from .quantale import Quantale, QuantaleMorphism, is_lax


@dataclass(frozen=True, eq=False)
class VRelation:
    quantale: Quantale
    entries: tuple[tuple[int, ...], ...]
    dst_size: int

    @classmethod
    def of(cls, q: Quantale, rows: Sequence[Sequence[int]], dst_size: int | None = None) -> "VRelation":
        rows = tuple(tuple(r) for r in rows)
        if dst_size is None:
            dst_size = len(rows[0]) if rows else 0
        if any(len(r) != dst_size for r in rows):
            raise DimensionMismatch("ragged relation table", witness=tuple(len(r) for r in rows))
        if any(not 0 <= v < q.n for r in rows for v in r):
            raise DimensionMismatch("entry out of range")
        return cls(q, rows, dst_size)

    @property
    def src_size(self) -> int:
        return len(self.entries)

    def __call__(self, x: int, y: int) -> int:
        return self.entries[x][y]

    def __eq__(self, other) -> bool:
        return (isinstance(other, VRelation) and self.quantale is other.quantale
                and self.entries == other.entries and self.dst_size == other.dst_size)

    def __hash__(self):
        return hash((self.entries, self.dst_size))

    def __le__(self, other: "VRelation") -> bool:
        q = self.quantale
        return all(q.le(a, b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))


def _same_quantale(r: VRelation, s: VRelation) -> Quantale:
    if r.quantale is not s.quantale:
        raise QuantaleMismatch("relations live over different quantales")
    return r.quantale


def compose(r: VRelation, s: VRelation) -> VRelation:
    """``s·r : X ⇸ Z`` for ``r : X ⇸ Y`` and ``s : Y ⇸ Z``."""
    q = _same_quantale(r, s)
    if r.dst_size != s.src_size:
        raise DimensionMismatch("middle dimensions differ", witness=(r.dst_size, s.src_size))
    rows = [[q.sup(q.t(r.entries[x][y], s.entries[y][z]) for y in range(r.dst_size))
             for z in range(s.dst_size)] for x in range(r.src_size)]
    return VRelation(q, tuple(map(tuple, rows)), s.dst_size)


def identity(q: Quantale, n: int) -> VRelation:
    return VRelation(q, tuple(tuple(q.unit if x == y else q.bottom for y in range(n)) for x in range(n)), n)


def involution(r: VRelation) -> VRelation:
    rows = tuple(tuple(r.entries[x][y] for x in range(r.src_size)) for y in range(r.dst_size))
    return VRelation(r.quantale, rows, r.src_size)


def join(r: VRelation, s: VRelation) -> VRelation:
    q = _same_quantale(r, s)
    rows = tuple(tuple(q.join[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(r.entries, s.entries))
    return VRelation(q, rows, r.dst_size)


def from_function(q: Quantale, f: Sequence[int], dst_size: int) -> VRelation:
    """Graph of ``f : X → Y`` with entries k on the graph and ⊥ elsewhere."""
    if any(not 0 <= v < dst_size for v in f):
        raise DimensionMismatch("function value out of range", witness=tuple(f))
    return VRelation(q, tuple(tuple(q.unit if f[x] == y else q.bottom for y in range(dst_size))
                              for x in range(len(f))), dst_size)


def change_of_base(m: QuantaleMorphism, r: VRelation) -> VRelation:
    if r.quantale is not m.source:
        raise QuantaleMismatch("relation is not over the morphism's source")
    if not is_lax(m):
        raise NotLax("change of base needs a lax morphism", witness=m.map)
    return VRelation(m.target, tuple(tuple(m.map[v] for v in row) for row in r.entries), r.dst_size)


def pointwise_le_via_hom(r: VRelation, s: VRelation) -> bool:
    """``r ≤ s`` read off as ``k ≤ ⋀ [r(x,y), s(x,y)]``."""
    q = _same_quantale(r, s)
    return q.le(q.unit, q.inf(q.h(a, b) for ra, rb in zip(r.entries, s.entries) for a, b in zip(ra, rb)))


# ---------------------------------------------------------------- lists


def lift_list_eval(r: VRelation | Callable[[int, int], int], xs: Sequence[int], ys: Sequence[int],
                   q: Quantale | None = None) -> int:
    """``Lr(x̄, ȳ)``: tensor of the entries, ⊥ on a length mismatch."""
    if q is None:
        q = r.quantale
    if len(xs) != len(ys):
        return q.bottom
    return q.prod(r(x, y) for x, y in zip(xs, ys))


def block_splits(xs: Sequence, blocks: int):
    """All ways to cut ``xs`` into ``blocks`` consecutive, possibly empty, pieces."""
    n = len(xs)
    xs = tuple(xs)
    for cuts in combinations_with_replacement(range(n + 1), blocks - 1):
        bounds = (0, *cuts, n)
        yield tuple(xs[bounds[i]:bounds[i + 1]] for i in range(blocks))


def kleisli_compose_eval(
    q: Quantale,
    r: Callable[[tuple, int], int],
    s: Callable[[tuple, int], int],
    y_size: int,
    xs: Sequence[int],
    z: int,
    max_blocks: int | None = None,
) -> int:
    """``(s∘r)(x̄, z)`` for ``r : LX ⇸ Y`` and ``s : LY ⇸ Z``.

    The join runs over every way of writing ``x̄`` as a concatenation of
    ``b`` blocks and every intermediate list ``ȳ`` of length ``b``. Empty
    blocks are allowed, so ``b`` is bounded by ``max_blocks`` (default the
    global ``max_list_len``, and never below ``len(x̄)``).
    """
    if max_blocks is None:
        max_blocks = max(config.limits.max_list_len, len(xs))
    total = sum(y_size ** b for b in range(max_blocks + 1))
    config.require_cells(total * (len(xs) + 1), "Kleisli composite")
    best = q.bottom
    for b in range(max_blocks + 1):
        for split in block_splits(xs, b) if b else ([()] if not xs else []):
            for ys in product(range(y_size), repeat=b):
                v = s(ys, z)
                if v == q.bottom:
                    continue
                for block, y in zip(split, ys):
                    v = q.t(v, r(block, y))
                    if v == q.bottom:
                        break
                best = q.join[best][v]
                if best == q.top:
                    return best
    return best


def list_unit_op(q: Quantale, x_size: int) -> Callable[[tuple, int], int]:
    """``e_X° : LX ⇸ X``, k exactly on singleton lists ``(x), x``."""
    return lambda xs, y: q.unit if len(xs) == 1 and xs[0] == y else q.bottom
