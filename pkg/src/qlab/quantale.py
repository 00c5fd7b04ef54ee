"""Finite commutative quantales.

Elements are the indices ``0..n-1``. A quantale is given by an order table,
a tensor table and a unit; joins, meets and the internal hom are derived once
at validation time and never change afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import (
    DimensionMismatch,
    NotALattice,
    NotAMonad,
    NotAPoset,
    NotAssociative,
    NotCommutative,
    NotJoinPreserving,
    NotMonotone,
    ResultNotQuantale,
    Trivial,
    UnitLaw,
    ValidationError,
)

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class Quantale:
    leq: tuple[tuple[bool, ...], ...]
    tensor: Table
    unit: int
    bottom: int
    top: int
    join: Table
    meet: Table
    hom: Table
    names: tuple[str, ...]
    trivial: bool = False

    @property
    def n(self) -> int:
        return len(self.leq)

    @property
    def elements(self) -> range:
        return range(len(self.leq))

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def t(self, a: int, b: int) -> int:
        return self.tensor[a][b]

    def h(self, a: int, b: int) -> int:
        """Internal hom ``[a, b]``."""
        return self.hom[a][b]

    def sup(self, items: Iterable[int]) -> int:
        j = self.join
        return reduce(lambda x, y: j[x][y], items, self.bottom)

    def inf(self, items: Iterable[int]) -> int:
        m = self.meet
        return reduce(lambda x, y: m[x][y], items, self.top)

    def prod(self, items: Iterable[int]) -> int:
        t = self.tensor
        return reduce(lambda x, y: t[x][y], items, self.unit)

    def name(self, a: int) -> str:
        return self.names[a]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __repr__(self) -> str:
        return f"Quantale(n={self.n}, unit={self.names[self.unit]})"


def _tuplify(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def _bound(leq, n, a, b, upper: bool):
    """Least upper (or greatest lower) bound of a and b, or None."""
    if upper:
        cands = [c for c in range(n) if leq[a][c] and leq[b][c]]
        best = [c for c in cands if all(leq[c][d] for d in cands)]
    else:
        cands = [c for c in range(n) if leq[c][a] and leq[c][b]]
        best = [c for c in cands if all(leq[d][c] for d in cands)]
    return best[0] if best else None


def check_partial_order(leq) -> tuple | None:
    """Return a witness of the first failed poset law, or None."""
    n = len(leq)
    for a in range(n):
        if not leq[a][a]:
            return ("reflexivity", a)
    for a, b in product(range(n), repeat=2):
        if a != b and leq[a][b] and leq[b][a]:
            return ("antisymmetry", a, b)
    for a, b, c in product(range(n), repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            return ("transitivity", a, b, c)
    return None


def lattice_tables(leq) -> tuple[Table, Table]:
    """Join and meet tables of a finite lattice; raises NotALattice."""
    n = len(leq)
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            j = _bound(leq, n, a, b, True)
            m = _bound(leq, n, a, b, False)
            if j is None:
                raise NotALattice(f"no join of {a} and {b}", witness=(a, b), law="join")
            if m is None:
                raise NotALattice(f"no meet of {a} and {b}", witness=(a, b), law="meet")
            join[a][b] = join[b][a] = j
            meet[a][b] = meet[b][a] = m
    return _tuplify(join), _tuplify(meet)


def validate_quantale(
    leq: Sequence[Sequence[bool]],
    tensor: Sequence[Sequence[int]],
    unit: int,
    names: Sequence[str] | None = None,
    allow_trivial: bool = False,
    commutative: bool = True,
) -> Quantale:
    """Check every quantale law and return the validated structure.

    Raises the error class of the first violated law with a witness.
    With ``allow_trivial`` the one-element structure is returned with
    ``trivial=True`` instead of raising. ``commutative=False`` admits
    non-commutative tensors (both unit laws and both distributivity laws
    are then checked); ``hom`` is the right residual in that case.
    """
    n = len(leq)
    if n == 0 or any(len(r) != n for r in leq) or len(tensor) != n or any(len(r) != n for r in tensor):
        raise DimensionMismatch("tables must be square and of equal size", witness=(n,))
    if not 0 <= unit < n or any(not 0 <= v < n for r in tensor for v in r):
        raise DimensionMismatch("element index out of range", witness=(unit,))
    leq = tuple(tuple(bool(v) for v in r) for r in leq)
    tensor = _tuplify(tensor)

    bad = check_partial_order(leq)
    if bad:
        raise NotAPoset(f"order fails {bad[0]}", witness=bad[1:], law=bad[0])
    join, meet = lattice_tables(leq)
    bottom = next(a for a in range(n) if all(leq[a]))
    top = next(a for a in range(n) if all(leq[b][a] for b in range(n)))

    if commutative:
        for a, b in product(range(n), repeat=2):
            if tensor[a][b] != tensor[b][a]:
                raise NotCommutative(witness=(a, b))
    for a, b, c in product(range(n), repeat=3):
        if tensor[tensor[a][b]][c] != tensor[a][tensor[b][c]]:
            raise NotAssociative(witness=(a, b, c))
    for a in range(n):
        if tensor[unit][a] != a or tensor[a][unit] != a:
            raise UnitLaw(witness=(unit, a))
    for a in range(n):
        if tensor[a][bottom] != bottom or tensor[bottom][a] != bottom:
            raise NotJoinPreserving("v⊗⊥ ≠ ⊥", witness=(a, bottom), law="bottom")
    for a, b, c in product(range(n), repeat=3):
        if tensor[a][join[b][c]] != join[tensor[a][b]][tensor[a][c]]:
            raise NotJoinPreserving(witness=(a, b, c), law="binary join")
        if tensor[join[b][c]][a] != join[tensor[b][a]][tensor[c][a]]:
            raise NotJoinPreserving(witness=(b, c, a), law="binary join (left)")

    trivial = unit == bottom
    if trivial and not allow_trivial:
        raise Trivial("unit equals bottom", witness=(unit,))

    hom = [[0] * n for _ in range(n)]
    for u, v in product(range(n), repeat=2):
        hom[u][v] = reduce(lambda x, y: join[x][y], (w for w in range(n) if leq[tensor[u][w]][v]), bottom)
    for u, v, w in product(range(n), repeat=3):
        if leq[tensor[u][w]][v] != leq[w][hom[u][v]]:
            # cannot happen once joins are preserved; kept as a guard
            raise NotJoinPreserving("hom adjunction fails", witness=(u, v, w), law="adjunction")

    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise DimensionMismatch("element names must be distinct and match size", witness=tuple(names))
    return Quantale(leq, tensor, unit, bottom, top, join, meet, _tuplify(hom), tuple(names), trivial)


def internal_hom(q: Quantale, u: int, v: int) -> int:
    """``[u, v]``, the largest w with u⊗w ≤ v."""
    return q.hom[u][v]


# ---------------------------------------------------------------- examples


def two() -> Quantale:
    """The two-element Boolean quantale with ⊗ = ∧."""
    return validate_quantale([[1, 1], [0, 1]], [[0, 0], [0, 1]], 1, names=["0", "1"])


def frame(leq: Sequence[Sequence[bool]], names: Sequence[str] | None = None) -> Quantale:
    """A finite distributive lattice as a quantale with ⊗ = ∧ and unit ⊤."""
    _, meet = lattice_tables(_tuplify(leq))
    n = len(leq)
    top = next(a for a in range(n) if all(leq[b][a] for b in range(n)))
    return validate_quantale(leq, meet, top, names=names)


def chain_frame(n: int) -> Quantale:
    return frame([[i <= j for j in range(n)] for i in range(n)])


def powerset_frame(k: int) -> Quantale:
    """Subsets of a k-set under inclusion, indexed by bitmask."""
    n = 1 << k
    return frame([[(a & b) == a for b in range(n)] for a in range(n)],
                 names=["{" + ",".join(str(i) for i in range(k) if a >> i & 1) + "}" for a in range(n)])


def capped_chain(n: int) -> Quantale:
    """Numbers ``0..n-1`` in reversed order with addition capped at ``n-1``.

    The cap is the bottom element, so for ``n >= 3`` there are zero divisors.
    The internal hom is truncated subtraction ``max(v - u, 0)``.
    """
    top = n - 1
    leq = [[a >= b for b in range(n)] for a in range(n)]
    tensor = [[min(a + b, top) for b in range(n)] for a in range(n)]
    return validate_quantale(leq, tensor, 0)


def extended_capped_chain(n: int) -> Quantale:
    """Numbers ``0..n-1`` plus a separate infinity, addition capped at ``n-1``.

    Only infinity (index ``n``) absorbs, so there are no zero divisors; this is
    the closer finite stand-in for the extended half-line.
    """
    inf = n
    size = n + 1

    def key(a):
        return float("inf") if a == inf else a

    leq = [[key(a) >= key(b) for b in range(size)] for a in range(size)]
    tensor = [[inf if inf in (a, b) else min(a + b, n - 1) for b in range(size)] for a in range(size)]
    return validate_quantale(leq, tensor, 0, names=[str(i) for i in range(n)] + ["inf"])


def has_zero_divisors(q: Quantale) -> bool:
    return any(q.t(a, b) == q.bottom for a in q.elements for b in q.elements
               if a != q.bottom and b != q.bottom)


# ---------------------------------------------------------------- morphisms


@dataclass(frozen=True)
class QuantaleMorphism:
    source: Quantale
    target: Quantale
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.n or any(not 0 <= v < self.target.n for v in self.map):
            raise DimensionMismatch("morphism table does not fit its quantales", witness=self.map)

    def __call__(self, v: int) -> int:
        return self.map[v]


def morphism_from(source: Quantale, target: Quantale, fn: Callable[[int], int]) -> QuantaleMorphism:
    return QuantaleMorphism(source, target, tuple(fn(v) for v in source.elements))


def is_monotone_map(q: Quantale, r: Quantale, f: Sequence[int]) -> tuple | None:
    for a, b in product(q.elements, repeat=2):
        if q.le(a, b) and not r.le(f[a], f[b]):
            return (a, b)
    return None


def is_lax(m: QuantaleMorphism) -> bool:
    q, r, f = m.source, m.target, m.map
    if is_monotone_map(q, r, f) is not None:
        return False
    if not r.le(r.unit, f[q.unit]):
        return False
    return all(r.le(r.t(f[a], f[b]), f[q.t(a, b)]) for a, b in product(q.elements, repeat=2))


def is_strong(m: QuantaleMorphism) -> bool:
    q, r, f = m.source, m.target, m.map
    if f[q.bottom] != r.bottom or f[q.unit] != r.unit:
        return False
    for a, b in product(q.elements, repeat=2):
        if f[q.join[a][b]] != r.join[f[a]][f[b]] or f[q.t(a, b)] != r.t(f[a], f[b]):
            return False
    return True


def classify_morphism(m: QuantaleMorphism) -> str:
    """Return ``"strong"``, ``"lax"`` or ``"neither"``; raises NotMonotone."""
    bad = is_monotone_map(m.source, m.target, m.map)
    if bad is not None:
        raise NotMonotone(witness=bad)
    if is_strong(m):
        return "strong"
    if is_lax(m):
        return "lax"
    return "neither"


def unit_inclusion(v: Quantale) -> QuantaleMorphism:
    """2 → V sending 0 to ⊥ and 1 to k."""
    return QuantaleMorphism(two(), v, (v.bottom, v.unit))


def unit_test(v: Quantale) -> QuantaleMorphism:
    """V → 2 sending v to 1 exactly when k ≤ v."""
    return morphism_from(v, two(), lambda x: int(v.le(v.unit, x)))


def support_test(v: Quantale) -> QuantaleMorphism:
    """V → 2 sending v to 1 exactly when v ≠ ⊥."""
    return morphism_from(v, two(), lambda x: int(x != v.bottom))


# ---------------------------------------------------------------- monads


@dataclass
class MonadReport:
    monotone: bool
    unit: bool
    tensor: bool
    idempotent: bool
    inflationary: bool
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.monotone and self.unit and self.tensor and self.idempotent

    def to_dict(self) -> dict:
        return {"monotone": self.monotone, "unit": self.unit, "tensor": self.tensor,
                "idempotent": self.idempotent, "inflationary": self.inflationary,
                "ok": self.ok, "witness": self.witness}


def check_lax_monoidal_monad(q: Quantale, T: Sequence[int]) -> MonadReport:
    T = tuple(T)
    if len(T) != q.n or any(not 0 <= v < q.n for v in T):
        raise DimensionMismatch("endomap does not fit the quantale", witness=T)
    w = {}
    mono = is_monotone_map(q, q, T)
    if mono is not None:
        w["monotone"] = mono
    unit_ok = q.le(q.unit, T[q.unit])
    if not unit_ok:
        w["unit"] = (q.unit,)
    tens = next(((a, b) for a, b in product(q.elements, repeat=2)
                 if not q.le(q.t(T[a], T[b]), T[q.t(a, b)])), None)
    if tens is not None:
        w["tensor"] = tens
    idem = next((a for a in q.elements if T[T[a]] != T[a]), None)
    if idem is not None:
        w["idempotent"] = (idem,)
    infl = next((a for a in q.elements if not q.le(a, T[a])), None)
    if infl is not None:
        w["inflationary"] = (infl,)
    return MonadReport(mono is None, unit_ok, tens is None, idem is None, infl is None, w)


class FixedPoints(NamedTuple):
    quantale: Quantale
    projection: tuple[int, ...]  # Q index -> Q^T index
    carrier: tuple[int, ...]  # Q^T index -> Q index


def fixed_point_quantale(q: Quantale, T: Sequence[int]) -> FixedPoints:
    """The quantale of fixed points of an inflationary lax monoidal monad.

    Tensor is ``T(x⊗y)``, unit ``T(k)``. The one-element result is returned
    with ``trivial=True``.
    """
    T = tuple(T)
    rep = check_lax_monoidal_monad(q, T)
    if not (rep.ok and rep.inflationary):
        raise NotAMonad("T must be an inflationary lax monoidal monad", witness=rep.witness)
    carrier = tuple(x for x in q.elements if T[x] == x)
    pos = {x: i for i, x in enumerate(carrier)}
    leq = [[q.le(a, b) for b in carrier] for a in carrier]
    tensor = [[pos[T[q.t(a, b)]] for b in carrier] for a in carrier]
    try:
        qt = validate_quantale(leq, tensor, pos[T[q.unit]],
                               names=[q.names[x] for x in carrier], allow_trivial=True)
    except ValidationError as e:
        raise ResultNotQuantale(str(e), witness=e.witness, law=e.law) from e
    projection = tuple(pos[T[x]] for x in q.elements)
    # π_T is left adjoint to the inclusion
    for x in q.elements:
        for y in carrier:
            if q.le(T[x], y) != q.le(x, y):
                raise ResultNotQuantale("projection is not left adjoint", witness=(x, y), law="adjunction")
    return FixedPoints(qt, projection, carrier)


def check_vquantale(m):
    """V-quantale report for a monoidal V-category; see :mod:`qlab.colimits`."""
    from .colimits import vquantale_report

    return vquantale_report(m)


def quantale_as_monoidal(v: Quantale):
    """V as a monoidal V-category over itself: hom [−,=], product ⊗, unit k."""
    from .vcat import quantale_vcategory, validate_monoidal

    return validate_monoidal(quantale_vcategory(v), v.tensor, v.unit)
