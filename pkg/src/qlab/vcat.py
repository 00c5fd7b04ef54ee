"""Finite V-categories, V-functors, presheaves and monoidal structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import config
from .errors import (
    DimensionMismatch,
    NotAFunctor,
    NotAssociative,
    NotParallel,
    QuantaleMismatch,
    ReflexivityFail,
    TransitivityFail,
    UnitFail,
)
from .quantale import Quantale

Hom = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class VCategory:
    quantale: Quantale
    hom: Hom
    labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.hom)

    @property
    def points(self) -> range:
        return range(len(self.hom))

    def __call__(self, x: int, y: int) -> int:
        return self.hom[x][y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __repr__(self) -> str:
        return f"VCategory(size={self.size})"


@dataclass(frozen=True, eq=False)
class VFunctor:
    source: VCategory
    target: VCategory
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def fully_faithful(self) -> bool:
        a, b, f = self.source, self.target, self.map
        return all(a(x, y) == b(f[x], f[y]) for x, y in product(a.points, repeat=2))


@dataclass(frozen=True, eq=False)
class MonoidalVCat:
    cat: VCategory
    mult: Hom
    unit: int

    @property
    def quantale(self) -> Quantale:
        return self.cat.quantale

    @property
    def size(self) -> int:
        return self.cat.size

    @property
    def points(self) -> range:
        return self.cat.points

    def m(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def prod(self, xs: Sequence[int]) -> int:
        r = self.unit
        for x in xs:
            r = self.mult[r][x]
        return r


@dataclass(frozen=True, eq=False)
class PresheafCategory:
    """Presheaves (or copresheaves) on ``base`` with their enriched hom.

    ``carrier[i]`` is the value vector of the i-th object; ``index`` maps a
    vector back to its position.
    """

    cat: VCategory
    base: VCategory
    carrier: tuple[tuple[int, ...], ...]
    index: dict = field(repr=False)
    contravariant: bool

    @property
    def size(self) -> int:
        return len(self.carrier)


def _tup(rows) -> Hom:
    return tuple(tuple(r) for r in rows)


def validate_vcategory(q: Quantale, hom: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> VCategory:
    n = len(hom)
    if any(len(r) != n for r in hom) or any(not 0 <= v < q.n for r in hom for v in r):
        raise DimensionMismatch("hom table must be square over the quantale", witness=(n,))
    hom = _tup(hom)
    for x in range(n):
        if not q.le(q.unit, hom[x][x]):
            raise ReflexivityFail(witness=(x,))
    for x, y, z in product(range(n), repeat=3):
        if not q.le(q.t(hom[x][y], hom[y][z]), hom[x][z]):
            raise TransitivityFail(witness=(x, y, z))
    return VCategory(q, hom, tuple(labels) if labels else None)


def is_vfunctor(a: VCategory, b: VCategory, f: Sequence[int]) -> tuple | None:
    q = a.quantale
    for x, y in product(a.points, repeat=2):
        if not q.le(a(x, y), b(f[x], f[y])):
            return (x, y)
    return None


def validate_vfunctor(a: VCategory, b: VCategory, f: Sequence[int]) -> VFunctor:
    if a.quantale is not b.quantale:
        raise QuantaleMismatch()
    f = tuple(f)
    if len(f) != a.size or any(not 0 <= v < b.size for v in f):
        raise DimensionMismatch("map does not fit its categories", witness=f)
    bad = is_vfunctor(a, b, f)
    if bad:
        raise NotAFunctor(witness=bad)
    return VFunctor(a, b, f)


def validate_monoidal(x: VCategory, mult: Sequence[Sequence[int]], unit: int) -> MonoidalVCat:
    n, q = x.size, x.quantale
    if len(mult) != n or any(len(r) != n for r in mult) or not 0 <= unit < n:
        raise DimensionMismatch("multiplication table must be square", witness=(n,))
    mult = _tup(mult)
    for a, b, c in product(range(n), repeat=3):
        if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
            raise NotAssociative(witness=(a, b, c))
    for a in range(n):
        if mult[unit][a] != a or mult[a][unit] != a:
            raise UnitFail(witness=(unit, a))
    for a, a2, b, b2 in product(range(n), repeat=4):
        if not q.le(q.t(x(a, a2), x(b, b2)), x(mult[a][b], mult[a2][b2])):
            raise NotAFunctor("multiplication is not a V-functor", witness=(a, a2, b, b2))
    return MonoidalVCat(x, mult, unit)


# ---------------------------------------------------------------- examples


def quantale_vcategory(q: Quantale) -> VCategory:
    """V as a V-category with hom ``[−,=]``."""
    return validate_vcategory(q, q.hom, q.names)


def discrete(q: Quantale, n: int) -> VCategory:
    return VCategory(q, _tup([[q.unit if i == j else q.bottom for j in range(n)] for i in range(n)]))


def from_order(q: Quantale, leq: Sequence[Sequence[bool]], labels=None) -> VCategory:
    """A preorder as a V-category with entries k and ⊥."""
    return validate_vcategory(q, [[q.unit if v else q.bottom for v in r] for r in leq], labels)


# ---------------------------------------------------------------- constructions


def opposite(x: VCategory) -> VCategory:
    return VCategory(x.quantale, _tup(zip(*x.hom)), x.labels)


def pair_index(ny: int, x: int, y: int) -> int:
    return x * ny + y


def tensor(x: VCategory, y: VCategory) -> VCategory:
    """``X ⊠ Y`` on pairs ``(x, y)`` encoded as ``x*|Y| + y``."""
    if x.quantale is not y.quantale:
        raise QuantaleMismatch()
    q, ny = x.quantale, y.size
    pts = list(product(x.points, y.points))
    hom = [[q.t(x(a, a2), y(b, b2)) for a2, b2 in pts] for a, b in pts]
    labels = [f"({x.label(a)},{y.label(b)})" for a, b in pts]
    return VCategory(q, _tup(hom), tuple(labels))


def unit_K(q: Quantale) -> VCategory:
    return VCategory(q, ((q.unit,),))


def all_vfunctors(x: VCategory, y: VCategory) -> list[tuple[int, ...]]:
    """Every V-functor ``X → Y`` as a table, in lexicographic order."""
    config.require_cells(y.size ** x.size, "functor enumeration")
    q = x.quantale
    out: list[tuple[int, ...]] = []
    f: list[int] = []

    def extend(i: int):
        if i == x.size:
            out.append(tuple(f))
            return
        for v in y.points:
            if all(q.le(x(i, j), y(v, f[j])) and q.le(x(j, i), y(f[j], v)) for j in range(i)) \
                    and q.le(x(i, i), y(v, v)):
                f.append(v)
                extend(i + 1)
                f.pop()

    extend(0)
    return out


def functor_category(x: VCategory, y: VCategory) -> tuple[VCategory, list[tuple[int, ...]]]:
    """``[X, Y]`` with hom ``⋀ₓ b(f(x), g(x))``; returns the category and its carrier."""
    q = x.quantale
    fs = all_vfunctors(x, y)
    hom = [[q.inf(y(f[i], g[i]) for i in x.points) for g in fs] for f in fs]
    return VCategory(q, _tup(hom)), fs


def _enumerate_vectors(x: VCategory, contravariant: bool) -> list[tuple[int, ...]]:
    q = x.quantale
    config.require_cells(q.n ** x.size, "presheaf enumeration")
    out: list[tuple[int, ...]] = []
    v: list[int] = []

    def ok(i: int, val: int) -> bool:
        for j in range(i):
            if contravariant:  # j(x)⊗a(y,x) ≤ j(y)
                if not q.le(q.t(val, x(j, i)), v[j]) or not q.le(q.t(v[j], x(i, j)), val):
                    return False
            else:  # l(x)⊗a(x,y) ≤ l(y)
                if not q.le(q.t(val, x(i, j)), v[j]) or not q.le(q.t(v[j], x(j, i)), val):
                    return False
        return q.le(q.t(val, x(i, i)), val)

    def extend(i: int):
        if i == x.size:
            out.append(tuple(v))
            return
        for val in q.elements:
            if ok(i, val):
                v.append(val)
                extend(i + 1)
                v.pop()

    extend(0)
    return out


def is_presheaf(x: VCategory, j: Sequence[int]) -> bool:
    q = x.quantale
    return all(q.le(q.t(j[a], x(b, a)), j[b]) for a, b in product(x.points, repeat=2))


def is_copresheaf(x: VCategory, l: Sequence[int]) -> bool:
    q = x.quantale
    return all(q.le(q.t(l[a], x(a, b)), l[b]) for a, b in product(x.points, repeat=2))


def presheaf_hom(q: Quantale, j: Sequence[int], j2: Sequence[int]) -> int:
    return q.inf(q.h(a, b) for a, b in zip(j, j2))


def presheaf_category(x: VCategory) -> PresheafCategory:
    """``𝔻(X)``: presheaves with hom ``⋀ [j(x), j'(x)]``."""
    q = x.quantale
    car = tuple(_enumerate_vectors(x, True))
    config.require_cells(len(car) ** 2 * x.size, "presheaf hom table")
    hom = [[presheaf_hom(q, j, j2) for j2 in car] for j in car]
    return PresheafCategory(VCategory(q, _tup(hom)), x, car, {v: i for i, v in enumerate(car)}, True)


def copresheaf_category(x: VCategory) -> PresheafCategory:
    """``𝕌(X)``: copresheaves with hom ``⋀ [l'(x), l(x)]``."""
    q = x.quantale
    car = tuple(_enumerate_vectors(x, False))
    config.require_cells(len(car) ** 2 * x.size, "copresheaf hom table")
    hom = [[presheaf_hom(q, l2, l) for l2 in car] for l in car]
    return PresheafCategory(VCategory(q, _tup(hom)), x, car, {v: i for i, v in enumerate(car)}, False)


def yoneda(x: VCategory, d: PresheafCategory | None = None) -> VFunctor:
    """``x ↦ a(−, x)`` into ``𝔻(X)``."""
    d = d or presheaf_category(x)
    f = tuple(d.index[tuple(x(y, p) for y in x.points)] for p in x.points)
    return VFunctor(x, d.cat, f)


def coyoneda(x: VCategory, u: PresheafCategory | None = None) -> VFunctor:
    """``x ↦ a(x, =)`` into ``𝕌(X)``."""
    u = u or copresheaf_category(x)
    f = tuple(u.index[tuple(x(p, y) for y in x.points)] for p in x.points)
    return VFunctor(x, u.cat, f)


# ---------------------------------------------------------------- orders


def underlying_order(x: VCategory) -> tuple[tuple[bool, ...], ...]:
    q = x.quantale
    return tuple(tuple(q.le(q.unit, v) for v in r) for r in x.hom)


def support_order(x: VCategory) -> tuple[tuple[bool, ...], ...]:
    q = x.quantale
    return tuple(tuple(v != q.bottom for v in r) for r in x.hom)


def is_separated(x: VCategory) -> bool:
    o = underlying_order(x)
    return all(not (o[a][b] and o[b][a]) for a in x.points for b in x.points if a != b)


def functor_order(f: VFunctor, g: VFunctor) -> tuple[int, bool]:
    """``⋀ₓ b(f(x), g(x))`` and whether k lies below it."""
    if f.source is not g.source or f.target is not g.target:
        raise NotParallel()
    b, q = f.target, f.target.quantale
    v = q.inf(b(f(x), g(x)) for x in f.source.points)
    return v, q.le(q.unit, v)


# ---------------------------------------------------------------- isomorphism


def find_isomorphism(x: VCategory, y: VCategory, mult: tuple | None = None) -> tuple[int, ...] | None:
    """A bijection ``f`` with ``a(p, p') = b(f p, f p')`` or None.

    ``mult`` optionally gives ``(mult_x, unit_x, mult_y, unit_y)`` that the
    bijection must also preserve. Candidates are pruned by a per-point
    signature (diagonal value and sorted row/column values).
    """
    n = x.size
    if n != y.size or x.quantale is not y.quantale:
        return None

    def sig(c: VCategory, p: int):
        return (c(p, p), tuple(sorted(c.hom[p])), tuple(sorted(c(r, p) for r in c.points)))

    sx = [sig(x, p) for p in x.points]
    sy = [sig(y, p) for p in y.points]
    if sorted(sx) != sorted(sy):
        return None
    cands = [[v for v in y.points if sy[v] == sx[p]] for p in x.points]
    order = sorted(x.points, key=lambda p: len(cands[p]))
    f = [-1] * n
    used = [False] * n

    def consistent(p: int, v: int) -> bool:
        for r in x.points:
            w = f[r]
            if w < 0:
                continue
            if x(p, r) != y(v, w) or x(r, p) != y(w, v):
                return False
        return True

    def mult_ok() -> bool:
        if mult is None:
            return True
        mx, ux, my, uy = mult
        return f[ux] == uy and all(f[mx[a][b]] == my[f[a]][f[b]] for a in x.points for b in x.points)

    def go(i: int) -> bool:
        if i == n:
            return mult_ok()
        p = order[i]
        for v in cands[p]:
            if not used[v] and consistent(p, v):
                f[p], used[v] = v, True
                if go(i + 1):
                    return True
                f[p], used[v] = -1, False
        return False

    return tuple(f) if go(0) else None


def is_lax_monoidal(m: MonoidalVCat, n: MonoidalVCat, f: Sequence[int]) -> tuple | None:
    """Witness of failure of ``u_Y ≤ f(u_X)`` or ``f(x)∗f(z) ≤ f(x∗z)``, else None."""
    q, b = m.quantale, n.cat
    if not q.le(q.unit, b(n.unit, f[m.unit])):
        return ("unit",)
    for x, z in product(m.points, repeat=2):
        if not q.le(q.unit, b(n.m(f[x], f[z]), f[m.m(x, z)])):
            return ("mult", x, z)
    return None
