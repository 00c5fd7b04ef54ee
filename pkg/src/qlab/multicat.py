"""Promonoidal V-categories, (pre)quantum B-algebras and their list structures.

A promonoidal structure ``(a, P, J)`` on X induces a V-relation
``ã : LX ⇸ X`` by ``ã(()) = J``, ``ã((x)) = a(x, −)``, ``ã((x,y)) = P(x,y,−)``
and, for longer lists, ``ã((x₁, x̄), y) = ⋁_c ã(x̄, c) ⊗ P(x₁, c, y)``.

The vector ``ã(x̄, −)`` (the *state* of x̄) determines the state of every
extension of x̄ to the left, and there are finitely many states. Questions
about all lists (functoriality, full faithfulness) are therefore decided
exactly by a search over reachable states.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from . import config
from .errors import (AmbiguousNonSeparated, DimensionMismatch, NoColimit, NotAQBA, NotPromonoidal,
                     NotRepresentable, QuantaleMismatch)
from .quantale import Quantale, QuantaleMorphism, is_lax
from .vcat import MonoidalVCat, VCategory, is_separated, is_vfunctor
from .vmat import kleisli_compose_eval

Cube = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True, eq=False)
class InducedLV:
    """The (L,V)-structure generated by ``(a, P, J)``.

    ``InducedLV`` itself is not required to satisfy the promonoidal laws;
    e.g. ``P = ⊥, J = ⊥`` gives the structure with only unary arrows.
    """

    cat: VCategory
    P: Cube
    J: tuple[int, ...]

    @property
    def quantale(self) -> Quantale:
        return self.cat.quantale

    @property
    def size(self) -> int:
        return self.cat.size

    @property
    def points(self) -> range:
        return self.cat.points


class Promonoidal(InducedLV):
    """An ``InducedLV`` whose data passed :func:`validate_promonoidal`."""


@dataclass(frozen=True, eq=False)
class QBA:
    """Promonoidal structure with residual tables; ``unit`` is None for a prequantum B-algebra."""

    pro: Promonoidal
    rhd: tuple[tuple[int, ...], ...]
    lhd: tuple[tuple[int, ...], ...]
    unit: int | None

    @property
    def cat(self) -> VCategory:
        return self.pro.cat

    @property
    def quantale(self) -> Quantale:
        return self.pro.quantale

    @property
    def points(self) -> range:
        return self.pro.points

    def r(self, x: int, y: int) -> int:
        """``x▷y``"""
        return self.rhd[x][y]

    def l(self, x: int, y: int) -> int:
        """``x◁y``"""
        return self.lhd[x][y]


@dataclass(frozen=True, eq=False)
class BlackBox:
    """An (L,V)-structure given by a callable ``ã(x̄, y)``; only checked up to ``bound``."""

    cat: VCategory
    fn: Callable[[tuple, int], int]
    bound: int

    @property
    def quantale(self) -> Quantale:
        return self.cat.quantale

    @property
    def points(self) -> range:
        return self.cat.points


def _cube(P) -> Cube:
    return tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in P)


def _structure(s) -> InducedLV:
    return s.pro if isinstance(s, QBA) else s


# ---------------------------------------------------------------- promonoidal laws


def check_promonoidal(x: VCategory, P, J) -> tuple | None:
    """First violated promonoidal law as ``(law, *witness)``, or None."""
    q, n = x.quantale, x.size
    pts = range(n)
    for a, b, c, d in product(pts, repeat=4):
        if not q.le(q.t(x(d, a), P[a][b][c]), P[d][b][c]):
            return ("distributor-first", d, a, b, c)
        if not q.le(q.t(x(d, b), P[a][b][c]), P[a][d][c]):
            return ("distributor-second", a, d, b, c)
        if not q.le(q.t(P[a][b][c], x(c, d)), P[a][b][d]):
            return ("distributor-output", a, b, c, d)
    for a, b in product(pts, repeat=2):
        if not q.le(q.t(J[a], x(a, b)), J[b]):
            return ("unit-distributor", a, b)
    for a, b, c, d in product(pts, repeat=4):
        lhs = q.sup(q.t(P[a][b][m], P[m][c][d]) for m in pts)
        rhs = q.sup(q.t(P[a][m][d], P[b][c][m]) for m in pts)
        if lhs != rhs:
            return ("associativity", a, b, c, d)
    for a, w in product(pts, repeat=2):
        if q.sup(q.t(J[z], P[z][a][w]) for z in pts) != x(a, w):
            return ("left-unit", a, w)
        if q.sup(q.t(J[z], P[a][z][w]) for z in pts) != x(a, w):
            return ("right-unit", a, w)
    return None


def validate_promonoidal(x: VCategory, P, J) -> Promonoidal:
    n = x.size
    P, J = _cube(P), tuple(int(v) for v in J)
    if len(P) != n or any(len(pl) != n or any(len(r) != n for r in pl) for pl in P) or len(J) != n:
        raise DimensionMismatch("P must be size³ and J of length size", witness=(n,))
    if any(not 0 <= v < x.quantale.n for pl in P for r in pl for v in r) or any(
            not 0 <= v < x.quantale.n for v in J):
        raise DimensionMismatch("entry out of range")
    bad = check_promonoidal(x, P, J)
    if bad:
        raise NotPromonoidal(f"{bad[0]} fails", witness=bad[1:], law=bad[0])
    return Promonoidal(x, P, J)


def unary_lv(x: VCategory) -> InducedLV:
    """Only unary arrows: ``ã(x̄, y) = a(x, y)`` on singletons and ⊥ otherwise."""
    q, n = x.quantale, x.size
    return InducedLV(x, tuple(tuple((q.bottom,) * n for _ in range(n)) for _ in range(n)), (q.bottom,) * n)


def promonoidal_from_monoidal(m: MonoidalVCat) -> Promonoidal:
    """``P(x,y,z) = a(x∗y, z)``, ``J(x) = a(u, x)``."""
    x = m.cat
    P = tuple(tuple(tuple(x(m.m(a, b), c) for c in x.points) for b in x.points) for a in x.points)
    return validate_promonoidal(x, P, tuple(x(m.unit, c) for c in x.points))


def promonoidal_from_residuals(x: VCategory, rhd, unit: int) -> Promonoidal:
    """Residual form ``P(x,y,z) = a(x, y▷z)``, ``J(x) = a(u, x)``."""
    P = tuple(tuple(tuple(x(a, rhd[b][c]) for c in x.points) for b in x.points) for a in x.points)
    return validate_promonoidal(x, P, tuple(x(unit, c) for c in x.points))


# ---------------------------------------------------------------- quantum B-algebras


def check_qba(pm: Promonoidal, rhd, lhd, unit: int | None) -> tuple | None:
    x, q = pm.cat, pm.quantale
    pts = x.points
    for a, w, b in product(pts, repeat=3):
        if pm.P[a][w][b] != x(w, lhd[a][b]):
            return ("represent-lhd", a, w, b)
        if pm.P[w][a][b] != x(w, rhd[a][b]):
            return ("represent-rhd", w, a, b)
    if unit is not None:
        for a in pts:
            if pm.J[a] != x(unit, a):
                return ("represent-unit", a)
    # consequences, checked as a guard against bad tables
    for a, b, c in product(pts, repeat=3):
        if x(a, rhd[b][c]) != x(b, lhd[a][c]):
            return ("residual-swap", a, b, c)
        if not _iso(x, rhd[a][lhd[b][c]], lhd[b][rhd[a][c]]):
            return ("residual-exchange", a, b, c)
    if unit is not None:
        for a in pts:
            if not _iso(x, rhd[unit][a], a) or not _iso(x, lhd[unit][a], a):
                return ("unit-residual", a)
    return None


def _iso(x: VCategory, p: int, r: int) -> bool:
    q = x.quantale
    return q.le(q.unit, x(p, r)) and q.le(q.unit, x(r, p))


def _tables(t) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in r) for r in t)


def validate_qba(pm: Promonoidal, rhd, lhd, unit: int) -> QBA:
    bad = check_qba(pm, rhd, lhd, unit)
    if bad:
        raise NotAQBA(f"{bad[0]} fails", witness=bad[1:], law=bad[0])
    return QBA(pm, _tables(rhd), _tables(lhd), unit)


def validate_preqba(pm: Promonoidal, rhd, lhd) -> QBA:
    bad = check_qba(pm, rhd, lhd, None)
    if bad:
        raise NotAQBA(f"{bad[0]} fails", witness=bad[1:], law=bad[0])
    return QBA(pm, _tables(rhd), _tables(lhd), None)


def _columns_equal(x: VCategory, vec: Sequence[int]) -> list[int]:
    return [c for c in x.points if all(x(w, c) == vec[w] for w in x.points)]


def find_residuals(pm: Promonoidal, allow_ambiguous: bool = False, require_unit: bool = True) -> QBA:
    """Search the tables ▷, ◁ and the unit that represent ``P`` and ``J``.

    Candidates are unique up to isomorphism; on a non-separated category a
    choice among several is refused unless ``allow_ambiguous`` (least index
    is then taken).
    """
    x = pm.cat
    pts = x.points

    def pick(cands, what):
        if not cands:
            raise NotRepresentable(f"no element represents {what[0]}", witness=what[1:], law=what[0])
        if len(cands) > 1 and not allow_ambiguous:
            raise AmbiguousNonSeparated(f"{len(cands)} candidates for {what[0]}", witness=(*what[1:], tuple(cands)))
        return cands[0]

    rhd = tuple(tuple(pick(_columns_equal(x, [pm.P[w][a][b] for w in pts]), ("rhd", a, b)) for b in pts)
                for a in pts)
    lhd = tuple(tuple(pick(_columns_equal(x, [pm.P[a][w][b] for w in pts]), ("lhd", a, b)) for b in pts)
                for a in pts)
    rows = [u for u in pts if all(x(u, c) == pm.J[c] for c in pts)]
    if not rows and not require_unit:
        return validate_preqba(pm, rhd, lhd)
    unit = pick(rows, ("unit",))
    return validate_qba(pm, rhd, lhd, unit)


def qba_from_vquantale(m: MonoidalVCat) -> QBA:
    """The quantum B-algebra of a V-quantale, using its residuals."""
    from .colimits import residual_tables

    rhd, lhd, bad = residual_tables(m)
    if bad:
        raise NotRepresentable("missing residual", witness=bad[1:], law=bad[0])
    return validate_qba(promonoidal_from_monoidal(m), rhd, lhd, m.unit)


def qba_over_quantale(v: Quantale) -> QBA:
    """V over itself with ``▷ = ◁ = [−,=]`` and unit k (commutative V)."""
    from .quantale import quantale_as_monoidal

    m = quantale_as_monoidal(v)
    pro = promonoidal_from_residuals(m.cat, v.hom, v.unit)
    return validate_qba(pro, v.hom, v.hom, v.unit)


def change_base_qba(h: QuantaleMorphism, a: QBA) -> QBA:
    """Apply a lax morphism entrywise to hom, P and J; residual tables are kept."""
    if h.source is not a.quantale:
        raise QuantaleMismatch("QBA is not over the morphism's source")
    from .vcat import validate_vcategory

    x = a.cat
    cat = validate_vcategory(h.target, [[h.map[v] for v in r] for r in x.hom], x.labels)
    P = [[[h.map[v] for v in r] for r in pl] for pl in a.pro.P]
    pro = validate_promonoidal(cat, P, [h.map[v] for v in a.pro.J])
    if a.unit is None:
        return validate_preqba(pro, a.rhd, a.lhd)
    return validate_qba(pro, a.rhd, a.lhd, a.unit)


# ---------------------------------------------------------------- evaluation


def _prepend(s: InducedLV, x: int, state: Sequence[int]) -> tuple[int, ...]:
    q = s.quantale
    return tuple(q.sup(q.t(state[c], s.P[x][c][y]) for c in s.points) for y in s.points)


def lv_state(s, xs: Sequence[int]) -> tuple[int, ...]:
    """``ã(x̄, −)`` by the right-nested recursion."""
    s = _structure(s)
    xs = tuple(xs)
    if len(xs) == 0:
        return s.J
    if len(xs) == 1:
        return tuple(s.cat.hom[xs[0]])
    state = s.P[xs[-2]][xs[-1]]
    for x in reversed(xs[:-2]):
        state = _prepend(s, x, state)
    return tuple(state)


def induced_lv_eval(s, xs: Sequence[int], y: int) -> int:
    """``ã(x̄, y)`` for a structure induced by ``(a, P, J)``."""
    return lv_state(s, xs)[y]


def induced_lv_eval_left(s, xs: Sequence[int], y: int) -> int:
    """Same value through the left-nested recursion; agrees when P is associative."""
    s = _structure(s)
    xs = tuple(xs)
    if len(xs) < 3:
        return induced_lv_eval(s, xs, y)
    q = s.quantale
    state = s.P[xs[0]][xs[1]]
    for x in xs[2:]:
        state = tuple(q.sup(q.t(state[c], s.P[c][x][z]) for c in s.points) for z in s.points)
    return state[y]


def qba_lv_eval(a: QBA, xs: Sequence[int], y: int) -> int:
    """``a(x₁, x₂▷(…(xₙ▷y)))`` for n ≥ 1 and ``a(u, y)`` for the empty list."""
    xs = tuple(xs)
    if not xs:
        if a.unit is None:
            return a.pro.J[y]
        return a.cat(a.unit, y)
    z = y
    for x in reversed(xs[1:]):
        z = a.rhd[x][z]
    return a.cat(xs[0], z)


def lv_eval(s, xs: Sequence[int], y: int) -> int:
    if isinstance(s, BlackBox):
        return s.fn(tuple(xs), y)
    return induced_lv_eval(s, xs, y)


def all_lists(n: int, bound: int):
    for k in range(bound + 1):
        yield from product(range(n), repeat=k)


def reachable_states(s) -> dict[tuple[int, ...], tuple]:
    """Every state ``ã(x̄, −)`` with a shortest witness list."""
    s = _structure(s)
    seen: dict[tuple[int, ...], tuple] = {}
    for xs in [()] + [(x,) for x in s.points]:
        seen.setdefault(lv_state(s, xs), xs)
    frontier = deque()
    long_seen: set = set()
    for a, b in product(s.points, repeat=2):
        st = s.P[a][b]
        if st not in long_seen:
            long_seen.add(st)
            seen.setdefault(st, (a, b))
            frontier.append((st, (a, b)))
    config.require_cells(s.quantale.n ** s.size, "state space")
    while frontier:
        st, xs = frontier.popleft()
        for x in s.points:
            nxt = _prepend(s, x, st)
            if nxt not in long_seen:
                long_seen.add(nxt)
                seen.setdefault(nxt, (x, *xs))
                frontier.append((nxt, (x, *xs)))
    return seen


def check_lv_axioms(s, bound: int | None = None) -> tuple | None:
    """``e° ≤ ã`` and ``ã∘ã ≤ ã`` on lists up to ``bound``; a witness or None."""
    if bound is None:
        bound = s.bound if isinstance(s, BlackBox) else config.limits.max_list_len
    x, q = s.cat, s.quantale
    for y in x.points:
        if not q.le(q.unit, lv_eval(s, (y,), y)):
            return ("unit", (y,), y)
    fn = lambda xs, y: lv_eval(s, xs, y)
    for xs in all_lists(x.size, bound):
        for z in x.points:
            comp = kleisli_compose_eval(q, fn, fn, x.size, xs, z, max_blocks=bound)
            if not q.le(comp, fn(xs, z)):
                return ("transitivity", xs, z)
    return None


# ---------------------------------------------------------------- (L,V)-functors


def _pair_states(s: InducedLV, t: InducedLV, f: Sequence[int]):
    """Reachable pairs (state of x̄, state of Lf(x̄)) with a witness list each."""
    pairs: dict = {}
    for xs in [()] + [(x,) for x in s.points]:
        pairs.setdefault((lv_state(s, xs), lv_state(t, [f[v] for v in xs])), xs)
    frontier = deque()
    long_seen: set = set()
    for a, b in product(s.points, repeat=2):
        key = (s.P[a][b], t.P[f[a]][f[b]])
        if key not in long_seen:
            long_seen.add(key)
            pairs.setdefault(key, (a, b))
            frontier.append((key, (a, b)))
    config.require_cells((s.quantale.n ** s.size) * (t.quantale.n ** t.size), "pair state space")
    while frontier:
        (ss, ts), xs = frontier.popleft()
        for x in s.points:
            key = (_prepend(s, x, ss), _prepend(t, f[x], ts))
            if key not in long_seen:
                long_seen.add(key)
                pairs.setdefault(key, (x, *xs))
                frontier.append((key, (x, *xs)))
    return pairs


def lv_functor_witness(f: Sequence[int], s, t) -> tuple | None:
    """Exact check over all lists: a list x̄ and y with ``ã(x̄,y) ≰ b̃(Lf x̄, f y)``."""
    s, t = _structure(s), _structure(t)
    if s.quantale is not t.quantale:
        raise QuantaleMismatch("structures over different quantales")
    q = s.quantale
    for (ss, ts), xs in _pair_states(s, t, f).items():
        for y in s.points:
            if not q.le(ss[y], ts[f[y]]):
                return (xs, y)
    return None


def lv_functor_small_witness(f: Sequence[int], s, t) -> tuple | None:
    """Nullary, unary and binary conditions only (sufficient for promonoidal data)."""
    s, t = _structure(s), _structure(t)
    q = s.quantale
    for y in s.points:
        if not q.le(s.J[y], t.J[f[y]]):
            return ((), y)
    for a, y in product(s.points, repeat=2):
        if not q.le(s.cat(a, y), t.cat(f[a], f[y])):
            return ((a,), y)
    for a, b, y in product(s.points, repeat=3):
        if not q.le(s.P[a][b][y], t.P[f[a]][f[b]][f[y]]):
            return ((a, b), y)
    return None


def check_lv_functor(f: Sequence[int], s, t) -> bool:
    """Is ``f`` an (L,V)-functor between the two structures?

    Black boxes are checked up to their bound. For promonoidal data the
    small conditions are decisive; the state search is run as well and any
    disagreement is an internal error.
    """
    f = tuple(f)
    if isinstance(s, BlackBox) or isinstance(t, BlackBox):
        bound = min(getattr(s, "bound", 10 ** 9), getattr(t, "bound", 10 ** 9))
        q = s.quantale
        return all(q.le(lv_eval(s, xs, y), lv_eval(t, [f[v] for v in xs], f[y]))
                   for xs in all_lists(len(f), bound) for y in range(len(f)))
    exact = lv_functor_witness(f, s, t) is None
    if isinstance(_structure(s), Promonoidal) and isinstance(_structure(t), Promonoidal):
        small = lv_functor_small_witness(f, s, t) is None
        if small != exact:
            raise AssertionError(f"functor checks disagree on {f}")
    return exact


def lv_fully_faithful_witness(f: Sequence[int], s, t) -> tuple | None:
    """Exact: a list x̄ and y with ``ã(x̄,y) ≠ b̃(Lf x̄, f y)``, or None."""
    s, t = _structure(s), _structure(t)
    for (ss, ts), xs in _pair_states(s, t, f).items():
        for y in s.points:
            if ss[y] != ts[f[y]]:
                return (xs, y)
    return None


def lv_fully_faithful(f: Sequence[int], s, t) -> bool:
    return lv_functor_witness(f, s, t) is None and lv_fully_faithful_witness(f, s, t) is None


def all_lv_functors(s, t) -> list[tuple[int, ...]]:
    """Every (L,V)-functor; backtracking on the V-functor condition, then the exact check."""
    from .vcat import all_vfunctors

    return [f for f in all_vfunctors(_structure(s).cat, _structure(t).cat) if check_lv_functor(f, s, t)]


def qba_morphism_witness(f: Sequence[int], a: QBA, b: QBA) -> tuple | None:
    """``f(x▷y) ≤ f(x)▷f(y)``, ``f(x◁y) ≤ f(x)◁f(y)``, ``u ≤ f(u)`` and V-functoriality."""
    q = a.quantale
    bad = is_vfunctor(a.cat, b.cat, f)
    if bad:
        return ("vfunctor", *bad)
    k = q.unit
    for x, y in product(a.points, repeat=2):
        if not q.le(k, b.cat(f[a.r(x, y)], b.r(f[x], f[y]))):
            return ("rhd", x, y)
        if not q.le(k, b.cat(f[a.l(x, y)], b.l(f[x], f[y]))):
            return ("lhd", x, y)
    if a.unit is not None and not q.le(k, b.cat(b.unit, f[a.unit])):
        return ("unit",)
    return None


# ---------------------------------------------------------------- Yoneda and colimits


def lv_yoneda_eval(s, x: int, ws: Sequence[int]) -> int:
    """``y(x)(w̄) = ã(w̄, x)``."""
    return induced_lv_eval(s, ws, x)


@dataclass
class YonedaReport:
    ok: bool
    bound: int
    checked: int
    witness: tuple | None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "bound": self.bound, "checked": self.checked, "witness": self.witness,
                "truncated": True}


def lv_yoneda_lemma_check(s, bound: int = 2, arg_len: int = 2) -> YonedaReport:
    """``𝔻_L[(y x₁,…,y xₙ), y(z)] = ã(x̄, z)`` for ``|x̄| ≤ arg_len``.

    The left side is the meet over lists ``w̄₁,…,w̄ₙ`` of length ≤ ``bound``
    of ``[ã(w̄₁,x₁)⊗…⊗ã(w̄ₙ,xₙ), ã(w̄₁⧺…⧺w̄ₙ, z)]``; the truncation is reported.
    """
    s = _structure(s)
    q, n = s.quantale, s.size
    short = list(all_lists(n, bound))
    config.require_cells(len(short) ** max(arg_len, 1) * n ** (arg_len + 1), "Yoneda check")
    checked = 0
    for xs in all_lists(n, arg_len):
        for z in s.points:
            lhs = q.top
            for ws in product(short, repeat=len(xs)):
                w = q.prod(induced_lv_eval(s, wi, xi) for wi, xi in zip(ws, xs))
                flat = tuple(v for wi in ws for v in wi)
                lhs = q.meet[lhs][q.h(w, induced_lv_eval(s, flat, z))]
            checked += 1
            if lhs != induced_lv_eval(s, xs, z):
                return YonedaReport(False, bound, checked, (xs, z))
    return YonedaReport(True, bound, checked, None)


def lv_weighted_colimit_repr(j: Callable[[tuple], int], f: Sequence[int], y: MonoidalVCat,
                             source_size: int, bound: int | None = None) -> int:
    """``⋁_{x̄} j(x̄) ⊙ (f(x₁)∗…∗f(xₙ))`` in a monoidal target, lists up to ``bound``.

    Computed twice: as the element representing ``⋀_x̄ [j(x̄), b(f x̄, −)]`` and
    as a conical join of copowers. Both must exist and agree up to ≅.
    """
    from .colimits import _realize_row, conical_sup, copower

    if bound is None:
        bound = config.limits.max_list_len
    q, b = y.quantale, y.cat
    lists = list(all_lists(source_size, bound))
    config.require_cells(len(lists) * b.size, "weighted colimit")
    terms = [(j(xs), y.prod([f[v] for v in xs])) for xs in lists]
    terms = [(w, p) for w, p in terms if w != q.bottom]
    row = [q.inf(q.h(w, b(p, t)) for w, p in terms) for t in b.points]
    c = _realize_row(b, row)
    if c is None:
        raise NoColimit("weighted colimit does not exist", witness=tuple(row))
    parts = []
    for w, p in terms:
        cp = copower(b, p, w)
        if cp is None:
            raise NoColimit("copower missing", witness=(p, w))
        parts.append(cp)
    alt = conical_sup(b, parts)
    if alt is None or not _iso(b, alt, c):
        raise AssertionError("colimit routes disagree")
    return c


def is_separated_structure(s) -> bool:
    return is_separated(_structure(s).cat)
