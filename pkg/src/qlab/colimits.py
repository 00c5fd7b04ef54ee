"""Distributors, weighted (co)limits, adjunctions and the Isbell completion.

Relations follow the ``X ⇸ Y`` convention of :mod:`qlab.vmat`: a table
indexed ``[x][y]``, with ``s·r`` summing over the shared middle index. A
presheaf on X is a relation ``X ⇸ 1`` and a copresheaf a relation ``1 ⇸ X``;
here both are stored as plain value vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import DimensionMismatch, NotADistributor, QuantaleMismatch, ResourceCap
from .quantale import Quantale
from .vcat import (
    MonoidalVCat,
    PresheafCategory,
    VCategory,
    VFunctor,
    all_vfunctors,
    copresheaf_category,
    find_isomorphism,
    is_separated,
    presheaf_category,
    presheaf_hom,
)
from .vmat import VRelation, compose


# ---------------------------------------------------------------- distributors


def hom_relation(x: VCategory) -> VRelation:
    return VRelation(x.quantale, x.hom, x.size)


def check_distributor(r: VRelation, x: VCategory, y: VCategory) -> tuple | None:
    """Witness of a failed ``j·a ≤ j`` or ``b·j ≤ j``, or None."""
    if r.src_size != x.size or r.dst_size != y.size:
        raise DimensionMismatch("relation does not fit", witness=(r.src_size, r.dst_size))
    q = r.quantale
    for x1, x2, y1 in product(x.points, x.points, y.points):
        if not q.le(q.t(x(x1, x2), r(x2, y1)), r(x1, y1)):
            return ("left", x1, x2, y1)
    for x1, y1, y2 in product(x.points, y.points, y.points):
        if not q.le(q.t(r(x1, y1), y(y1, y2)), r(x1, y2)):
            return ("right", x1, y1, y2)
    return None


def require_distributor(r: VRelation, x: VCategory, y: VCategory) -> VRelation:
    bad = check_distributor(r, x, y)
    if bad:
        raise NotADistributor(witness=bad)
    return r


def graph(f: VFunctor | Sequence[int], target: VCategory | None = None) -> VRelation:
    """``f_*(x, y) = b(f(x), y)`` as ``X ⇸ Y``."""
    b = target or f.target
    fm = f.map if isinstance(f, VFunctor) else tuple(f)
    return VRelation(b.quantale, tuple(tuple(b(fx, y) for y in b.points) for fx in fm), b.size)


def cograph(f: VFunctor | Sequence[int], target: VCategory | None = None) -> VRelation:
    """``f^*(y, x) = b(y, f(x))`` as ``Y ⇸ X``."""
    b = target or f.target
    fm = f.map if isinstance(f, VFunctor) else tuple(f)
    return VRelation(b.quantale, tuple(tuple(b(y, fx) for fx in fm) for y in b.points), len(fm))


def residual_right(gamma: VRelation, alpha: VRelation) -> VRelation:
    """``(γ▷α)(x, y) = ⋀_z [α(z,x), γ(z,y)]`` for ``γ : Z⇸Y``, ``α : Z⇸X``."""
    q = gamma.quantale
    if alpha.quantale is not q:
        raise QuantaleMismatch()
    if alpha.src_size != gamma.src_size:
        raise DimensionMismatch(witness=(alpha.src_size, gamma.src_size))
    zs = range(gamma.src_size)
    rows = tuple(tuple(q.inf(q.h(alpha(z, x), gamma(z, y)) for z in zs) for y in range(gamma.dst_size))
                 for x in range(alpha.dst_size))
    return VRelation(q, rows, gamma.dst_size)


def residual_left(beta: VRelation, gamma: VRelation) -> VRelation:
    """``(β◁γ)(z, x) = ⋀_y [β(x,y), γ(z,y)]`` for ``β : X⇸Y``, ``γ : Z⇸Y``."""
    q = gamma.quantale
    if beta.quantale is not q:
        raise QuantaleMismatch()
    if beta.dst_size != gamma.dst_size:
        raise DimensionMismatch(witness=(beta.dst_size, gamma.dst_size))
    ys = range(gamma.dst_size)
    rows = tuple(tuple(q.inf(q.h(beta(x, y), gamma(z, y)) for y in ys) for x in range(beta.src_size))
                 for z in range(gamma.src_size))
    return VRelation(q, rows, beta.src_size)


# ---------------------------------------------------------------- (co)limits


@dataclass
class WeightedResult:
    """Outcome of a weighted (co)limit search.

    ``required[z]`` is the hom row (or column) the (co)limit at z must
    realize; ``map[z]`` is the least realizing index or None.
    """

    map: tuple[int | None, ...]
    required: tuple[tuple[int, ...], ...]

    @property
    def exists(self) -> bool:
        return all(v is not None for v in self.map)

    @property
    def missing(self) -> list[int]:
        return [z for z, v in enumerate(self.map) if v is None]


def _realize_row(y: VCategory, row: Sequence[int]) -> int | None:
    row = tuple(row)
    return next((g for g in y.points if y.hom[g] == row), None)


def _realize_col(y: VCategory, col: Sequence[int]) -> int | None:
    col = tuple(col)
    return next((h for h in y.points if all(y(p, h) == c for p, c in zip(y.points, col))), None)


def colimit_row(q: Quantale, y: VCategory, weights: Sequence[int], fx: Sequence[int]) -> tuple[int, ...]:
    """``⋀ₓ [j(x), b(f(x), y)]`` for every y."""
    return tuple(q.inf(q.h(w, y(p, t)) for w, p in zip(weights, fx)) for t in y.points)


def limit_col(q: Quantale, y: VCategory, weights: Sequence[int], fx: Sequence[int]) -> tuple[int, ...]:
    """``⋀ₓ [l(x), b(y, f(x))]`` for every y."""
    return tuple(q.inf(q.h(w, y(t, p)) for w, p in zip(weights, fx)) for t in y.points)


def weighted_colimit(j: VRelation, f: VFunctor | Sequence[int], y: VCategory | None = None) -> WeightedResult:
    """``colim(j, f)`` for ``j : X ⇸ Z`` and ``f : X → Y``.

    ``g(z)`` must satisfy ``b(g(z), y) = ⋀ₓ [j(x,z), b(f(x),y)]``.
    """
    y = y or f.target
    fm = f.map if isinstance(f, VFunctor) else tuple(f)
    q = y.quantale
    req, out = [], []
    for z in range(j.dst_size):
        row = colimit_row(q, y, [j(x, z) for x in range(j.src_size)], fm)
        req.append(row)
        out.append(_realize_row(y, row))
    return WeightedResult(tuple(out), tuple(req))


def weighted_limit(l: VRelation, f: VFunctor | Sequence[int], y: VCategory | None = None) -> WeightedResult:
    """``lim(l, f)`` for ``l : Z ⇸ X`` and ``f : X → Y``.

    ``h(z)`` must satisfy ``b(y, h(z)) = ⋀ₓ [l(z,x), b(y,f(x))]``.
    """
    y = y or f.target
    fm = f.map if isinstance(f, VFunctor) else tuple(f)
    q = y.quantale
    req, out = [], []
    for z in range(l.src_size):
        col = limit_col(q, y, [l(z, x) for x in range(l.dst_size)], fm)
        req.append(col)
        out.append(_realize_col(y, col))
    return WeightedResult(tuple(out), tuple(req))


def copower(x: VCategory, p: int, u: int) -> int | None:
    """``p⊙u`` with ``a(p⊙u, y) = [u, a(p,y)]``, or None."""
    q = x.quantale
    return _realize_row(x, [q.h(u, x(p, t)) for t in x.points])


def power(x: VCategory, p: int, u: int) -> int | None:
    """``p⋔u`` with ``a(y, p⋔u) = [u, a(y,p)]``, or None."""
    q = x.quantale
    return _realize_col(x, [q.h(u, x(t, p)) for t in x.points])


def conical_sup(x: VCategory, pts: Sequence[int]) -> int | None:
    """Supremum weighted by k on ``pts``."""
    q = x.quantale
    return _realize_row(x, colimit_row(q, x, [q.unit] * len(pts), pts))


def conical_inf(x: VCategory, pts: Sequence[int]) -> int | None:
    q = x.quantale
    return _realize_col(x, limit_col(q, x, [q.unit] * len(pts), pts))


def check_adjunction(a: VCategory, b: VCategory, f: Sequence[int], g: Sequence[int]) -> tuple | None:
    """Witness of failure of ``b(f x, y) = a(x, g y)``, or None when ``f ⊣ g``."""
    for x, y in product(a.points, b.points):
        if b(f[x], y) != a(x, g[y]):
            return (x, y)
    return None


# ---------------------------------------------------------------- completeness


@dataclass
class CompletenessReport:
    ok: bool
    map: tuple[int, ...] | None = None  # colim: 𝔻(X) → X or lim: 𝕌(X) → X
    witness: tuple | None = None
    category: PresheafCategory | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "witness": self.witness}


def cocomplete_check(x: VCategory, d: PresheafCategory | None = None) -> CompletenessReport:
    """Every presheaf has a colimit along the identity; the result is left adjoint to Yoneda."""
    d = d or presheaf_category(x)
    q = x.quantale
    ident = tuple(x.points)
    out = []
    for j in d.carrier:
        g = _realize_row(x, colimit_row(q, x, j, ident))
        if g is None:
            return CompletenessReport(False, witness=j, category=d)
        out.append(g)
    # colim ⊣ y : a(colim j, x) = 𝔻(X)(j, y(x))
    for i, j in enumerate(d.carrier):
        for p in x.points:
            if x(out[i], p) != presheaf_hom(q, j, [x(t, p) for t in x.points]):
                return CompletenessReport(False, witness=(j, p), category=d)
    return CompletenessReport(True, tuple(out), category=d)


def tensored_cocomplete_witness(x: VCategory) -> tuple | None:
    """Local cocompleteness test: every copower, every binary and the empty conical join.

    A V-category with copowers and finite conical joins is cocomplete once
    the base is finite, so this decides the same question as
    :func:`cocomplete_check` without enumerating presheaves.
    """
    q = x.quantale
    if conical_sup(x, []) is None:
        return ("empty-join",)
    for p in x.points:
        for v in q.elements:
            if copower(x, p, v) is None:
                return ("copower", p, v)
    for p, r in product(x.points, repeat=2):
        if p < r and conical_sup(x, [p, r]) is None:
            return ("join", p, r)
    return None


def cocomplete_any(x: VCategory) -> CompletenessReport:
    """Presheaf route when it fits under the cell cap, otherwise the local test."""
    try:
        d = presheaf_category(x)
    except ResourceCap:
        bad = tensored_cocomplete_witness(x)
        return CompletenessReport(bad is None, witness=bad)
    return cocomplete_check(x, d)


def complete_check(x: VCategory, u: PresheafCategory | None = None) -> CompletenessReport:
    """Every copresheaf has a limit along the identity; the result is right adjoint to coyoneda."""
    u = u or copresheaf_category(x)
    q = x.quantale
    ident = tuple(x.points)
    out = []
    for l in u.carrier:
        h = _realize_col(x, limit_col(q, x, l, ident))
        if h is None:
            return CompletenessReport(False, witness=l, category=u)
        out.append(h)
    # a(p, lim l) = 𝕌(X)(coyoneda p, l) = ⋀ [l(t), a(p,t)]
    for i, l in enumerate(u.carrier):
        for p in x.points:
            if x(p, out[i]) != presheaf_hom(q, l, x.hom[p]):
                return CompletenessReport(False, witness=(l, p), category=u)
    return CompletenessReport(True, tuple(out), category=u)


# ---------------------------------------------------------------- Isbell


def isbell_L(x: VCategory, j: Sequence[int]) -> tuple[int, ...]:
    """``L(j)(y) = ⋀ₓ [j(x), a(x,y)]``."""
    q = x.quantale
    return tuple(q.inf(q.h(j[p], x(p, y)) for p in x.points) for y in x.points)


def isbell_R(x: VCategory, l: Sequence[int]) -> tuple[int, ...]:
    """``R(l)(y) = ⋀ₓ [l(x), a(y,x)]``."""
    q = x.quantale
    return tuple(q.inf(q.h(l[p], x(y, p)) for p in x.points) for y in x.points)


def isbell_T(x: VCategory, j: Sequence[int]) -> tuple[int, ...]:
    return isbell_R(x, isbell_L(x, j))


@dataclass
class IsbellReport:
    inflationary: bool
    idempotent: bool
    monotone: bool
    adjunction: bool
    witness: dict

    @property
    def ok(self) -> bool:
        return self.inflationary and self.idempotent and self.monotone and self.adjunction


def isbell_report(x: VCategory, d: PresheafCategory | None = None,
                  u: PresheafCategory | None = None) -> IsbellReport:
    """Monad laws of ``T = R∘L`` and the adjunction ``𝕌(X)(L j, l) = 𝔻(X)(j, R l)``."""
    d = d or presheaf_category(x)
    u = u or copresheaf_category(x)
    q = x.quantale
    w: dict = {}
    T = [isbell_T(x, j) for j in d.carrier]
    infl = next((j for j, t in zip(d.carrier, T) if not all(q.le(a, b) for a, b in zip(j, t))), None)
    if infl is not None:
        w["inflationary"] = infl
    idem = next((j for j, t in zip(d.carrier, T) if isbell_T(x, t) != t), None)
    if idem is not None:
        w["idempotent"] = idem
    mono = None
    for (i, j), (i2, j2) in product(enumerate(d.carrier), repeat=2):
        if not q.le(d.cat(i, i2), presheaf_hom(q, T[i], T[i2])):
            mono = (j, j2)
            break
    if mono is not None:
        w["monotone"] = mono
    adj = None
    for j in d.carrier:
        lj = isbell_L(x, j)
        for l in u.carrier:
            if presheaf_hom(q, l, lj) != presheaf_hom(q, j, isbell_R(x, l)):
                adj = (j, l)
                break
        if adj:
            break
    if adj is not None:
        w["adjunction"] = adj
    return IsbellReport(infl is None, idem is None, mono is None, adj is None, w)


@dataclass
class Completion:
    """Fixed points of the Isbell monad with the induced homs.

    ``carrier`` lists the fixed presheaves, ``embedding`` sends each point of
    the base to its representable, ``projection`` sends every presheaf index
    of ``presheaves`` to the index of its closure.
    """

    cat: VCategory
    carrier: tuple[tuple[int, ...], ...]
    embedding: tuple[int, ...]
    projection: tuple[int, ...]
    presheaves: PresheafCategory = field(repr=False)
    report: IsbellReport | None = None
    checks: dict = field(default_factory=dict)


def macneille_completion(x: VCategory, verify: bool = True) -> Completion:
    q = x.quantale
    d = presheaf_category(x)
    T = [isbell_T(x, j) for j in d.carrier]
    carrier = tuple(sorted({t for t in T}))
    pos = {v: i for i, v in enumerate(carrier)}
    hom = tuple(tuple(presheaf_hom(q, a, b) for b in carrier) for a in carrier)
    cat = VCategory(q, hom, tuple(_vec_label(q, v) for v in carrier))
    emb = tuple(pos[tuple(x(y, p) for y in x.points)] for p in x.points)
    proj = tuple(pos[t] for t in T)
    comp = Completion(cat, carrier, emb, proj, d)
    if verify:
        comp.report = isbell_report(x, d)
        e = VFunctor(x, cat, emb)
        comp.checks = {
            "fully_faithful": e.fully_faithful,
            "dense": dense_check_vcat(e),
            "cocomplete": cocomplete_check(cat).ok,
            "complete": complete_check(cat).ok,
        }
    return comp


def _vec_label(q: Quantale, v: Sequence[int]) -> str:
    return "(" + ",".join(q.name(a) for a in v) + ")"


# ---------------------------------------------------------------- density


def dense_witness(i: VFunctor) -> tuple | None:
    """First z violating either density equation, or None.

    With weights ``z^*·i_*`` and ``i^*·z_*`` the conditions read
    ``b(z, y) = ⋀ₓ [b(ix, z), b(ix, y)]`` and ``b(y, z) = ⋀ₓ [b(z, ix), b(y, ix)]``.
    """
    b, q = i.target, i.target.quantale
    for z in b.points:
        wz = compose(graph(i), cograph([z], b))  # X ⇸ 1
        res = weighted_colimit(wz, i)
        if not res.exists or b.hom[z] != res.required[0]:
            return ("colim", z)
        lz = compose(graph([z], b), cograph(i))  # 1 ⇸ X
        res = weighted_limit(lz, i)
        if not res.exists or tuple(b(t, z) for t in b.points) != res.required[0]:
            return ("lim", z)
    return None


def dense_check_vcat(i: VFunctor) -> bool:
    return i.fully_faithful and dense_witness(i) is None


@dataclass
class EssentialReport:
    ok: bool
    checked: int
    counterexample: dict | None = None


def essential_spotcheck_vcat(i: VFunctor, corpus: Sequence[VCategory]) -> EssentialReport:
    """For every V-functor ``g : Z → W`` with ``g∘i`` fully faithful, ``g`` must be fully faithful."""
    a, b = i.source, i.target
    checked = 0
    for w in corpus:
        if w.quantale is not b.quantale:
            continue
        for g in all_vfunctors(b, w):
            checked += 1
            gi = [g[i(p)] for p in a.points]
            if all(a(p, r) == w(gi[p], gi[r]) for p, r in product(a.points, repeat=2)):
                bad = next(((z, t) for z, t in product(b.points, repeat=2) if b(z, t) != w(g[z], g[t])), None)
                if bad is not None:
                    return EssentialReport(False, checked, {"W": w.hom, "g": g, "pair": bad})
    return EssentialReport(True, checked)


def cut_completion_order(leq: Sequence[Sequence[bool]]) -> list[list[bool]]:
    """Classical cut completion of a finite preorder, as an order on its cuts.

    A cut is a pair (A, B) with A the lower bounds of B and B the upper bounds
    of A; cuts are compared by inclusion of A.
    """
    n = len(leq)
    cuts = set()
    for mask in range(1 << n):
        s = [p for p in range(n) if mask >> p & 1]
        ub = frozenset(y for y in range(n) if all(leq[p][y] for p in s))
        lb = frozenset(x for x in range(n) if all(leq[x][y] for y in ub))
        cuts.add(lb)
    cuts = sorted(cuts, key=lambda c: (len(c), sorted(c)))
    return [[a <= b for b in cuts] for a in cuts]


# ---------------------------------------------------------------- V-quantales


@dataclass
class VQuantaleReport:
    separated: bool
    cocomplete: bool
    residuals: bool
    rhd: tuple | None
    lhd: tuple | None
    witness: dict

    @property
    def is_vquantale(self) -> bool:
        return self.separated and self.cocomplete and self.residuals

    def to_dict(self) -> dict:
        return {"separated": self.separated, "cocomplete": self.cocomplete, "residuals": self.residuals,
                "is_vquantale": self.is_vquantale, "rhd": self.rhd, "lhd": self.lhd, "witness": self.witness}


def residual_tables(m: MonoidalVCat) -> tuple[tuple | None, tuple | None, tuple | None]:
    """``rhd[y][z] = y▷z`` and ``lhd[x][z] = x◁z`` from the adjunction laws.

    ``a(x∗y, z) = a(x, y▷z)`` and ``a(x∗y, z) = a(y, x◁z)``. Returns the
    tables (None when some residual does not exist) and a witness.
    """
    x = m.cat
    rhd, lhd = [], []
    for y in x.points:
        row = []
        for z in x.points:
            w = _realize_col(x, [x(m.m(p, y), z) for p in x.points])
            if w is None:
                return None, None, ("rhd", y, z)
            row.append(w)
        rhd.append(tuple(row))
    for p in x.points:
        row = []
        for z in x.points:
            w = _realize_col(x, [x(m.m(p, y), z) for y in x.points])
            if w is None:
                return None, None, ("lhd", p, z)
            row.append(w)
        lhd.append(tuple(row))
    return tuple(rhd), tuple(lhd), None


def vquantale_report(m: MonoidalVCat) -> VQuantaleReport:
    x, q = m.cat, m.quantale
    w: dict = {}
    sep = is_separated(x)
    if not sep:
        w["separated"] = next([p, r] for p in x.points for r in x.points
                              if p != r and q.le(q.unit, x(p, r)) and q.le(q.unit, x(r, p)))
    coco = cocomplete_any(x)
    if not coco.ok:
        w["cocomplete"] = coco.witness
    rhd, lhd, bad = residual_tables(m)
    if bad:
        w["residuals"] = bad
    elif coco.ok:
        # second route: y▷z as the colimit of the identity weighted by a(−∗y, z)
        ident = tuple(x.points)
        for y, z in product(x.points, repeat=2):
            g = _realize_row(x, colimit_row(q, x, [x(m.m(p, y), z) for p in x.points], ident))
            if g is None or not _iso_points(x, g, rhd[y][z]):
                w["residuals"] = ("rhd-colimit", y, z)
                break
            g = _realize_row(x, colimit_row(q, x, [x(m.m(y, p), z) for p in x.points], ident))
            if g is None or not _iso_points(x, g, lhd[y][z]):
                w["residuals"] = ("lhd-colimit", y, z)
                break
    return VQuantaleReport(sep, coco.ok, "residuals" not in w, rhd, lhd, w)


def _iso_points(x: VCategory, p: int, r: int) -> bool:
    q = x.quantale
    return q.le(q.unit, x(p, r)) and q.le(q.unit, x(r, p))


def is_isomorphic(x: VCategory, y: VCategory) -> bool:
    return find_isomorphism(x, y) is not None
