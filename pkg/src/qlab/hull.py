"""Injective hulls of (L,V)-categories inside V-quantales.

Pipeline: generate a prequantum B-algebra G from a subset of an ambient
V-quantale, close it to the subquantale Q1 generated by G, build the nucleus
T (meets of powers of elements of G) and take its fixed points.

Inputs are a monoidal V-category (ambient = its Day quantale), a user
V-quantale with a subset, or an abstract quantum B-algebra (truncated to
lists of bounded length; exact once the list states stabilize).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import config
from .colimits import (_realize_col, _realize_row, colimit_row, conical_sup, copower, limit_col, power,
                       vquantale_report)
from .errors import (ApproximationUnstable, NotAVQuantale, PropLaxViolation, ResidualMismatch,
                     ValidationError)
from .multicat import (QBA, InducedLV, Promonoidal, all_lv_functors, lv_fully_faithful, lv_fully_faithful_witness,
                       promonoidal_from_monoidal, reachable_states, validate_preqba, validate_promonoidal)
from .quantale import Quantale, validate_quantale
from .vcat import (MonoidalVCat, VCategory, find_isomorphism, presheaf_category, presheaf_hom,
                   underlying_order, validate_monoidal, yoneda)


@dataclass(frozen=True, eq=False)
class AmbientQuantale:
    m: MonoidalVCat
    rhd: tuple[tuple[int, ...], ...]
    lhd: tuple[tuple[int, ...], ...]
    tag: str

    @property
    def cat(self) -> VCategory:
        return self.m.cat

    @property
    def quantale(self) -> Quantale:
        return self.m.quantale

    @property
    def size(self) -> int:
        return self.m.size


def make_ambient(m: MonoidalVCat, tag: str = "user") -> AmbientQuantale:
    rep = vquantale_report(m)
    if not rep.is_vquantale:
        raise NotAVQuantale("ambient is not a V-quantale", witness=rep.witness)
    return AmbientQuantale(m, rep.rhd, rep.lhd, tag)


def restrict(x: VCategory, idx: Sequence[int]) -> VCategory:
    labels = tuple(x.label(i) for i in idx)
    return VCategory(x.quantale, tuple(tuple(x(a, b) for b in idx) for a in idx), labels)


def underlying_quantale(m: MonoidalVCat) -> Quantale:
    """The ordered monoid ``(X, ≤, ∗, u)`` of a V-quantale, validated as a (possibly non-commutative) quantale."""
    names = [m.cat.label(i) for i in m.points]
    if len(set(names)) != len(names):
        names = None
    return validate_quantale(underlying_order(m.cat), m.mult, m.unit, names=names,
                             allow_trivial=True, commutative=False)


# ---------------------------------------------------------------- Day convolution


@dataclass(frozen=True, eq=False)
class DayQuantale:
    ambient: AmbientQuantale
    presheaves: tuple[tuple[int, ...], ...]
    yoneda: tuple[int, ...]


def day_quantale(m: MonoidalVCat) -> DayQuantale:
    """Presheaves on a monoidal V-category with ``(j∗l)(x) = ⋁_{w,z} a(x, w∗z)⊗j(w)⊗l(z)``."""
    x, q = m.cat, m.quantale
    d = presheaf_category(x)
    car = d.carrier
    config.require_cells(len(car) ** 2 * x.size ** 3, "Day convolution")

    def conv(j, l):
        return tuple(q.sup(q.prod((x(p, m.m(w, z)), j[w], l[z])) for w, z in product(x.points, repeat=2))
                     for p in x.points)

    mult = tuple(tuple(d.index[conv(j, l)] for l in car) for j in car)
    y = yoneda(x, d)
    labels = tuple("(" + ",".join(q.name(v) for v in j) + ")" for j in car)
    cat = VCategory(q, d.cat.hom, labels)
    dm = validate_monoidal(cat, mult, y.map[m.unit])
    amb = make_ambient(dm, "day")
    # residual law (l▷h)(x) = ⋀_y [l(y), h(x∗y)]
    for li, hi in product(range(len(car)), repeat=2):
        l, h = car[li], car[hi]
        want = tuple(q.inf(q.h(l[t], h[m.m(p, t)]) for t in x.points) for p in x.points)
        if car[amb.rhd[li][hi]] != want:
            raise ResidualMismatch("Day residual disagrees with the pointwise formula", witness=(l, h))
    return DayQuantale(amb, car, y.map)


# ---------------------------------------------------------------- generation and closure


@dataclass(frozen=True, eq=False)
class Generated:
    elements: tuple[int, ...]  # indices in the ambient
    stages: int
    preqba: QBA  # structure on ``elements`` (local indices)


def generate_preqba(amb: AmbientQuantale, S: Sequence[int]) -> Generated:
    """Close S under ▷ and ◁ of the ambient; P(x,y,z) = Q(x, y▷z), J(x) = Q(u, x)."""
    cur = set(S)
    stages = 0
    while True:
        nxt = set(cur)
        for a, b in product(cur, repeat=2):
            nxt.add(amb.rhd[a][b])
            nxt.add(amb.lhd[a][b])
        if nxt == cur:
            break
        cur = nxt
        stages += 1
    el = tuple(sorted(cur))
    pos = {g: i for i, g in enumerate(el)}
    x = amb.cat
    cat = restrict(x, el)
    P = [[[x(a, amb.rhd[b][c]) for c in el] for b in el] for a in el]
    J = [x(amb.m.unit, c) for c in el]
    pro = validate_promonoidal(cat, P, J)
    rhd = [[pos[amb.rhd[a][b]] for b in el] for a in el]
    lhd = [[pos[amb.lhd[a][b]] for b in el] for a in el]
    return Generated(el, stages, validate_preqba(pro, rhd, lhd))


@dataclass(frozen=True, eq=False)
class SubQuantale:
    ambient: AmbientQuantale
    carrier: tuple[int, ...]  # indices in the parent ambient
    pre_dense: bool


def _join_copower_closure(amb: AmbientQuantale, seed: set[int]) -> set[int]:
    x, q = amb.cat, amb.quantale
    cur = set(seed)
    bot = conical_sup(x, [])
    cur.add(bot)
    while True:
        nxt = set(cur)
        for a in cur:
            for v in q.elements:
                nxt.add(copower(x, a, v))
        for a, b in product(cur, repeat=2):
            if a < b:
                nxt.add(conical_sup(x, [a, b]))
        if nxt == cur:
            return cur
        cur = nxt


def subquantale_closure(amb: AmbientQuantale, G: Sequence[int]) -> SubQuantale:
    """Smallest subset with G and the unit, closed under ∗, joins and copowers."""
    m = amb.m
    cur = set(G) | {m.unit}
    while True:
        nxt = _join_copower_closure(amb, cur)
        nxt |= {m.m(a, b) for a, b in product(nxt, repeat=2)}
        if nxt == cur:
            break
        cur = nxt
    el = tuple(sorted(cur))
    # pre-density: joins of products of generators already give everything
    prods = {m.unit}
    while True:
        more = prods | {m.m(p, g) for p in prods for g in G}
        if more == prods:
            break
        prods = more
    pre_dense = _join_copower_closure(amb, prods) == cur
    pos = {g: i for i, g in enumerate(el)}
    cat = restrict(amb.cat, el)
    mult = [[pos[m.m(a, b)] for b in el] for a in el]
    sub = make_ambient(validate_monoidal(cat, mult, pos[m.unit]), "subclosure")
    for a, b in product(G, repeat=2):
        for table, mine in ((amb.rhd, sub.rhd), (amb.lhd, sub.lhd)):
            r = table[a][b]
            if r not in pos or not _iso(sub.cat, pos[r], mine[pos[a]][pos[b]]):
                raise ResidualMismatch("residual of generators leaves the subquantale", witness=(a, b))
    return SubQuantale(sub, el, pre_dense)


def _iso(x: VCategory, p: int, r: int) -> bool:
    q = x.quantale
    return q.le(q.unit, x(p, r)) and q.le(q.unit, x(r, p))


# ---------------------------------------------------------------- nucleus


@dataclass
class NucleusReport:
    inflationary: bool
    unit: bool
    idempotent: bool
    lax: bool
    functor: bool
    witness: dict

    @property
    def ok(self) -> bool:
        return self.inflationary and self.unit and self.idempotent and self.lax and self.functor

    def to_dict(self) -> dict:
        return {"inflationary": self.inflationary, "unit": self.unit, "idempotent": self.idempotent,
                "lax": self.lax, "functor": self.functor, "ok": self.ok, "witness": self.witness}


def nucleus_table(amb: AmbientQuantale, G: Sequence[int]) -> tuple[int, ...]:
    """``T(q) = ⋀_{g∈G} (Q(q,g) ⋔ g)``, computed as a meet of powers and as a limit; both must agree."""
    x = amb.cat
    q = x.quantale
    out = []
    for p in x.points:
        powers = [power(x, g, x(p, g)) for g in G]
        if any(v is None for v in powers):
            raise PropLaxViolation("missing power", witness=(p,))
        inf = _realize_col(x, limit_col(q, x, [q.unit] * len(powers), powers))
        lim = _realize_col(x, [q.inf(q.h(x(p, g), x(z, g)) for g in G) for z in x.points])
        if inf is None or lim is None or not _iso(x, inf, lim):
            raise PropLaxViolation("meet of powers and limit disagree", witness=(p,))
        out.append(lim)
    return tuple(out)


def nucleus_report(amb: AmbientQuantale, T: Sequence[int]) -> NucleusReport:
    x, m, q = amb.cat, amb.m, amb.quantale
    k = q.unit
    le = lambda a, b: q.le(k, x(a, b))
    w: dict = {}
    bad = next((p for p in x.points if not le(p, T[p])), None)
    if bad is not None:
        w["inflationary"] = (bad,)
    unit_ok = le(m.unit, T[m.unit])
    if not unit_ok:
        w["unit"] = (m.unit,)
    bad = next((p for p in x.points if T[T[p]] != T[p]), None)
    if bad is not None:
        w["idempotent"] = (bad,)
    bad = next(((a, b) for a, b in product(x.points, repeat=2) if not le(m.m(T[a], T[b]), T[m.m(a, b)])), None)
    if bad is not None:
        w["lax"] = bad
    bad = next(((a, b) for a, b in product(x.points, repeat=2) if not q.le(x(a, b), x(T[a], T[b]))), None)
    if bad is not None:
        w["functor"] = bad
    return NucleusReport(*(key not in w for key in ("inflationary", "unit", "idempotent", "lax", "functor")), w)


def nucleus(amb: AmbientQuantale, G: Sequence[int]) -> tuple[tuple[int, ...], NucleusReport]:
    T = nucleus_table(amb, G)
    rep = nucleus_report(amb, T)
    if not rep.ok:
        raise PropLaxViolation("nucleus fails a monad condition", witness=rep.witness)
    return T, rep


# ---------------------------------------------------------------- hull


@dataclass
class HullResult:
    H: MonoidalVCat
    quantale: Quantale  # underlying ordered monoid of H
    embedding: tuple[int, ...]
    generators: tuple[int, ...]  # H indices of the generated prequantum B-algebra
    diagnostics: dict
    approximate: bool = False
    stability: dict | None = None
    T: tuple[int, ...] | None = None
    Q1: SubQuantale | None = field(default=None, repr=False)
    G: Generated | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return all(v is True for k, v in self.diagnostics.items() if isinstance(v, bool))

    def to_dict(self) -> dict:
        c = self.H.cat
        q = c.quantale
        return {
            "elements": [c.label(i) for i in c.points],
            "hom": [[q.name(v) for v in r] for r in c.hom],
            "mult": [list(r) for r in self.H.mult],
            "unit": self.H.unit,
            "embedding": list(self.embedding),
            "generators": list(self.generators),
            "nucleus": list(self.T) if self.T is not None else None,
            "diagnostics": self.diagnostics,
            "approximate": self.approximate,
            "stability": self.stability,
        }


def fixed_point_hull(sub: SubQuantale, T: Sequence[int]) -> tuple[MonoidalVCat, tuple[int, ...]]:
    """Fixed points of T with ``h∗'h' = T(h∗h')`` and unit ``T(u)``; returns H and its carrier (Q1 indices)."""
    amb = sub.ambient
    m = amb.m
    car = tuple(p for p in amb.cat.points if T[p] == p)
    pos = {p: i for i, p in enumerate(car)}
    cat = restrict(amb.cat, car)
    mult = [[pos[T[m.m(a, b)]] for b in car] for a in car]
    return validate_monoidal(cat, mult, pos[T[m.unit]]), car


def density_witness(H: MonoidalVCat, gens: Sequence[int]) -> tuple | None:
    """Both density conditions for the generators inside H.

    Meet form ``H(z,h) = ⋀_g [H(h,g), H(z,g)]`` and join-of-products form
    ``H(h,z) = ⋀_π [H(π,h), H(π,z)]`` over all products π of generators.
    """
    x, q = H.cat, H.quantale
    for h, z in product(x.points, repeat=2):
        if x(z, h) != q.inf(q.h(x(h, g), x(z, g)) for g in gens):
            return ("meet", h, z)
    prods = {H.unit}
    while True:
        more = prods | {H.m(p, g) for p in prods for g in gens}
        if more == prods:
            break
        prods = more
    for h, z in product(x.points, repeat=2):
        if x(h, z) != q.inf(q.h(x(p, h), x(p, z)) for p in prods):
            return ("join", h, z)
    return None


def _hull_from_ambient(amb: AmbientQuantale, S: Sequence[int], source: InducedLV | None,
                       source_map: Sequence[int] | None) -> HullResult:
    gen = generate_preqba(amb, S)
    sub = subquantale_closure(amb, gen.elements)
    spos = {p: i for i, p in enumerate(sub.carrier)}
    G1 = [spos[g] for g in gen.elements]
    T, nrep = nucleus(sub.ambient, G1)
    H, car = fixed_point_hull(sub, T)
    hpos = {p: i for i, p in enumerate(car)}
    diag: dict = {"pre_dense": sub.pre_dense, "nucleus": nrep.to_dict(), "generated_size": len(gen.elements),
                  "generation_stages": gen.stages, "q1_size": len(sub.carrier), "size": H.size}
    gens_h = []
    for g in G1:
        if T[g] != g:
            raise PropLaxViolation("generator not fixed by T", witness=(g,))
        gens_h.append(hpos[g])
    try:
        hq = underlying_quantale(H)
        diag["quantale"] = True
    except ValidationError as e:
        hq = None
        diag["quantale"] = False
        diag["quantale_witness"] = e.to_dict()
    vq = vquantale_report(H)
    diag["vquantale"] = vq.is_vquantale
    hpro = promonoidal_from_monoidal(H)
    g_to_h = tuple(gens_h)
    diag["generators_fully_faithful"] = lv_fully_faithful(g_to_h, gen.preqba, hpro)
    if source is not None:
        emb = tuple(hpos[spos[source_map[p]]] for p in source.points)
        diag["fully_faithful"] = lv_fully_faithful(emb, source, hpro)
    else:
        emb = tuple(hpos[spos[s]] for s in S)
    dw = density_witness(H, gens_h)
    diag["dense"] = dw is None
    if dw is not None:
        diag["dense_witness"] = dw
    return HullResult(H, hq, emb, tuple(sorted(set(gens_h))), diag, T=T, Q1=sub, G=gen)


def hull_of_monoidal(m: MonoidalVCat) -> HullResult:
    """Pipeline (a): ambient is the Day quantale, generators the representables."""
    day = day_quantale(m)
    res = _hull_from_ambient(day.ambient, day.yoneda, promonoidal_from_monoidal(m), day.yoneda)
    res.diagnostics["ambient"] = "day"
    res.diagnostics["ambient_size"] = day.ambient.size
    return res


def hull_in_ambient(amb: AmbientQuantale, S: Sequence[int]) -> HullResult:
    """Pipeline (b): user ambient V-quantale and subset; embedding indexed by S."""
    res = _hull_from_ambient(amb, sorted(set(S)), None, None)
    res.diagnostics["ambient"] = amb.tag
    return res


def injective_hull(inp, subset: Sequence[int] | None = None, truncate: int | None = None) -> HullResult:
    if isinstance(inp, QBA):
        return truncated_qba_hull(inp, truncate or config.limits.max_list_len)
    if isinstance(inp, AmbientQuantale):
        return hull_in_ambient(inp, subset if subset is not None else list(inp.cat.points))
    return hull_of_monoidal(inp)


# ---------------------------------------------------------------- truncated QBA hulls


def _states_upto(a: QBA, bound: int) -> tuple[list, list]:
    """States ``ã(v̄, −)`` and pairs ``(ã(v̄, −), σ_v̄)`` for lists of length ≤ bound.

    ``σ_v̄(z) = v₁▷(…(v_m▷z))``; σ of the empty list is the identity.
    """
    from .multicat import lv_state

    pts = a.points
    states, pairs = set(), set()
    layer = {()}
    for n in range(bound + 1):
        nxt = set()
        for xs in layer:
            st = lv_state(a, xs)
            sig = list(pts)
            for v in reversed(xs):
                sig = [a.rhd[v][z] for z in sig]
            states.add(st)
            pairs.add((st, tuple(sig)))
            if n < bound:
                nxt |= {(v, *xs) for v in pts}
        layer = nxt
    return sorted(states), sorted(pairs)


def _truncated_tables(a: QBA, bound: int):
    q, x = a.quantale, a.cat
    S, A = _states_upto(a, bound)
    config.require_cells(len(S) * len(A) * x.size * q.n, "truncated hull")
    # weights l: closure of S and ⊤ under pointwise meets and [v, −]
    top = tuple(q.top for _ in x.points)
    ls = set(S) | {top}
    while True:
        more = set(ls)
        for l in ls:
            for v in q.elements:
                more.add(tuple(q.h(v, c) for c in l))
        for l, l2 in product(ls, repeat=2):
            more.add(tuple(q.meet[c][d] for c, d in zip(l, l2)))
        if more == ls:
            break
        ls = more

    def h_of(l):
        return tuple(q.inf(q.h(l[z], s[z]) for z in x.points) for s in S)

    H = sorted({h_of(l) for l in ls})
    pos = {h: i for i, h in enumerate(H)}
    hom = tuple(tuple(q.inf(q.h(u, v) for u, v in zip(h, h2)) for h2 in H) for h in H)

    def mult(h, h2):
        l = tuple(q.inf(q.h(q.t(h[i], h2[S.index(t)]), s[sig[z]])
                        for i, s in enumerate(S) for t, sig in A) for z in x.points)
        return pos[h_of(l)]

    mt = tuple(tuple(mult(h, h2) for h2 in H) for h in H)
    J = a.pro.J if a.unit is None else tuple(x(a.unit, z) for z in x.points)
    unit = pos[h_of(J)]
    emb = tuple(pos[h_of(tuple(x.hom[p]))] for p in x.points)
    return S, A, H, hom, mt, unit, emb


def truncated_qba_hull(a: QBA, bound: int) -> HullResult:
    """Pipeline (c): hull of a quantum B-algebra from list states of length ≤ bound.

    Marked approximate; the stability report compares bound and bound+1 and
    certifies exactness when the states and their residual actions stop growing.
    """
    q = a.quantale
    S, A, H, hom, mt, unit, emb = _truncated_tables(a, bound)
    S2, A2, H2, hom2, mt2, unit2, emb2 = _truncated_tables(a, bound + 1)
    stable = (S == S2 and A == A2)
    same = (H, hom, mt, unit, emb) == (H2, hom2, mt2, unit2, emb2)
    labels = tuple("(" + ",".join(q.name(v) for v in h) + ")" for h in H)
    cat = VCategory(q, hom, labels)
    diag: dict = {"states": len(S), "size": len(H)}
    try:
        Hm = validate_monoidal(cat, mt, unit)
        hq = underlying_quantale(Hm)
        diag["quantale"] = True
        diag["vquantale"] = vquantale_report(Hm).is_vquantale
        diag["fully_faithful"] = lv_fully_faithful(emb, a, promonoidal_from_monoidal(Hm))
        dw = density_witness(Hm, sorted(set(emb)))
        diag["dense"] = dw is None
    except ValidationError as e:
        raise ApproximationUnstable(f"truncated tables do not form a V-quantale at bound {bound}",
                                    witness=e.to_dict()) from e
    stab = {"bound": bound, "next_bound": bound + 1, "states_stable": stable, "tables_equal": same,
            "exact": stable and same}
    return HullResult(Hm, hq, emb, tuple(sorted(set(emb))), diag, approximate=True, stability=stab)


def hulls_isomorphic(h1: HullResult, h2: HullResult, match_embedding: bool = True) -> tuple[int, ...] | None:
    """An isomorphism of V-quantales between two hulls, optionally commuting with the embeddings."""
    a, b = h1.H, h2.H
    if a.size != b.size:
        return None
    if not match_embedding:
        return find_isomorphism(a.cat, b.cat, (a.mult, a.unit, b.mult, b.unit))
    from itertools import permutations

    fixed = {}
    for p, r in zip(h1.embedding, h2.embedding):
        if fixed.get(p, r) != r:
            return None
        fixed[p] = r
    free_src = [p for p in a.points if p not in fixed]
    free_dst = [r for r in b.points if r not in fixed.values()]
    config.require_cells(max(1, len(free_src)) ** max(1, len(free_src)), "hull isomorphism")
    for perm in permutations(free_dst):
        f = dict(fixed)
        f.update(zip(free_src, perm))
        if all(a.cat(p, r) == b.cat(f[p], f[r]) and f[a.m(p, r)] == b.m(f[p], f[r])
               for p, r in product(a.points, repeat=2)) and f[a.unit] == b.unit:
            return tuple(f[p] for p in a.points)
    return None


# ---------------------------------------------------------------- spot checks


@dataclass
class SpotReport:
    ok: bool
    checked: int
    failures: list

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": self.failures}


def injectivity_extension_spotcheck(Q, corpus: Sequence[tuple]) -> SpotReport:
    """For each ``(X, Y, g, h)``: g fully faithful, h an (L,V)-functor X→Q; search k : Y → Q with k∘g = h."""
    checked, failures = 0, []
    for X, Y, g in corpus:
        if lv_fully_faithful(g, X, Y) is False:
            continue
        for h in all_lv_functors(X, Q):
            checked += 1
            if not _extends(Y, Q, g, h):
                failures.append({"g": list(g), "h": list(h), "Y_size": len(Y.cat.hom)})
                break
    return SpotReport(not failures, checked, failures)


def _extends(Y, Q, g, h) -> bool:
    from .multicat import check_lv_functor

    n = len(Y.cat.hom)
    fixed = {}
    for p, r in zip(g, h):
        if fixed.get(p, r) != r:
            return False
        fixed[p] = r
    free = [p for p in range(n) if p not in fixed]
    qn = len(Q.cat.hom)
    config.require_cells(qn ** len(free), "extension search")
    for vals in product(range(qn), repeat=len(free)):
        k = dict(fixed)
        k.update(zip(free, vals))
        kk = tuple(k[p] for p in range(n))
        if check_lv_functor(kk, Y, Q):
            return True
    return False


def essential_spotcheck(e: Sequence[int], X, E, corpus: Sequence) -> SpotReport:
    """For every (L,V)-functor f : E → Z with f∘e fully faithful, f must be fully faithful."""
    if not lv_fully_faithful(e, X, E):
        raise PropLaxViolation("embedding is not fully faithful", witness=tuple(e))
    checked, failures = 0, []
    for Z in corpus:
        if Z.quantale is not E.quantale:
            continue
        for f in all_lv_functors(E, Z):
            checked += 1
            fe = tuple(f[v] for v in e)
            if lv_fully_faithful(fe, X, Z) and not lv_fully_faithful(f, E, Z):
                failures.append({"f": list(f), "Z_size": len(Z.cat.hom),
                                 "witness": lv_fully_faithful_witness(f, E, Z)})
                break
    return SpotReport(not failures, checked, failures)
