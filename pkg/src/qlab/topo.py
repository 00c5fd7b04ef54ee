"""Finite topological spaces: filters of opens, the lower Vietoris space and λX.

Subsets of the point set are bitmasks. An open filter is a frozenset of open
masks; the improper filter (the one containing ∅) is kept. For a finite
space every filter is principal, ``↑V`` for its least member V, which gives
a second route to the enumeration.

The maps between filters and closed sets:

* ``𝔣⁺ = lim 𝔣 = {x : N(x) ⊆ 𝔣}``
* ``A⁻`` = the filter generated by the neighbourhood filters of the points of A

so that ``A⁻ ⊆ 𝔣 ⇔ A ⊆ 𝔣⁺``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from . import config
from .errors import AdjunctionFail, FixpointJoinMismatch, NotATopology

Filter = frozenset


def bits(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class FinTop:
    n: int
    opens: tuple[int, ...]  # sorted masks

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def closed(self) -> tuple[int, ...]:
        return tuple(sorted(self.full ^ u for u in self.opens))

    def min_open(self, x: int) -> int:
        m = self.full
        for u in self.opens:
            if u >> x & 1:
                m &= u
        return m

    def closure(self, a: int) -> int:
        return min((c for c in self.closed if c & a == a), key=lambda c: bin(c).count("1"))

    def nbhd(self, x: int) -> Filter:
        return frozenset(u for u in self.opens if u >> x & 1)

    def is_T0(self) -> bool:
        return len({self.min_open(x) for x in range(self.n)}) == self.n


def validate_space(n: int, opens: Iterable[Iterable[int] | int]) -> FinTop:
    ms = set()
    for u in opens:
        m = u if isinstance(u, int) else mask_of(u)
        if m >> n:
            raise NotATopology("open mentions a point out of range", witness=(m,))
        ms.add(m)
    full = (1 << n) - 1
    if 0 not in ms:
        raise NotATopology("∅ is not open", witness=([],), law="empty")
    if full not in ms:
        raise NotATopology("X is not open", witness=(list(range(n)),), law="whole")
    for a, b in product(ms, repeat=2):
        if a | b not in ms:
            raise NotATopology("not closed under union", witness=(bits(a, n), bits(b, n)), law="union")
        if a & b not in ms:
            raise NotATopology("not closed under intersection", witness=(bits(a, n), bits(b, n)),
                               law="intersection")
    return FinTop(n, tuple(sorted(ms)))


def sierpinski() -> FinTop:
    return validate_space(2, [[], [1], [0, 1]])


def discrete(n: int) -> FinTop:
    return validate_space(n, range(1 << n))


def indiscrete(n: int) -> FinTop:
    return validate_space(n, [0, (1 << n) - 1])


def all_topologies(n: int) -> list[FinTop]:
    """Every topology on n labelled points (subsets of the powerset, filtered)."""
    full = (1 << n) - 1
    middle = [m for m in range(1, full)]
    config.require_cells(1 << len(middle), "topology enumeration")
    out = []
    for sel in range(1 << len(middle)):
        ms = {0, full} | {middle[i] for i in range(len(middle)) if sel >> i & 1}
        if all(a | b in ms and a & b in ms for a, b in product(ms, repeat=2)):
            out.append(FinTop(n, tuple(sorted(ms))))
    return out


# ---------------------------------------------------------------- filters


def up_closure(x: FinTop, fam: Iterable[int]) -> Filter:
    fam = list(fam)
    return frozenset(u for u in x.opens if any(v & u == v for v in fam))


def generated_filter(x: FinTop, fam: Iterable[int]) -> Filter:
    """Smallest filter of opens containing ``fam`` (X alone for the empty family)."""
    cur = set(fam) | {x.full}
    while True:
        more = cur | {a & b for a, b in product(cur, repeat=2)}
        if more == cur:
            break
        cur = more
    return up_closure(x, cur)


def is_filter(x: FinTop, fam: frozenset) -> bool:
    if x.full not in fam:
        return False
    if any(a & b not in fam for a, b in product(fam, repeat=2)):
        return False
    return all(u in fam for v in fam for u in x.opens if v & u == v)


def is_improper(f: Filter) -> bool:
    return 0 in f


def filters(x: FinTop) -> list[Filter]:
    """All filters as principal up-sets ``↑V``, sorted by (size, members)."""
    return sorted({up_closure(x, [v]) for v in x.opens}, key=_fkey)


def filters_bruteforce(x: FinTop) -> list[Filter]:
    config.require_cells(1 << len(x.opens), "filter brute force")
    out = []
    ops = x.opens
    for sel in range(1 << len(ops)):
        fam = frozenset(ops[i] for i in range(len(ops)) if sel >> i & 1)
        if is_filter(x, fam):
            out.append(fam)
    return sorted(out, key=_fkey)


def _fkey(f: Filter):
    return (len(f), sorted(f))


def subbasis_topology(npts: int, subbasis: Sequence[int]) -> tuple[int, ...]:
    """Opens generated by a family of subsets (masks over ``npts`` points)."""
    full = (1 << npts) - 1
    basis = {full}
    for s in subbasis:
        basis |= {b & s for b in basis}
    basis = set(basis)
    while True:
        more = basis | {b & s for b in basis for s in subbasis}
        if more == basis:
            break
        basis = more
    opens = {0}
    for b in basis:
        opens |= {o | b for o in opens}
    while True:
        more = opens | {a | b for a, b in product(opens, repeat=2)}
        if more == opens:
            break
        opens = more
    return tuple(sorted(opens))


@dataclass(frozen=True)
class FilterSpace:
    base: FinTop
    points: tuple[Filter, ...]
    space: FinTop

    def index(self, f: Filter) -> int:
        return self.points.index(f)


def filter_space(x: FinTop) -> FilterSpace:
    """FX with the topology generated by ``U^# = {𝔣 : U ∈ 𝔣}``."""
    pts = tuple(filters(x))
    config.require_cells(len(pts) * len(x.opens), "filter space")
    sharp = [mask_of(i for i, f in enumerate(pts) if u in f) for u in x.opens]
    return FilterSpace(x, pts, FinTop(len(pts), subbasis_topology(len(pts), sharp)))


def sharp(fs: FilterSpace, u: int) -> int:
    return mask_of(i for i, f in enumerate(fs.points) if u in f)


@dataclass(frozen=True)
class VietorisSpace:
    base: FinTop
    points: tuple[int, ...]  # closed sets
    space: FinTop


def vietoris(x: FinTop) -> VietorisSpace:
    """Closed sets with the topology generated by ``B^◇ = {A : A ∩ B ≠ ∅}``."""
    pts = x.closed
    diamonds = [diamond(pts, b) for b in x.opens]
    return VietorisSpace(x, pts, FinTop(len(pts), subbasis_topology(len(pts), diamonds)))


def diamond(closed: Sequence[int], b: int) -> int:
    return mask_of(i for i, a in enumerate(closed) if a & b)


# ---------------------------------------------------------------- the two maps


def lim_filter(x: FinTop, f: Filter) -> int:
    """``{x : N(x) ⊆ 𝔣}``, checked closed."""
    a = mask_of(p for p in range(x.n) if x.nbhd(p) <= f)
    if a not in x.closed:
        raise AdjunctionFail("limit set is not closed", witness=(bits(a, x.n),))
    return a


def closed_to_filter(x: FinTop, a: int) -> Filter:
    """The filter generated by ``N(p)`` for ``p ∈ A``; left adjoint to lim."""
    fam = set()
    for p in bits(a, x.n):
        fam |= x.nbhd(p)
    return generated_filter(x, fam)


def closed_to_filter_pointwise(x: FinTop, a: int) -> Filter:
    """``{U : cl{p} ∩ A ≠ ∅ ⇒ p ∈ U}``; kept as a diagnostic, it is not adjoint to lim."""
    need = [p for p in range(x.n) if x.closure(1 << p) & a]
    return frozenset(u for u in x.opens if all(u >> p & 1 for p in need))


def adjunction_witness(x: FinTop, fs: FilterSpace | None = None,
                       minus=closed_to_filter) -> tuple | None:
    """A pair violating ``A⁻ ⊆ 𝔣 ⇔ A ⊆ lim 𝔣``, or None."""
    fs = fs or filter_space(x)
    for f in fs.points:
        lf = lim_filter(x, f)
        for a in x.closed:
            if (minus(x, a) <= f) != (a & lf == a):
                return (sorted(f), bits(a, x.n))
    return None


def check_adjunction(x: FinTop, fs: FilterSpace | None = None) -> None:
    bad = adjunction_witness(x, fs)
    if bad:
        raise AdjunctionFail("A⁻ ⊆ 𝔣 ⇔ A ⊆ lim 𝔣 fails", witness=bad)


def triangle_witness(x: FinTop, fs: FilterSpace | None = None) -> tuple | None:
    """``lim((lim 𝔣)⁻) = lim 𝔣`` and ``(lim A⁻)⁻ = A⁻``."""
    fs = fs or filter_space(x)
    for f in fs.points:
        lf = lim_filter(x, f)
        if lim_filter(x, closed_to_filter(x, lf)) != lf:
            return ("plus", sorted(f))
    for a in x.closed:
        am = closed_to_filter(x, a)
        if closed_to_filter(x, lim_filter(x, am)) != am:
            return ("minus", bits(a, x.n))
    return None


def is_continuous(src: FinTop, dst: FinTop, f: Sequence[int]) -> tuple | None:
    """A dst-open whose preimage is not open, or None."""
    opens = set(src.opens)
    for u in dst.opens:
        pre = mask_of(i for i in range(src.n) if u >> f[i] & 1)
        if pre not in opens:
            return (bits(u, dst.n),)
    return None


def plus_map(fs: FilterSpace, vs: VietorisSpace) -> tuple[int, ...]:
    return tuple(vs.points.index(lim_filter(fs.base, f)) for f in fs.points)


def minus_map(fs: FilterSpace, vs: VietorisSpace) -> tuple[int, ...]:
    return tuple(fs.index(closed_to_filter(fs.base, a)) for a in vs.points)


def plus_continuous(x: FinTop, fs=None, vs=None) -> bool:
    fs, vs = fs or filter_space(x), vs or vietoris(x)
    return is_continuous(fs.space, vs.space, plus_map(fs, vs)) is None


def minus_continuous(x: FinTop, fs=None, vs=None) -> bool:
    fs, vs = fs or filter_space(x), vs or vietoris(x)
    return is_continuous(vs.space, fs.space, minus_map(fs, vs)) is None


# ---------------------------------------------------------------- F-core-compactness


def way_below_F(x: FinTop, v: int, u: int, fs: FilterSpace | None = None) -> bool:
    """Every filter containing V has a limit point in U."""
    fs = fs or filter_space(x)
    return all(lim_filter(x, f) & u for f in fs.points if v in f)


def f_core_compact(x: FinTop, fs: FilterSpace | None = None) -> bool:
    fs = fs or filter_space(x)
    for p in range(x.n):
        for u in x.opens:
            if u >> p & 1 and not any(v >> p & 1 and way_below_F(x, v, u, fs) for v in x.opens):
                return False
    return True


def way_below_pointwise(x: FinTop, v: int, u: int) -> bool:
    """Candidate reading: some point p with ``V ⊆ min_open(p) ⊆ U``. Diagnostic only."""
    return any(v & x.min_open(p) == v and x.min_open(p) & u == x.min_open(p) for p in range(x.n))


def way_below_comparison(x: FinTop, fs: FilterSpace | None = None) -> dict:
    fs = fs or filter_space(x)
    disagree = [(bits(v, x.n), bits(u, x.n)) for v, u in product(x.opens, repeat=2)
                if way_below_F(x, v, u, fs) != way_below_pointwise(x, v, u)]
    return {"agree": not disagree, "disagreements": disagree}


# ---------------------------------------------------------------- λX


@dataclass
class LambdaSpace:
    base: FinTop
    points: tuple[Filter, ...]
    space: FinTop
    embedding: tuple[int, ...]
    report: dict

    def to_dict(self) -> dict:
        n = self.base.n
        return {
            "points": [[bits(u, n) for u in sorted(f)] for f in self.points],
            "improper": [is_improper(f) for f in self.points],
            "opens": [bits(u, self.space.n) for u in self.space.opens],
            "embedding": list(self.embedding),
            "report": self.report,
        }


def neighbourhood_joins(x: FinTop) -> set[Filter]:
    out = set()
    for s in range(1 << x.n):
        fam = set()
        for p in bits(s, x.n):
            fam |= x.nbhd(p)
        out.add(generated_filter(x, fam))
    return out


def lambda_space(x: FinTop) -> LambdaSpace:
    fs = filter_space(x)
    vs = vietoris(x)
    check_adjunction(x, fs)
    fixed = [f for f in fs.points if closed_to_filter(x, lim_filter(x, f)) == f]
    joins = neighbourhood_joins(x)
    if set(fixed) != joins:
        raise FixpointJoinMismatch("fixed points and joins of neighbourhood filters differ",
                                   witness=([sorted(f) for f in fixed], [sorted(f) for f in joins]))
    pts = tuple(fixed)
    idx = [fs.index(f) for f in pts]
    # subspace topology of FX
    opens = sorted({mask_of(i for i, j in enumerate(idx) if o >> j & 1) for o in fs.space.opens})
    lam = FinTop(len(pts), tuple(opens))
    emb = tuple(pts.index(x.nbhd(p)) for p in range(x.n))
    cont = is_continuous(x, lam, emb) is None
    injective = len(set(emb)) == x.n
    initial = all(any(mask_of(p for p in range(x.n) if o >> emb[p] & 1) == u for o in lam.opens)
                  for u in x.opens)
    fcc = f_core_compact(x, fs)
    pc = plus_continuous(x, fs, vs)
    report = {
        "T0": x.is_T0(),
        "embedding_injective": injective,
        "embedding_continuous": cont,
        "embedding_initial": initial,
        "fixed_equals_joins": True,
        "triangles": triangle_witness(x, fs) is None,
        "plus_continuous": pc,
        "minus_continuous": minus_continuous(x, fs, vs),
        "f_core_compact": fcc,
        "equivalence_holds": fcc == pc,
        "improper_included": any(is_improper(f) for f in fs.points),
        "pointwise_minus_adjoint": adjunction_witness(x, fs, closed_to_filter_pointwise) is None,
        "way_below_reading": way_below_comparison(x, fs),
    }
    return LambdaSpace(x, pts, lam, emb, report)


def homeomorphism(a: FinTop, b: FinTop) -> tuple[int, ...] | None:
    if a.n != b.n or len(a.opens) != len(b.opens):
        return None
    target = set(b.opens)
    for perm in permutations(range(b.n)):
        if all(mask_of(perm[p] for p in bits(u, a.n)) in target for u in a.opens):
            return perm
    return None


def specialization_order(x: FinTop) -> list[list[bool]]:
    """``p ≤ q`` iff p ∈ cl{q}, equivalently min_open(p) ∋ q."""
    return [[bool(x.min_open(p) >> q & 1) for q in range(x.n)] for p in range(x.n)]


def to_dot(x: FinTop, labels: Sequence[str] | None = None, name: str = "X") -> str:
    le = specialization_order(x)
    labels = labels or [str(p) for p in range(x.n)]
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for p in range(x.n):
        lines.append(f'  n{p} [label="{labels[p]}"];')
    for p, q in product(range(x.n), repeat=2):
        if p != q and le[p][q] and not any(r not in (p, q) and le[p][r] and le[r][q] for r in range(x.n)):
            lines.append(f"  n{p} -> n{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"

