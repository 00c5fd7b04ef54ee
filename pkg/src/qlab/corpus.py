"""Enumerations and the bundled example corpus.

Partial orders, frames and ordered monoids are enumerated on labelled
points; :func:`up_to_iso` keeps one representative per isomorphism class.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .errors import ValidationError
from .multicat import InducedLV, Promonoidal, promonoidal_from_monoidal, unary_lv
from .quantale import (Quantale, capped_chain, chain_frame, extended_capped_chain, frame, powerset_frame, two,
                       validate_quantale)
from .vcat import MonoidalVCat, VCategory, discrete, from_order, quantale_vcategory, validate_monoidal


def _transitive(le, n) -> bool:
    return all(not (le[a][b] and le[b][c]) or le[a][c] for a, b, c in product(range(n), repeat=3))


def partial_orders(n: int) -> list[tuple[tuple[bool, ...], ...]]:
    """All partial orders on ``{0..n-1}`` (labelled)."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    out = []
    for choice in product(range(3), repeat=len(pairs)):  # none, a<b, b<a
        le = [[a == b for b in range(n)] for a in range(n)]
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                le[a][b] = True
            elif c == 2:
                le[b][a] = True
        if _transitive(le, n):
            out.append(tuple(tuple(r) for r in le))
    return out


def _canon(le, n, extra=None):
    best = None
    for perm in permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        key = tuple(le[perm[a]][perm[b]] for a in range(n) for b in range(n))
        if extra is not None:
            key = key + extra(perm, inv)
        if best is None or key < best:
            best = key
    return best


def up_to_iso(orders):
    seen, out = set(), []
    for le in orders:
        k = _canon(le, len(le))
        if k not in seen:
            seen.add(k)
            out.append(le)
    return out


def is_lattice(le) -> bool:
    n = len(le)
    for a, b in product(range(n), repeat=2):
        ubs = [c for c in range(n) if le[a][c] and le[b][c]]
        if not any(all(le[c][d] for d in ubs) for c in ubs):
            return False
    return any(all(le[a]) for a in range(n))


def is_distributive(le) -> bool:
    from .quantale import lattice_tables

    n = len(le)
    join, meet = lattice_tables(le)
    return all(meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]] for a, b, c in product(range(n), repeat=3))


def frames_upto(n_max: int = 4) -> list[Quantale]:
    """Frames with 2..n_max elements up to isomorphism (the one-element frame is trivial)."""
    out = []
    for n in range(2, n_max + 1):
        for le in up_to_iso(partial_orders(n)):
            if is_lattice(le) and is_distributive(le):
                out.append(frame(le))
    return out


def ordered_monoids(n: int, up_to_isomorphism: bool = True) -> list[tuple]:
    """``(leq, mult, unit)`` with a partial order, an associative monotone product and unit 0."""
    out = []
    rest = [(a, b) for a in range(1, n) for b in range(1, n)]
    for le in partial_orders(n):
        for vals in product(range(n), repeat=len(rest)):
            m = [[0] * n for _ in range(n)]
            for a in range(n):
                m[0][a] = m[a][0] = a
            for (a, b), v in zip(rest, vals):
                m[a][b] = v
            if any(m[m[a][b]][c] != m[a][m[b][c]] for a, b, c in product(range(n), repeat=3)):
                continue
            if any(le[a][a2] and le[b][b2] and not le[m[a][b]][m[a2][b2]]
                   for a, a2, b, b2 in product(range(n), repeat=4)):
                continue
            out.append((le, tuple(map(tuple, m)), 0))
    if not up_to_isomorphism:
        return out
    seen, uniq = set(), []
    for le, m, u in out:
        def extra(perm, inv, m=m):
            return tuple(inv[m[perm[a]][perm[b]]] for a in range(n) for b in range(n)) + (inv[u],)

        k = _canon(le, n, extra)
        if k not in seen:
            seen.add(k)
            uniq.append((le, m, u))
    return uniq


def monoid_vcat(q: Quantale, le, mult, unit: int, labels=None) -> MonoidalVCat:
    return validate_monoidal(from_order(q, le, labels), mult, unit)


# ---------------------------------------------------------------- named examples


@lru_cache(maxsize=None)
def TWO() -> Quantale:
    return two()


def es_monoid(q: Quantale | None = None) -> MonoidalVCat:
    """Discrete monoid {e, s} with s∗s = s."""
    q = q or TWO()
    le = ((True, False), (False, True))
    return monoid_vcat(q, le, ((0, 1), (1, 1)), 0, ("e", "s"))


def trivial_monoid(q: Quantale | None = None) -> MonoidalVCat:
    q = q or TWO()
    return monoid_vcat(q, ((True,),), ((0,),), 0, ("e",))


def antichain(q: Quantale, n: int = 2) -> VCategory:
    return discrete(q, n)


def antichain_with_top(q: Quantale) -> VCategory:
    """a, b and a top element above both."""
    le = ((True, False, True), (False, True, True), (False, False, True))
    return from_order(q, le, ("a", "b", "t"))


@lru_cache(maxsize=None)
def corpus_quantales() -> tuple[Quantale, ...]:
    """Quantales with at most 4 elements used throughout the tests."""
    return (TWO(), chain_frame(3), chain_frame(4), powerset_frame(2), capped_chain(3), capped_chain(4),
            extended_capped_chain(2))


def small_vcategories(q: Quantale, max_size: int = 3) -> list[VCategory]:
    """Every V-category on ≤ 2 points, plus a handful on 3 points."""
    from .vcat import validate_vcategory

    out = []
    k = q.unit
    for n in (1, 2):
        off = [(a, b) for a in range(n) for b in range(n) if a != b]
        for diag in product([v for v in q.elements if q.le(k, v)], repeat=n):
            for vals in product(q.elements, repeat=len(off)):
                hom = [[diag[a] if a == b else 0 for b in range(n)] for a in range(n)]
                for (a, b), v in zip(off, vals):
                    hom[a][b] = v
                try:
                    out.append(validate_vcategory(q, hom))
                except ValidationError:
                    pass
    if max_size >= 3:
        out.append(discrete(q, 3))
        out.append(from_order(q, [[a <= b for b in range(3)] for a in range(3)]))
        out.append(from_order(q, ((True, False, True), (False, True, True), (False, False, True))))
        if q.n <= 3:
            out.append(quantale_vcategory(q))
    return out


def structures_for_spotchecks(q: Quantale) -> list[InducedLV]:
    """Small (L,V)-structures: unary-only posets and the promonoidal structures of small monoids."""
    out: list[InducedLV] = []
    for n in (1, 2, 3):
        for le in up_to_iso(partial_orders(n)):
            out.append(unary_lv(from_order(q, le)))
    if q.n == 2:
        for n in (1, 2):
            for le, m, u in ordered_monoids(n):
                out.append(promonoidal_from_monoidal(monoid_vcat(q, le, m, u)))
    return out


def is_promonoidal(s) -> bool:
    return isinstance(s, Promonoidal)
