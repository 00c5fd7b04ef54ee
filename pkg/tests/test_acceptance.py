"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The lines are also collected in RESULTS and repeated in the terminal summary.
"""
from itertools import product

from oracles import cuts_by_intersections, inclusion_order, order_isomorphic
from qlab.colimits import isbell_T, macneille_completion, vquantale_report
from qlab.corpus import (TWO, corpus_quantales, es_monoid, frames_upto, monoid_vcat, ordered_monoids,
                         partial_orders, small_vcategories, structures_for_spotchecks, trivial_monoid)
from qlab.hull import (day_quantale, density_witness, essential_spotcheck, hull_in_ambient, hull_of_monoidal,
                       hulls_isomorphic, injective_hull, injectivity_extension_spotcheck, make_ambient,
                       truncated_qba_hull, underlying_quantale)
from qlab.multicat import (all_lv_functors, lv_fully_faithful, promonoidal_from_monoidal, qba_from_vquantale,
                           qba_over_quantale, unary_lv)
from qlab.quantale import capped_chain, quantale_as_monoidal, two, validate_quantale
from qlab.topo import (adjunction_witness, all_topologies, f_core_compact, filter_space, homeomorphism,
                       lambda_space, neighbourhood_joins, plus_continuous, sierpinski, triangle_witness)
from qlab.vcat import discrete, find_isomorphism, from_order, presheaf_category, underlying_order, yoneda

RESULTS: dict[int, str] = {}
QS = corpus_quantales()
MONOIDS = [monoid_vcat(TWO(), le, m, u) for n in (1, 2, 3) for le, m, u in ordered_monoids(n)]
SMALL_MONOIDS = [m for m in MONOIDS if m.size <= 2]


def report(n: int, text: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}" + (f" ({detail})" if detail else "")
    RESULTS[n] = line
    print(line)
    assert ok, line


def _hull_runs():
    """Every hull pipeline run in the corpus: (label, result)."""
    runs = [(f"quantale n={q.n}", injective_hull(quantale_as_monoidal(q))) for q in QS]
    runs += [(f"monoid {m.mult}", hull_of_monoidal(m)) for m in MONOIDS]
    day = day_quantale(es_monoid())
    runs.append(("ambient es", hull_in_ambient(day.ambient, day.yoneda)))
    return runs


def test_criterion_01_quantale_laws():
    qs = [two()] + list(frames_upto(4)) + [capped_chain(n) for n in range(2, 7)]
    bad = []
    for q in qs:
        v = validate_quantale(q.leq, q.tensor, q.unit)
        for u, w, z in product(v.elements, repeat=3):
            if v.le(v.t(u, w), z) != v.le(w, v.h(u, z)):
                bad.append((v, u, w, z))
    report(1, "quantale laws and exhaustive hom adjunction", not bad, f"{len(qs)} quantales")


def test_criterion_02_macneille_oracle():
    count, bad = 0, []
    for n in range(1, 5):
        for le in partial_orders(n):
            count += 1
            comp = macneille_completion(from_order(TWO(), le), verify=False)
            if not order_isomorphic(underlying_order(comp.cat), inclusion_order(cuts_by_intersections(le))):
                bad.append(le)
    anti = macneille_completion(discrete(TWO(), 2)).cat.size
    report(2, "Isbell completion equals cut completion", not bad and anti == 4,
           f"{count} partial orders, antichain completion has {anti} elements")


def test_criterion_03_yoneda():
    checked, bad = 0, 0
    for q in QS:
        if q.n > 4:
            continue
        for x in small_vcategories(q, 3):
            d = presheaf_category(x)
            y = yoneda(x, d)
            for p in x.points:
                for i, j in enumerate(d.carrier):
                    checked += 1
                    bad += d.cat(y(p), i) != j[p]
    report(3, "Yoneda lemma", bad == 0, f"{checked} cells")


def test_criterion_04_isbell_monad():
    checked, bad = 0, []
    for q in QS:
        for x in small_vcategories(q, 3):
            d = presheaf_category(x)
            T = {j: isbell_T(x, j) for j in d.carrier}
            for j in d.carrier:
                checked += 1
                tj = T[j]
                if not all(q.le(a, b) for a, b in zip(j, tj)) or isbell_T(x, tj) != tj:
                    bad.append((x, j))
            for j, k in product(d.carrier, repeat=2):
                if all(q.le(a, b) for a, b in zip(j, k)) and not all(q.le(a, b) for a, b in zip(T[j], T[k])):
                    bad.append((x, j, k))
    report(4, "Isbell monad inflationary, idempotent and monotone", not bad, f"{checked} presheaves")


def test_criterion_05_nucleus_conditions():
    runs = _hull_runs()
    bad = []
    for label, h in runs:
        amb, T = h.Q1.ambient, h.T
        x, m, q = amb.cat, amb.m, amb.quantale
        le = lambda a, b: q.le(q.unit, x(a, b))
        ok = (all(le(p, T[p]) for p in x.points) and le(m.unit, T[m.unit])
              and all(T[T[p]] == T[p] for p in x.points)
              and all(le(m.m(T[a], T[b]), T[m.m(a, b)]) for a, b in product(x.points, repeat=2)))
        if not ok:
            bad.append(label)
    report(5, "nucleus conditions on every hull run", not bad, f"{len(runs)} runs")


def test_criterion_06_hull_idempotence():
    bad = []
    for q in QS:
        m = quantale_as_monoidal(q)
        h = injective_hull(m)
        iso = find_isomorphism(m.cat, h.H.cat, (m.mult, m.unit, h.H.mult, h.H.unit))
        if iso is None or sorted(h.embedding) != list(h.H.points):
            bad.append(q)
    report(6, "hull of a quantale is itself", not bad, f"{len(QS)} quantales")


def test_criterion_07_hull_diagnostics():
    bad = []
    for m in [es_monoid()] + MONOIDS:
        h = hull_of_monoidal(m)
        hq = underlying_quantale(h.H)
        validate_quantale(hq.leq, hq.tensor, hq.unit, allow_trivial=True, commutative=False)
        ok = (vquantale_report(h.H).is_vquantale
              and lv_fully_faithful(h.embedding, promonoidal_from_monoidal(m), promonoidal_from_monoidal(h.H))
              and density_witness(h.H, h.generators) is None)
        if not ok:
            bad.append(m)
    report(7, "hull is a V-quantale, embedding fully faithful and dense", not bad, f"{len(MONOIDS) + 1} monoids")


def _injectivity_corpus(q):
    S = structures_for_spotchecks(q)
    return [(X, Y, g) for X in S for Y in S if X.size <= Y.size and X.size <= 2
            for g in all_lv_functors(X, Y) if lv_fully_faithful(g, X, Y)]


def test_criterion_08_injectivity():
    bad = []
    targets = [(q, quantale_as_monoidal(q)) for q in QS]
    targets += [(TWO(), day_quantale(m).ambient.m) for m in SMALL_MONOIDS]
    for q, m in targets:
        rep = injectivity_extension_spotcheck(promonoidal_from_monoidal(m), _injectivity_corpus(q))
        if not rep.ok or rep.checked == 0:
            bad.append(m)
    anti = injectivity_extension_spotcheck(unary_lv(discrete(TWO(), 2)), _injectivity_corpus(TWO()))
    report(8, "V-quantales pass extension search, the 2-antichain fails", not bad and not anti.ok,
           f"{len(targets)} V-quantales")


def test_criterion_09_essentiality():
    q = TWO()
    zs = [s for s in structures_for_spotchecks(q)]
    zs += [promonoidal_from_monoidal(monoid_vcat(q, f.leq, f.meet, f.top)) for f in frames_upto(4)]
    zs += [promonoidal_from_monoidal(day_quantale(m).ambient.m) for m in SMALL_MONOIDS]
    zs = [z for z in zs if z.size <= 4]
    bad = []
    for m in [es_monoid()] + MONOIDS:
        h = hull_of_monoidal(m)
        rep = essential_spotcheck(h.embedding, promonoidal_from_monoidal(m), promonoidal_from_monoidal(h.H), zs)
        if not rep.ok:
            bad.append(m)
    counter = essential_spotcheck((1,), promonoidal_from_monoidal(trivial_monoid()),
                                  promonoidal_from_monoidal(quantale_as_monoidal(q)), zs)
    report(9, "hull embeddings are essential, a non-dense one is not", not bad and not counter.ok,
           f"{len(zs)} targets")


def test_criterion_10_day_quantale():
    day = day_quantale(es_monoid())
    dm = day.ambient.m
    tables = (day.presheaves == ((0, 0), (0, 1), (1, 0), (1, 1))
              and dm.mult == ((0, 0, 0, 0), (0, 1, 1, 1), (0, 1, 2, 3), (0, 1, 3, 3))
              and dm.unit == 2 and day.yoneda == (2, 1))
    strong = True
    for m in [es_monoid()] + MONOIDS:
        dy = day_quantale(m)
        y, mm = dy.yoneda, dy.ambient.m
        strong &= all(mm.m(y[a], y[b]) == y[m.m(a, b)] for a, b in product(m.points, repeat=2))
        strong &= mm.unit == y[m.unit]
    report(10, "Day tables for {e,s} and strong monoidal Yoneda", tables and strong)


def test_criterion_11_topology():
    spaces = [x for n in (1, 2, 3) for x in all_topologies(n)]
    bad = []
    for x in spaces:
        fs = filter_space(x)
        ok = adjunction_witness(x, fs) is None and triangle_witness(x, fs) is None
        ok &= f_core_compact(x, fs) == plus_continuous(x, fs)
        ok &= set(lambda_space(x).points) == neighbourhood_joins(x)
        if not ok:
            bad.append(x)
    s = sierpinski()
    sier = homeomorphism(lambda_space(s).space, s) is not None
    report(11, "filter adjunction, core compactness and λX", not bad and sier, f"{len(spaces)} spaces")


def test_criterion_12_truncated_stability():
    sources = [(qba_over_quantale(q), quantale_as_monoidal(q)) for q in QS]
    sources += [(qba_from_vquantale(d.m), d.m) for d in (day_quantale(m).ambient for m in SMALL_MONOIDS)]
    bad = []
    for a, m in sources:
        h3, h4 = truncated_qba_hull(a, 3), truncated_qba_hull(a, 4)
        same = (h3.H.mult, h3.H.cat.hom, h3.H.unit, h3.embedding) == (h4.H.mult, h4.H.cat.hom, h4.H.unit,
                                                                        h4.embedding)
        exact = hull_in_ambient(make_ambient(m), list(m.points))
        if not (same and hulls_isomorphic(h3, exact) is not None and hulls_isomorphic(h4, exact) is not None):
            bad.append(m)
    report(12, "truncated QBA hull at bounds 3 and 4 equals the exact hull", not bad, f"{len(sources)} QBAs")
