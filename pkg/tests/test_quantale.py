from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import hom_by_search, order_isomorphic
from qlab.colimits import isbell_T, vquantale_report
from qlab.corpus import corpus_quantales, es_monoid, frames_upto, monoid_vcat, ordered_monoids, TWO
from qlab.errors import (NotALattice, NotAMonad, NotAPoset, NotAssociative, NotCommutative, NotJoinPreserving,
                         NotMonotone, Trivial, UnitLaw)
from qlab.hull import day_quantale, underlying_quantale
from qlab.quantale import (QuantaleMorphism, capped_chain, check_lax_monoidal_monad, classify_morphism,
                           extended_capped_chain, fixed_point_quantale, has_zero_divisors, internal_hom,
                           powerset_frame, quantale_as_monoidal, support_test, two, unit_inclusion, unit_test,
                           validate_quantale)

QS = corpus_quantales()


# ---------------------------------------------------------------- validation


def test_two_is_valid_and_hom_is_implication():
    q = two()
    assert q.hom == ((1, 1), (0, 1))
    assert q.unit == 1 and q.bottom == 0 and q.top == 1


def test_frames_up_to_four_validate():
    fs = frames_upto(4)
    # chains of length 2, 3, 4 and the four-element Boolean lattice
    assert sorted(q.n for q in fs) == [2, 3, 4, 4]
    assert all(q.tensor == q.meet and q.unit == q.top for q in fs)


def test_capped_chain_four_is_valid():
    q = capped_chain(4)
    assert q.bottom == 3 and q.top == 0 and q.unit == 0
    assert q.tensor[1][2] == 3 and q.tensor[1][1] == 2


@pytest.mark.parametrize("n", range(2, 7))
def test_capped_chains_validate(n):
    q = capped_chain(n)
    assert q.n == n


def test_non_poset_rejected():
    with pytest.raises(NotAPoset) as e:
        validate_quantale([[1, 1], [1, 1]], [[0, 0], [0, 1]], 1)
    assert e.value.witness is not None


def test_non_lattice_rejected():
    # two incomparable maximal elements
    leq = [[1, 1, 1], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(NotALattice):
        validate_quantale(leq, [[0, 0, 0], [0, 1, 0], [0, 0, 2]], 1)


def test_non_associative_rejected_with_triple():
    # chain 0 < a < b < 1, a⊗a = 0, a⊗b = a, b⊗b = a
    leq = [[a <= b for b in range(4)] for a in range(4)]
    t = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 2], [0, 1, 2, 3]]
    with pytest.raises(NotAssociative) as e:
        validate_quantale(leq, t, 3)
    a, b, c = e.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_non_commutative_rejected_unless_allowed():
    # subsets of the monoid {e, a, b} with a∗x = a and b∗x = b
    m = monoid_vcat(TWO(), [[i == j for j in range(3)] for i in range(3)],
                    ((0, 1, 2), (1, 1, 1), (2, 2, 2)), 0)
    q = underlying_quantale(day_quantale(m).ambient.m)
    with pytest.raises(NotCommutative):
        validate_quantale(q.leq, q.tensor, q.unit)
    assert q.n == 8 and any(q.t(x, y) != q.t(y, x) for x, y in product(q.elements, repeat=2))


def test_unit_law_and_trivial_and_join_preservation():
    with pytest.raises(UnitLaw):
        validate_quantale([[1, 1], [0, 1]], [[0, 0], [0, 0]], 1)
    with pytest.raises(Trivial):
        validate_quantale([[1]], [[0]], 0)
    assert validate_quantale([[1]], [[0]], 0, allow_trivial=True).trivial
    # ⊥ is not absorbing here
    leq = [[a <= b for b in range(3)] for a in range(3)]
    with pytest.raises((NotJoinPreserving, UnitLaw)):
        validate_quantale(leq, [[1, 1, 1], [1, 1, 1], [1, 1, 2]], 2)


# ---------------------------------------------------------------- internal hom


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_hom_matches_search_oracle(q):
    for u, v in product(q.elements, repeat=2):
        assert internal_hom(q, u, v) == hom_by_search(q.leq, q.tensor, u, v)


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_hom_adjunction_exhaustive(q):
    for u, v, w in product(q.elements, repeat=3):
        assert q.le(q.t(u, w), v) == q.le(w, q.h(u, v))


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_hom_variance(q):
    for u, v, w in product(q.elements, repeat=3):
        if q.le(v, w):
            assert q.le(q.h(u, v), q.h(u, w))
            assert q.le(q.h(w, u), q.h(v, u))


def test_two_hom_values():
    q = two()
    assert internal_hom(q, 1, 0) == 0
    assert internal_hom(q, 0, 0) == 1


def test_capped_chain_hom_is_truncated_difference():
    q = capped_chain(4)
    assert internal_hom(q, 1, 3) == 2
    assert internal_hom(q, 3, 1) == 0
    for u, v in product(q.elements, repeat=2):
        assert q.h(u, v) == max(v - u, 0)


@given(st.sampled_from(QS), st.data())
def test_hom_from_unit_is_identity(q, data):
    v = data.draw(st.integers(0, q.n - 1))
    assert q.h(q.unit, v) == v


# ---------------------------------------------------------------- morphisms


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_unit_inclusion_is_strong(q):
    assert classify_morphism(unit_inclusion(q)) == "strong"


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_unit_test_is_lax(q):
    assert classify_morphism(unit_test(q)) in ("lax", "strong")


def test_unit_test_strictly_lax_on_boolean_frame():
    # {0} ∨ {1} = ⊤ is sent to 1 while both joinands go to 0
    assert classify_morphism(unit_test(powerset_frame(2))) == "lax"
    # on a chain with k = ⊤ the test preserves joins
    assert classify_morphism(unit_test(capped_chain(4))) == "strong"


def test_support_test_depends_on_zero_divisors():
    ext = extended_capped_chain(3)
    assert not has_zero_divisors(ext)
    assert classify_morphism(support_test(ext)) == "strong"
    cap = capped_chain(4)
    assert has_zero_divisors(cap)
    assert classify_morphism(support_test(cap)) == "neither"


def test_non_monotone_map_reported():
    q = two()
    with pytest.raises(NotMonotone):
        classify_morphism(QuantaleMorphism(q, q, (1, 0)))


# ---------------------------------------------------------------- monads


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_identity_monad(q):
    T = tuple(q.elements)
    rep = check_lax_monoidal_monad(q, T)
    assert rep.ok and rep.inflationary
    fp = fixed_point_quantale(q, T)
    assert fp.quantale.tensor == q.tensor
    assert fp.projection == T


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_constant_top_monad(q):
    T = (q.top,) * q.n
    rep = check_lax_monoidal_monad(q, T)
    assert (rep.monotone, rep.unit, rep.tensor, rep.idempotent) == (True, True, True, True)
    fp = fixed_point_quantale(q, T)
    assert fp.quantale.n == 1 and fp.quantale.trivial


def test_square_monad_on_two_and_capped_chain():
    q = two()
    assert check_lax_monoidal_monad(q, [q.t(x, x) for x in q.elements]).ok
    c = capped_chain(4)
    rep = check_lax_monoidal_monad(c, [c.t(x, x) for x in c.elements])
    assert not rep.idempotent
    assert rep.witness["idempotent"] == (1,)


def test_non_inflationary_monad_refused():
    q = two()
    T = (0, 0)
    rep = check_lax_monoidal_monad(q, T)
    assert not rep.unit
    with pytest.raises(NotAMonad):
        fixed_point_quantale(q, T)


def test_isbell_nucleus_on_day_quantale_of_es_monoid_gives_boolean_algebra():
    day = day_quantale(es_monoid())
    amb = day.ambient
    base = es_monoid().cat
    hq = underlying_quantale(amb.m)
    T = [day.presheaves.index(isbell_T(base, j)) for j in day.presheaves]
    fp = fixed_point_quantale(hq, T)
    assert fp.quantale.n == 4
    assert order_isomorphic(fp.quantale.leq, powerset_frame(2).leq)


@given(st.sampled_from(QS), st.data())
def test_projection_laws_for_join_closure_monads(q, data):
    # x ↦ x ∨ c is inflationary and idempotent; keep the draws where it is also lax monoidal
    c = data.draw(st.integers(0, q.n - 1))
    T = tuple(q.join[x][c] for x in q.elements)
    rep = check_lax_monoidal_monad(q, T)
    if not (rep.ok and rep.inflationary):
        return
    fp = fixed_point_quantale(q, T)
    pos = {x: i for i, x in enumerate(fp.carrier)}
    for x in fp.carrier:
        assert fp.projection[x] == pos[x]
    for x in q.elements:
        assert q.le(x, fp.carrier[fp.projection[x]])
    for x, y in product(q.elements, repeat=2):
        assert fp.quantale.t(fp.projection[x], fp.projection[y]) == fp.projection[q.t(x, y)]


# ---------------------------------------------------------------- V-quantales


@pytest.mark.parametrize("q", QS, ids=lambda q: repr(q))
def test_quantale_over_itself_is_vquantale(q):
    rep = vquantale_report(quantale_as_monoidal(q))
    assert rep.separated and rep.cocomplete and rep.residuals and rep.is_vquantale


def test_discrete_monoid_is_not_vquantale():
    rep = vquantale_report(es_monoid())
    assert not rep.cocomplete and not rep.is_vquantale


@pytest.mark.parametrize("mon", ordered_monoids(2), ids=str)
def test_day_quantales_of_small_monoids_are_vquantales(mon):
    le, m, u = mon
    day = day_quantale(monoid_vcat(TWO(), le, m, u))
    assert vquantale_report(day.ambient.m).is_vquantale
