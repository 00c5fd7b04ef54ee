from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import QUANTALES
from oracles import downsets
from qlab.colimits import cocomplete_any, cocomplete_check, complete_check
from qlab.corpus import TWO, partial_orders, small_vcategories
from qlab.errors import NotAFunctor, NotAssociative, ReflexivityFail, TransitivityFail, UnitFail
from qlab.quantale import capped_chain, extended_capped_chain, two
from qlab.vcat import (VFunctor, all_vfunctors, copresheaf_category, coyoneda, discrete, find_isomorphism,
                       from_order, functor_category, functor_order, is_copresheaf, is_presheaf, is_separated,
                       opposite, pair_index, presheaf_category, presheaf_hom, quantale_vcategory, support_order,
                       tensor, underlying_order, unit_K, validate_monoidal, validate_vcategory, validate_vfunctor,
                       yoneda)


def small_cats(max_q=4):
    for q in QUANTALES:
        if q.n <= max_q:
            for x in small_vcategories(q):
                yield q, x


# ---------------------------------------------------------------- validation


@pytest.mark.parametrize("q", QUANTALES, ids=repr)
def test_quantale_is_a_vcategory(q):
    x = validate_vcategory(q, q.hom)
    assert x.size == q.n


def test_preorders_validate_over_two():
    for n in range(1, 4):
        for le in partial_orders(n):
            x = validate_vcategory(TWO(), [[int(b) for b in r] for r in le])
            assert underlying_order(x) == le


def test_non_transitive_relation_fails_with_witness():
    with pytest.raises(TransitivityFail) as e:
        validate_vcategory(two(), [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert e.value.witness == (0, 1, 2)
    with pytest.raises(ReflexivityFail):
        validate_vcategory(two(), [[0]])


def test_triangle_inequality_violation_in_capped_metric():
    q = capped_chain(4)
    # d(0,1) = d(1,2) = 1 but d(0,2) = 3 > 1 + 1
    hom = [[0, 1, 3], [1, 0, 1], [3, 1, 0]]
    with pytest.raises(TransitivityFail) as e:
        validate_vcategory(q, hom)
    x, y, z = e.value.witness
    assert not q.le(q.t(hom[x][y], hom[y][z]), hom[x][z])


def test_functor_and_monoidal_validation():
    q = two()
    chain = from_order(q, [[1, 1], [0, 1]])
    with pytest.raises(NotAFunctor):
        validate_vfunctor(chain, chain, (1, 0))
    assert validate_vfunctor(chain, chain, (0, 1)).fully_faithful
    d = discrete(q, 2)
    with pytest.raises(UnitFail):
        validate_monoidal(d, ((0, 0), (0, 0)), 0)
    with pytest.raises(NotAssociative):
        validate_monoidal(discrete(q, 3), ((0, 1, 2), (1, 2, 0), (2, 2, 2)), 0)


# ---------------------------------------------------------------- constructions


@pytest.mark.parametrize("q,x", list(small_cats()), ids=lambda v: repr(v))
def test_opposite_and_unit_tensor(q, x):
    assert opposite(opposite(x)).hom == x.hom
    xk = tensor(x, unit_K(q))
    assert find_isomorphism(xk, x) is not None
    # the projection (x, *) ↦ x is itself an isomorphism
    proj = [p for p in x.points]
    assert all(xk(pair_index(1, a, 0), pair_index(1, b, 0)) == x(a, b) for a, b in product(proj, repeat=2))


def test_tensor_over_capped_chain_is_taxicab():
    q = capped_chain(6)
    line = validate_vcategory(q, [[abs(a - b) for b in range(3)] for a in range(3)])
    sq = tensor(line, line)
    for (a, b), (c, d) in product(product(range(3), repeat=2), repeat=2):
        assert sq(pair_index(3, a, b), pair_index(3, c, d)) == min(abs(a - c) + abs(b - d), 5)


@pytest.mark.parametrize("q", QUANTALES, ids=repr)
def test_functor_category_from_unit_is_the_target(q):
    y = quantale_vcategory(q) if q.n <= 3 else discrete(q, 2)
    fc, fs = functor_category(unit_K(q), y)
    assert len(fs) == y.size
    assert find_isomorphism(fc, y) is not None


@pytest.mark.parametrize("q,x", list(small_cats(3)), ids=lambda v: repr(v))
def test_functors_into_v_are_copresheaves(q, x):
    _, fs = functor_category(x, quantale_vcategory(q))
    assert sorted(fs) == sorted(copresheaf_category(x).carrier)


def test_hom_tensor_bijection_counts():
    q = two()
    cats = [discrete(q, 2), from_order(q, [[1, 1], [0, 1]]), validate_vcategory(q, [[1, 1], [1, 1]])]
    for x, y, z in product(cats, repeat=3):
        lhs = len(all_vfunctors(tensor(x, y), z))
        yz, _ = functor_category(y, z)
        assert lhs == len(all_vfunctors(x, yz))


# ---------------------------------------------------------------- presheaves


def test_presheaves_on_two_chain_are_down_sets():
    le = [[True, True], [False, True]]
    x = from_order(two(), le)
    d = presheaf_category(x)
    want = sorted(tuple(int(p in s) for p in range(2)) for s in downsets(le))
    assert sorted(d.carrier) == want
    assert len(d.carrier) == 3
    # the order on presheaves is inclusion, a 3-chain
    assert sum(d.cat(a, b) for a, b in product(range(3), repeat=2)) == 6


@pytest.mark.parametrize("q", QUANTALES, ids=repr)
def test_presheaves_on_unit_are_v(q):
    d = presheaf_category(unit_K(q))
    assert find_isomorphism(d.cat, quantale_vcategory(q)) is not None


@pytest.mark.parametrize("q,x", [(q, x) for q, x in small_cats(3) if x.size <= 2], ids=lambda v: repr(v))
def test_presheaf_categories_are_complete_and_cocomplete(q, x):
    for pc in (presheaf_category(x), copresheaf_category(x)):
        assert cocomplete_check(pc.cat).ok
        assert complete_check(pc.cat).ok


@pytest.mark.parametrize("q,x", [(q, x) for q, x in small_cats(3) if x.size == 3], ids=lambda v: repr(v))
def test_larger_presheaf_categories_have_copowers_and_joins(q, x):
    # the presheaf route would exceed the cell cap here
    for pc in (presheaf_category(x), copresheaf_category(x)):
        assert cocomplete_any(pc.cat).ok


@pytest.mark.parametrize("q,x", list(small_cats()), ids=lambda v: repr(v))
def test_enumerated_vectors_satisfy_their_laws(q, x):
    d, u = presheaf_category(x), copresheaf_category(x)
    assert all(is_presheaf(x, j) for j in d.carrier)
    assert all(is_copresheaf(x, l) for l in u.carrier)
    # nothing missing: count by brute force over all vectors
    allv = list(product(q.elements, repeat=x.size))
    assert len(d.carrier) == sum(is_presheaf(x, v) for v in allv)
    assert len(u.carrier) == sum(is_copresheaf(x, v) for v in allv)


@pytest.mark.parametrize("q,x", list(small_cats()), ids=lambda v: repr(v))
def test_yoneda_lemma(q, x):
    d = presheaf_category(x)
    y = yoneda(x, d)
    for p in x.points:
        for i, j in enumerate(d.carrier):
            assert d.cat(y(p), i) == j[p]
    assert y.fully_faithful
    assert (len(set(y.map)) == x.size) == is_separated(x)


@pytest.mark.parametrize("q,x", list(small_cats()), ids=lambda v: repr(v))
def test_coyoneda_lemma(q, x):
    u = copresheaf_category(x)
    cy = coyoneda(x, u)
    for p in x.points:
        for i, l in enumerate(u.carrier):
            assert u.cat(i, cy(p)) == l[p]


def test_yoneda_on_antichain():
    x = discrete(two(), 2)
    d = presheaf_category(x)
    y = yoneda(x, d)
    assert d.carrier[y(0)] == (1, 0) and d.carrier[y(1)] == (0, 1)
    assert len(d.carrier) == 4


# ---------------------------------------------------------------- orders


def test_orders_over_two_are_the_hom():
    for x in small_vcategories(two()):
        assert underlying_order(x) == tuple(tuple(bool(v) for v in r) for r in x.hom)
        assert support_order(x) == underlying_order(x)


@pytest.mark.parametrize("q", QUANTALES, ids=repr)
def test_underlying_order_of_v_is_its_lattice_order(q):
    assert underlying_order(quantale_vcategory(q)) == q.leq


def test_functor_order_over_two_is_pointwise():
    q = two()
    c = from_order(q, [[a <= b for b in range(3)] for a in range(3)])
    fs = [VFunctor(c, c, f) for f in all_vfunctors(c, c)]
    for f, g in product(fs, repeat=2):
        v, le = functor_order(f, g)
        assert le == all(f(p) <= g(p) for p in c.points)
    assert all(functor_order(f, f)[1] for f in fs)


@given(st.sampled_from(QUANTALES), st.data())
def test_presheaf_hom_is_meet_of_homs(q, data):
    j = [data.draw(st.integers(0, q.n - 1)) for _ in range(3)]
    k = [data.draw(st.integers(0, q.n - 1)) for _ in range(3)]
    v = presheaf_hom(q, j, k)
    assert all(q.le(v, q.h(a, b)) for a, b in zip(j, k))
    assert q.le(q.unit, v) == all(q.le(a, b) for a, b in zip(j, k))


# ---------------------------------------------------------------- further laws


@pytest.mark.parametrize("q,x", list(small_cats()), ids=lambda v: repr(v))
def test_rows_are_copresheaves_and_columns_presheaves(q, x):
    for p in x.points:
        assert is_copresheaf(x, x.hom[p])
        assert is_presheaf(x, [x(t, p) for t in x.points])


@pytest.mark.parametrize("q,x", [(q, x) for q, x in small_cats(3) if x.size <= 2], ids=lambda v: repr(v))
def test_unit_separates_functors(q, x):
    points = all_vfunctors(unit_K(q), x)
    assert sorted(z[0] for z in points) == list(x.points)
    fs = all_vfunctors(x, x)
    for f, g in product(fs, repeat=2):
        same_on_points = all(f[z[0]] == g[z[0]] for z in points)
        assert same_on_points == (f == g)


def _line(q, cap):
    return validate_vcategory(q, [[min(abs(a - b), cap) for b in range(3)] for a in range(3)])


def _is_product(big, small):
    return all(big[pair_index(3, a, b)][pair_index(3, c, d)] == (small[a][c] and small[b][d])
               for (a, b), (c, d) in product(product(range(3), repeat=2), repeat=2))


def test_underlying_order_of_tensor_is_product_order():
    line = _line(capped_chain(4), 3)
    for x in (line, opposite(line)):
        assert _is_product(underlying_order(tensor(x, x)), underlying_order(x))


def test_support_order_of_tensor_needs_no_zero_divisors():
    line = _line(extended_capped_chain(3), 2)
    assert _is_product(support_order(tensor(line, line)), support_order(line))
    # in the capped chain 2 + 2 hits the cap, which is the bottom
    capped = _line(capped_chain(4), 2)
    assert not _is_product(support_order(tensor(capped, capped)), support_order(capped))
