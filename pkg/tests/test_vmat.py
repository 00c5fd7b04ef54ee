from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import QUANTALES, composable_triples, relations
from oracles import bool_matmul
from qlab.corpus import TWO, monoid_vcat, ordered_monoids, small_vcategories
from qlab.errors import DimensionMismatch, NotLax, QuantaleMismatch
from qlab.quantale import QuantaleMorphism, capped_chain, morphism_from, two, unit_test
from qlab.vcat import underlying_order
from qlab.vmat import (VRelation, block_splits, change_of_base, compose, from_function, identity, involution,
                       join, kleisli_compose_eval, lift_list_eval, list_unit_op, pointwise_le_via_hom)


@given(relations())
def test_identity_laws(r):
    q = r.quantale
    assert compose(r, identity(q, r.dst_size)) == r
    assert compose(identity(q, r.src_size), r) == r


@given(composable_triples())
def test_composition_is_associative(t):
    r, s, u = t
    assert compose(compose(r, s), u) == compose(r, compose(s, u))


def test_boolean_composition_matches_matrix_product():
    q = two()
    rels = [VRelation.of(q, [[bits >> 0 & 1, bits >> 1 & 1], [bits >> 2 & 1, bits >> 3 & 1]]) for bits in range(16)]
    for r, s in product(rels, repeat=2):
        assert [list(row) for row in compose(r, s).entries] == bool_matmul(r.entries, s.entries)


@given(st.sampled_from(QUANTALES), st.data())
def test_one_by_one_composition_is_tensor(q, data):
    a, b = data.draw(st.integers(0, q.n - 1)), data.draw(st.integers(0, q.n - 1))
    assert compose(VRelation.of(q, [[a]]), VRelation.of(q, [[b]])).entries == ((q.t(a, b),),)


def test_identity_shapes():
    q = two()
    assert identity(q, 1).entries == ((1,),)
    assert identity(q, 2).entries == ((1, 0), (0, 1))
    assert compose(identity(q, 2), identity(q, 2)) == identity(q, 2)


@given(relations())
def test_involution_is_an_involution(r):
    assert involution(involution(r)) == r
    q = r.quantale
    assert involution(identity(q, r.src_size)) == identity(q, r.src_size)


@given(composable_triples())
def test_involution_reverses_composition(t):
    r, s, _ = t
    assert involution(compose(r, s)) == compose(involution(s), involution(r))


@given(relations(), st.data())
def test_join_is_an_upper_bound(r, data):
    s = data.draw(relations(r.quantale, r.src_size, r.dst_size))
    j = join(r, s)
    assert r <= j and s <= j
    assert pointwise_le_via_hom(r, j)


def test_graphs():
    q = two()
    assert from_function(q, [0, 1, 2], 3) == identity(q, 3)
    assert from_function(q, [1, 1, 1], 2).entries == ((0, 1), (0, 1), (0, 1))
    for f, g in product(product(range(3), repeat=3), repeat=2):
        gf = [g[f[x]] for x in range(3)]
        assert compose(from_function(q, f, 3), from_function(q, g, 3)) == from_function(q, gf, 3)


def test_mismatches_raise():
    q = two()
    with pytest.raises(DimensionMismatch):
        compose(identity(q, 2), identity(q, 3))
    with pytest.raises(QuantaleMismatch):
        compose(identity(q, 2), identity(capped_chain(3), 2))
    with pytest.raises(DimensionMismatch):
        from_function(q, [0, 5], 2)


@pytest.mark.parametrize("q", QUANTALES, ids=repr)
def test_change_of_base_to_two_gives_underlying_order(q):
    g = unit_test(q)
    for x in small_vcategories(q):
        from qlab.colimits import hom_relation

        img = change_of_base(g, hom_relation(x))
        assert img.entries == tuple(tuple(int(b) for b in r) for r in underlying_order(x))


@given(composable_triples())
def test_change_of_base_identity_and_laxity(t):
    r, s, _ = t
    q = r.quantale
    ident = morphism_from(q, q, lambda v: v)
    assert change_of_base(ident, r) == r
    g = unit_test(q)
    assert compose(change_of_base(g, r), change_of_base(g, s)) <= change_of_base(g, compose(r, s))


def test_change_of_base_needs_lax_map():
    q = two()
    with pytest.raises(NotLax):
        change_of_base(QuantaleMorphism(q, q, (0, 0)), identity(q, 1))


# ---------------------------------------------------------------- lists


@given(relations(), st.data())
def test_lift_list_eval(r, data):
    q = r.quantale
    x = data.draw(st.integers(0, r.src_size - 1))
    y = data.draw(st.integers(0, r.dst_size - 1))
    assert lift_list_eval(r, (x,), (y,)) == r(x, y)
    assert lift_list_eval(r, (x, x), (y,)) == q.bottom
    assert lift_list_eval(r, (), ()) == q.unit


def test_block_splits_count():
    # ways to cut 3 items into 3 possibly empty consecutive blocks: C(5, 2)
    assert len(list(block_splits((1, 2, 3), 3))) == 10
    assert all(sum(map(len, s)) == 3 for s in block_splits((1, 2, 3), 3))


def _monoid_arrow(m):
    q = m.quantale

    def r(xs, y):
        return m.cat(m.prod(xs), y)

    return q, r


def _closure_oracle(m, xs, z):
    """Boolean Kleisli composite of the monoid structure with itself, by state closure."""
    le = underlying_order(m.cat)
    seen = {(0, m.unit)}
    todo = [(0, m.unit)]
    while todo:
        i, p = todo.pop()
        for j in range(i, len(xs) + 1):
            blk = m.prod(xs[i:j])
            for y in m.points:
                if le[blk][y]:
                    st_ = (j, m.m(p, y))
                    if st_ not in seen:
                        seen.add(st_)
                        todo.append(st_)
    return int(any(i == len(xs) and le[p][z] for i, p in seen))


@pytest.mark.parametrize("mon", ordered_monoids(2), ids=str)
def test_kleisli_composite_matches_closure_oracle(mon):
    le, mult, u = mon
    m = monoid_vcat(TWO(), le, mult, u)
    q, r = _monoid_arrow(m)
    for n in range(3):
        for xs in product(m.points, repeat=n):
            for z in m.points:
                assert kleisli_compose_eval(q, r, r, m.size, xs, z) == _closure_oracle(m, xs, z)


@pytest.mark.parametrize("mon", ordered_monoids(2), ids=str)
def test_kleisli_unit_law(mon):
    le, mult, u = mon
    m = monoid_vcat(TWO(), le, mult, u)
    q, r = _monoid_arrow(m)
    e = list_unit_op(q, m.size)
    for n in range(3):
        for xs in product(m.points, repeat=n):
            for z in m.points:
                assert kleisli_compose_eval(q, r, e, m.size, xs, z) == r(xs, z)


def _table(draw, q, src, dst, max_len=2):
    return {(xs, y): draw(st.integers(0, q.n - 1))
            for n in range(max_len + 1) for xs in product(range(src), repeat=n) for y in range(dst)}


def _as_fn(q, table):
    return lambda xs, y: table.get((tuple(xs), y), q.bottom)


@given(st.sampled_from([q for q in QUANTALES if q.n <= 3]), st.data())
def test_kleisli_precomposition_preserves_joins(q, data):
    # s ↦ s∘r sends pointwise joins of s to joins of composites
    r = _as_fn(q, _table(data.draw, q, 2, 2))
    t1, t2 = _table(data.draw, q, 2, 1), _table(data.draw, q, 2, 1)
    s1, s2 = _as_fn(q, t1), _as_fn(q, t2)
    s12 = lambda ys, z: q.join[s1(ys, z)][s2(ys, z)]
    for n in range(3):
        for xs in product(range(2), repeat=n):
            got = kleisli_compose_eval(q, r, s12, 2, xs, 0, max_blocks=2)
            a = kleisli_compose_eval(q, r, s1, 2, xs, 0, max_blocks=2)
            b = kleisli_compose_eval(q, r, s2, 2, xs, 0, max_blocks=2)
            assert got == q.join[a][b]


def test_kleisli_postcomposition_does_not_preserve_joins():
    q = two()
    s = lambda ys, z: int(len(ys) == 2)
    r1 = lambda xs, y: int(xs == ())
    r2 = lambda xs, y: int(xs == (0,))
    r12 = lambda xs, y: max(r1(xs, y), r2(xs, y))
    xs = (0,)
    a = kleisli_compose_eval(q, r1, s, 1, xs, 0, max_blocks=2)
    b = kleisli_compose_eval(q, r2, s, 1, xs, 0, max_blocks=2)
    assert (a, b) == (0, 0)
    assert kleisli_compose_eval(q, r12, s, 1, xs, 0, max_blocks=2) == 1


@given(composable_triples(), st.data())
def test_composition_distributes_over_joins(t, data):
    r, s, u = t
    q = r.quantale
    r2 = data.draw(relations(q, r.src_size, r.dst_size))
    s2 = data.draw(relations(q, s.src_size, s.dst_size))
    assert compose(join(r, r2), s) == join(compose(r, s), compose(r2, s))
    assert compose(r, join(s, s2)) == join(compose(r, s), compose(r, s2))


@given(relations(), st.data())
def test_pointwise_order_is_read_off_the_hom(r, data):
    s = data.draw(relations(r.quantale, r.src_size, r.dst_size))
    assert (r <= s) == pointwise_le_via_hom(r, s)
