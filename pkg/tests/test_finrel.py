import numpy as np
import pytest
from hypothesis import given, strategies as st

from modules.errors import CarrierMismatchError, FactorStructureError
from modules.finrel import (
    BACKWARD,
    FORWARD,
    FinRel,
    classify_relation,
    existential_projection,
    graph,
    inverse_image,
    is_left_unique,
    is_relation_preserving,
    monoidal_factorization,
    rel_compose,
    rel_curry,
    rel_identity,
    rel_tensor,
)
from modules.finset import FinFn, FinSet, product_map
from tests.strategies import finsets, functions, relations

A = FinSet.of("a", "b")
B = FinSet.of("0", "1")
C = FinSet.of("x", "y")
AB = FinSet.product(A, B)


def pictured_relation():
    return FinRel.from_pairs(AB, C, [("(a,0)", "x"), ("(a,0)", "y"), ("(a,1)", "y"), ("(b,1)", "x")])


def all_relations(dom, cod):
    n = dom.size * cod.size
    for bits in range(2 ** n):
        yield FinRel(dom, cod, np.array([(bits >> k) & 1 for k in range(n)], dtype=bool)
                     .reshape(dom.size, cod.size))


def test_compose_direct_expansion():
    r = FinRel.from_pairs(A, B, [("a", "0")])
    s = FinRel.from_pairs(B, C, [("0", "x"), ("0", "y")])
    assert sorted(rel_compose(r, s).pairs()) == [("a", "x"), ("a", "y")]
    with pytest.raises(CarrierMismatchError):
        rel_compose(s, r)


def test_kleisli_laws_on_small_carriers():
    rels = list(all_relations(B, B))
    for r in rels:
        assert rel_compose(rel_identity(B), r) == r
        assert rel_compose(r, rel_identity(B)) == r
    for r in rels:
        for s in rels:
            for t in rels[::3]:
                assert rel_compose(rel_compose(r, s), t) == rel_compose(r, rel_compose(s, t))


def test_tensor_units_and_absorption():
    assert rel_tensor(rel_identity(A), rel_identity(B)) == rel_identity(AB)
    assert rel_tensor(FinRel.full(A, B), FinRel.empty(B, C)).is_empty()


@given(st.data())
def test_tensor_is_bifunctorial(data):
    X1, X2, Y1, Y2, Z1, Z2 = (data.draw(finsets(2)) for _ in range(6))
    r = data.draw(relations(X1, Y1))
    r2 = data.draw(relations(Y1, Z1))
    s = data.draw(relations(X2, Y2))
    s2 = data.draw(relations(Y2, Z2))
    assert rel_tensor(rel_compose(r, r2), rel_compose(s, s2)) == \
        rel_compose(rel_tensor(r, s), rel_tensor(r2, s2))


def test_curry_pictured_relation():
    curried = rel_curry(pictured_relation(), FORWARD)
    assert curried.dom == A
    assert curried.cod == FinSet.product(B, C)
    assert sorted(curried.pairs()) == [
        ("a", "(0,x)"), ("a", "(0,y)"), ("a", "(1,y)"), ("b", "(1,x)"),
    ]


def test_curry_round_trips_every_relation():
    for r in all_relations(AB, C):
        assert rel_curry(rel_curry(r, FORWARD), BACKWARD) == r
    for r in all_relations(A, FinSet.product(B, C)):
        assert rel_curry(rel_curry(r, BACKWARD), FORWARD) == r


def test_curry_empty_and_errors():
    assert rel_curry(FinRel.empty(AB, C)).is_empty()
    with pytest.raises(FactorStructureError):
        rel_curry(FinRel.empty(A, C))
    with pytest.raises(ValueError):
        rel_curry(pictured_relation(), "sideways")


def test_classify_relation():
    f = FinFn.from_labels(A, C, {"a": "x", "b": "x"})
    assert classify_relation(graph(f)).function
    empty = classify_relation(FinRel.empty(A, C))
    assert empty.right_unique and not empty.left_total
    multi = FinRel.from_pairs(A, C, [("a", "x"), ("a", "y")])
    assert not classify_relation(multi).right_unique


def test_inverse_image():
    assert inverse_image(FinFn.identity(A)) == rel_identity(A)
    constant = inverse_image(FinFn.constant(B, FinSet.one_point()))
    assert sorted(constant.pairs()) == [("*", "0"), ("*", "1")]
    l = FinFn(FinSet.range(3), FinSet.range(2), (0, 0, 1))
    assert sorted(inverse_image(l).pairs()) == [("0", "0"), ("0", "1"), ("1", "2")]


@given(st.data())
def test_inverse_image_flags_follow_the_function(data):
    dom, cod = data.draw(finsets()), data.draw(finsets())
    l = data.draw(functions(dom, cod))
    flags = classify_relation(inverse_image(l))
    assert flags.left_total == (len(l.image()) == cod.size)
    assert flags.right_unique == (len(l.image()) == dom.size)
    assert is_left_unique(inverse_image(l))


@given(st.data())
def test_tensor_preserves_relation_flags(data):
    X1, X2, Y1, Y2 = (data.draw(finsets(2)) for _ in range(4))
    r = data.draw(relations(X1, Y1))
    s = data.draw(relations(X2, Y2))
    fr, fs, ft = classify_relation(r), classify_relation(s), classify_relation(rel_tensor(r, s))
    if fr.right_unique and fs.right_unique:
        assert ft.right_unique
    if fr.left_total and fs.left_total:
        assert ft.left_total


@given(st.data())
def test_graph_of_product_is_tensor_of_graphs(data):
    X1, X2, Y1, Y2 = (data.draw(finsets()) for _ in range(4))
    f1 = data.draw(functions(X1, Y1))
    f2 = data.draw(functions(X2, Y2))
    assert graph(product_map(f1, f2)) == rel_tensor(graph(f1), graph(f2))


def test_relation_preserving():
    order = FinRel.from_pairs(B, B, [("0", "0"), ("0", "1"), ("1", "1")])
    assert is_relation_preserving(FinFn.identity(B), order, order)
    assert not is_relation_preserving(FinFn(B, B, (1, 0)), order, order)


def test_factorization_recovers_nonempty_components():
    for a in all_relations(A, B):
        if a.is_empty():
            continue
        for b in list(all_relations(B, C))[1::2]:
            if b.is_empty():
                continue
            components = monoidal_factorization(rel_tensor(a, b))
            assert components == [a, b]


def test_pictured_relation_does_not_factor():
    one = FinSet.one_point()
    extended = FinRel(AB, FinSet.product(C, one), pictured_relation().incidence)
    assert monoidal_factorization(extended) is None
    projected = existential_projection(extended, 0)
    assert sorted(projected.pairs()) == [("a", "x"), ("a", "y"), ("b", "x")]


def test_empty_relation_factors_into_empty_components():
    m = FinRel.empty(AB, FinSet.product(C, B))
    components = monoidal_factorization(m)
    assert [c.is_empty() for c in components] == [True, True]
    assert components[0].dom == A and components[1].cod == B


def test_factorization_needs_factor_structure():
    with pytest.raises(FactorStructureError):
        monoidal_factorization(FinRel.empty(A, C))
    with pytest.raises(FactorStructureError):
        monoidal_factorization(FinRel.empty(AB, FinSet.product(A, B, C)))
