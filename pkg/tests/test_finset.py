import pytest
from hypothesis import given, strategies as st

from modules.errors import CarrierMismatchError, FactorStructureError, InvalidStructureError
from modules.finset import (
    FinFn,
    FinSet,
    cartesian_structure,
    classify_morphism,
    code_map,
    compactness_flags,
    compose,
    compose_all,
    diagonal,
    enumerate_functions,
    exponential_transpose,
    extract_component,
    find_modular_retraction,
    find_retraction,
    invariance_via_pullback,
    is_inverse,
    is_product_morphism,
    missing_information_search,
    pair,
    product_map,
    projection,
    pullback,
    swap,
    terminal,
    transpose_is_constant,
)
from modules.search import CONSTRUCTION, Verdict
from tests.strategies import encoders, finsets, functions, product_encoders

B = FinSet.range(2)
SQUARE = FinSet.product(B, B)


def test_product_labels_and_order():
    P = FinSet.product(FinSet.of("0", "1"), FinSet.of("x", "y"))
    assert P.labels == ("(0,x)", "(0,y)", "(1,x)", "(1,y)")
    assert P.factor_shape == (2, 2)
    assert projection(P, 0).apply_label("(1,x)") == "1"
    assert projection(P, 1).apply_label("(1,x)") == "x"


def test_finset_rejects_bad_structure():
    with pytest.raises(InvalidStructureError):
        FinSet(())
    with pytest.raises(InvalidStructureError):
        FinSet.of("a", "a")
    with pytest.raises(InvalidStructureError):
        FinFn(B, B, (0, 2))
    with pytest.raises(FactorStructureError):
        B.require_factors()


def test_compose_order_and_mismatch():
    f = FinFn.from_labels(FinSet.of("a", "b"), B, {"a": "0", "b": "1"})
    g = terminal(B)
    composite = compose(f, g)
    assert composite.dom == f.dom and composite.cod == FinSet.one_point()
    assert set(composite.map) == {0}
    with pytest.raises(CarrierMismatchError):
        compose(g, f)


@given(st.data())
def test_compose_identity_and_associativity(data):
    A, C, D, E = (data.draw(finsets()) for _ in range(4))
    f = data.draw(functions(A, C))
    g = data.draw(functions(C, D))
    h = data.draw(functions(D, E))
    assert compose(FinFn.identity(A), f) == f
    assert compose(f, FinFn.identity(C)) == f
    assert compose(compose(f, g), h) == compose(f, compose(g, h)) == compose_all(f, g, h)


def test_cartesian_structure_pairing():
    structure = cartesian_structure([B, FinSet.range(3)])
    p1, p2 = structure.projections
    assert structure.product.size == 6
    assert structure.pair([p1, p2]) == FinFn.identity(structure.product)
    assert diagonal(B) == pair([FinFn.identity(B), FinFn.identity(B)])
    assert terminal(B).cod == FinSet.one_point()


def test_pairing_needs_common_domain():
    with pytest.raises(CarrierMismatchError):
        pair([FinFn.identity(B), FinFn.identity(FinSet.range(3))])


def test_swap_is_an_involution():
    A, C = B, FinSet.range(3)
    assert compose(swap(A, C), swap(C, A)) == FinFn.identity(FinSet.product(A, C))
    assert is_inverse(swap(B, B), swap(B, B))


def test_universal_property_is_unique():
    C = FinSet.range(2)
    P = FinSet.product(B, B)
    for f1 in enumerate_functions(C, B):
        for f2 in enumerate_functions(C, B):
            matches = [
                u for u in enumerate_functions(C, P)
                if compose(u, projection(P, 0)) == f1 and compose(u, projection(P, 1)) == f2
            ]
            assert matches == [pair([f1, f2])]


def test_classify_morphism():
    assert classify_morphism(FinFn.identity(B)) == classify_morphism(swap(B, B))
    assert classify_morphism(FinFn.identity(B)).iso
    constant = FinFn.constant(B, B)
    assert not classify_morphism(constant).mono and not classify_morphism(constant).epi
    inclusion = FinFn(FinSet.range(1), B, (0,))
    cls = classify_morphism(inclusion)
    assert cls.mono and not cls.epi and not cls.iso


def test_find_retraction_examples():
    assert find_retraction(FinFn.identity(B)).witness == FinFn.identity(B)
    assert find_retraction(FinFn.constant(B, B)).status is Verdict.FAILS

    m = FinFn(B, FinSet.range(3), (0, 2))
    h = find_retraction(m).witness
    assert h.map[0] == 0 and h.map[2] == 1
    assert compose(m, h) == FinFn.identity(B)


def test_find_retraction_constructs_over_budget():
    A = FinSet.range(4)
    m = FinFn(A, FinSet.range(6), (5, 0, 3, 1))
    outcome = find_retraction(m, budget=10)
    assert outcome.found and outcome.path == CONSTRUCTION
    assert compose(m, outcome.witness) == FinFn.identity(A)


def test_is_inverse_rejects_non_surjection():
    inclusion = FinFn(FinSet.range(1), B, (0,))
    assert not is_inverse(inclusion, FinFn.constant(B, FinSet.range(1)))
    with pytest.raises(CarrierMismatchError):
        is_inverse(inclusion, inclusion)


def test_terminal_map_is_modular():
    one = FinSet.one_point()
    m = FinFn.constant(SQUARE, FinSet.product(one, one))
    witness = is_product_morphism(m)
    assert witness is not None
    assert all(component.cod == one for component in witness.components)
    assert transpose_is_constant(m, 0) and transpose_is_constant(m, 1)
    assert invariance_via_pullback(m, 0)


def test_swap_is_not_modular():
    beta = swap(B, B)
    assert is_product_morphism(beta) is None
    assert not transpose_is_constant(beta, 0)
    assert not invariance_via_pullback(beta, 0)


def test_modularity_needs_matching_factors():
    with pytest.raises(FactorStructureError):
        is_product_morphism(FinFn.identity(B))
    m = FinFn.constant(SQUARE, FinSet.product(B, B, B))
    with pytest.raises(FactorStructureError):
        find_modular_retraction(m)


@given(st.data())
def test_product_map_recovers_its_components(data):
    A1, A2, C1, C2 = (data.draw(finsets()) for _ in range(4))
    f1 = data.draw(functions(A1, C1))
    f2 = data.draw(functions(A2, C2))
    witness = is_product_morphism(product_map(f1, f2))
    assert witness is not None
    assert witness.components == (f1, f2)
    assert witness.product() == product_map(f1, f2)


@given(encoders())
def test_exponential_criteria_agree(m):
    modular = is_product_morphism(m) is not None
    for i in range(m.dom.n_factors):
        assert transpose_is_constant(m, i) == invariance_via_pullback(m, i)
    assert modular == all(transpose_is_constant(m, i) for i in range(m.dom.n_factors))


def test_criteria_agree_on_every_square_map():
    for m in enumerate_functions(SQUARE, SQUARE):
        modular = is_product_morphism(m) is not None
        constant = [transpose_is_constant(m, i) for i in range(2)]
        pulled = [invariance_via_pullback(m, i) for i in range(2)]
        assert constant == pulled
        assert modular == all(constant)


@given(product_encoders())
def test_components_factor_the_codes(m):
    witness = is_product_morphism(m)
    for i, component in enumerate(witness.components):
        assert code_map(m, i) == compose(projection(m.dom, i), component)
        assert extract_component(m, i, basepoint=1) == component


def test_exponential_transpose_of_swap():
    t = exponential_transpose(swap(B, B), 0)
    assert t.dom == B
    assert len(set(t.map)) == 2


def test_pullback_of_projection():
    p = projection(SQUARE, 0)
    P, first, second = pullback(p, p)
    assert P.size == 8
    assert compose(first, p) == compose(second, p)


def test_duplicate_has_a_modular_decoder():
    m = pair([FinFn.identity(SQUARE), FinFn.identity(SQUARE)])
    assert is_product_morphism(m) is None
    outcome = find_modular_retraction(m)
    assert outcome.found
    assert compose(m, outcome.witness.product()) == FinFn.identity(SQUARE)


def test_duplicate_copies_every_factor():
    Y = SQUARE
    m = pair([FinFn.identity(Y), FinFn.identity(Y)])
    matrix = missing_information_search(m)
    assert matrix.entry(0, 1) is Verdict.FAILS
    assert matrix.overall() is Verdict.FAILS
    h = matrix.witnesses[(0, 1)]
    assert compose(code_map(m, 0), h) == projection(Y, 1)


def test_constant_map_has_no_modular_decoder():
    m = FinFn.constant(SQUARE, SQUARE)
    assert find_modular_retraction(m).status is Verdict.FAILS


def test_missing_information_of_product_map():
    flip = FinFn(B, B, (1, 0))
    matrix = missing_information_search(product_map(flip, FinFn.identity(B)))
    assert matrix.entry(0, 1) is Verdict.HOLDS and matrix.entry(1, 0) is Verdict.HOLDS
    assert matrix.overall() is Verdict.HOLDS
    assert matrix.recoverable_factors(0) == []


def test_missing_information_single_factor_is_empty():
    P = FinSet.product(B)
    matrix = missing_information_search(FinFn.identity(P))
    assert matrix.entries == ((None,),)
    assert matrix.overall() is Verdict.HOLDS


def test_missing_information_over_budget_is_undecided():
    big = FinSet.range(4)
    Y = FinSet.product(big, big)
    m = pair([FinFn.identity(Y), FinFn.identity(Y)])
    matrix = missing_information_search(m, budget=10)
    assert matrix.entry(0, 1) is Verdict.UNDECIDED
    assert matrix.overall() is Verdict.UNDECIDED
    assert compactness_flags(m, matrix=matrix) == {0: None, 1: None}


def test_compactness_flags():
    duplicate = pair([FinFn.identity(SQUARE), FinFn.identity(SQUARE)])
    assert compactness_flags(duplicate) == {0: [1], 1: [0]}
    flip = FinFn(B, B, (1, 0))
    assert compactness_flags(product_map(flip, FinFn.identity(B))) == {0: [], 1: []}


@given(product_encoders(max_factors=2))
def test_modular_split_mono_has_modular_decoder(m):
    if find_retraction(m).found:
        assert find_modular_retraction(m).found
