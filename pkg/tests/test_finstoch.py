from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from modules.errors import CarrierMismatchError, FactorStructureError, InvalidStructureError
from modules.finset import FinFn, FinSet, compose
from modules.finstoch import (
    FLOAT,
    FinDist,
    StochMap,
    check_cond_independence,
    code_kernel,
    codes_independent_given_factors,
    comonoid_laws,
    copy,
    copy_is_natural,
    delete,
    delete_is_natural,
    has_point_mass_rows,
    is_componentwise,
    is_deterministic,
    is_measure_preserving,
    is_modular_stoch,
    is_mono_stoch,
    is_projectable,
    markov_generators,
    marginalize,
    marginals_witness,
    parse_probability,
    point_mass,
    prior_joint,
    pushforward,
    regroup,
    stoch_compose,
    stoch_tensor,
    uniform,
)
from tests.strategies import finsets, functions, kernels

HALF = Fraction(1, 2)
B = FinSet.range(2)
ONE = FinSet.one_point()
SQUARE = FinSet.product(B, B)


def copy_first_factor():
    """Deterministic Y1×Y2 -> Z1×Z2 writing y1 into both codes."""
    return StochMap.from_function(FinFn(SQUARE, SQUARE, tuple(SQUARE.flat((c[0], c[0])) for c in SQUARE.coords_table)))


def test_parse_probability():
    assert parse_probability("3/4") == Fraction(3, 4)
    assert parse_probability("0.25") == Fraction(1, 4)
    assert parse_probability(0.25) == Fraction(1, 4)
    assert parse_probability("1/3", FLOAT) == pytest.approx(1 / 3)
    with pytest.raises(InvalidStructureError):
        parse_probability("half")
    with pytest.raises(InvalidStructureError):
        parse_probability(True)


def test_decimal_strings_read_like_decimal_numbers():
    assert parse_probability("0.1428571") == parse_probability(0.1428571) == Fraction(1, 7)
    assert parse_probability(" 3/7 ") == Fraction(3, 7)
    assert parse_probability("1428571/10000000") == Fraction(1428571, 10 ** 7)
    sevenths = StochMap.from_rows(ONE, FinSet.range(7), [["0.1428571"] * 7])
    assert list(sevenths.rows[0]) == [Fraction(1, 7)] * 7
    assert sevenths == StochMap.from_rows(ONE, FinSet.range(7), [[0.1428571] * 7])


def test_rows_must_be_stochastic():
    with pytest.raises(InvalidStructureError):
        StochMap(ONE, B, np.array([[HALF, Fraction(1, 4)]], dtype=object))
    with pytest.raises(InvalidStructureError):
        StochMap(ONE, B, np.array([[Fraction(3, 2), Fraction(-1, 2)]], dtype=object))
    with pytest.raises(InvalidStructureError):
        StochMap(B, B, np.array([[HALF, HALF]], dtype=object))


def test_float_rows_are_clamped_within_tolerance():
    m = StochMap(ONE, B, np.array([[1.0 + 1e-12, -1e-12]]), tol=1e-9)
    assert not m.exact
    assert m.rows[0, 1] == 0.0


def test_compose_with_identity_and_uniform():
    p = uniform(B, B)
    assert stoch_compose(StochMap.identity(B), p) == p
    assert stoch_compose(p, p).rows.tolist() == [[HALF, HALF], [HALF, HALF]]
    with pytest.raises(CarrierMismatchError):
        stoch_compose(p, uniform(B, FinSet.range(3)))


def test_mixed_arithmetic_goes_to_float():
    exact = uniform(B, B)
    approx = StochMap(B, B, np.array([[0.5, 0.5], [0.5, 0.5]]), tol=1e-6)
    composite = stoch_compose(exact, approx)
    assert not composite.exact
    assert composite.tol == 1e-6
    assert composite == exact


@given(st.data())
def test_compose_is_associative_in_exact_arithmetic(data):
    A, C, D, E = (data.draw(finsets()) for _ in range(4))
    p, q, r = data.draw(kernels(A, C)), data.draw(kernels(C, D)), data.draw(kernels(D, E))
    lhs = stoch_compose(stoch_compose(p, q), r)
    rhs = stoch_compose(p, stoch_compose(q, r))
    assert lhs.exact
    assert np.array_equal(lhs.rows, rhs.rows)


@given(st.data())
def test_functions_embed_as_deterministic_kernels(data):
    A, C, D = (data.draw(finsets()) for _ in range(3))
    f, g = data.draw(functions(A, C)), data.draw(functions(C, D))
    embedded = stoch_compose(StochMap.from_function(f), StochMap.from_function(g))
    assert embedded == StochMap.from_function(compose(f, g))
    assert is_deterministic(embedded)


def test_comonoid_laws():
    for size in (1, 2, 3):
        laws = comonoid_laws(FinSet.range(size))
        assert laws == {"counit": True, "coassociativity": True, "cocommutativity": True}


def test_markov_generators_shapes():
    gens = markov_generators(B)
    assert gens.copy.cod == SQUARE
    assert gens.delete.cod == ONE
    assert gens.copy.rows[1].tolist() == [0, 0, 0, 1]
    assert stoch_compose(gens.swap, gens.swap) == StochMap.identity(SQUARE)


@given(st.data())
def test_delete_is_natural_for_every_kernel(data):
    A, C = data.draw(finsets()), data.draw(finsets())
    assert delete_is_natural(data.draw(kernels(A, C)))


@given(st.data())
def test_determinism_characterizations_agree(data):
    A, C = data.draw(finsets()), data.draw(finsets())
    k = data.draw(kernels(A, C))
    assert copy_is_natural(k) == has_point_mass_rows(k) == is_deterministic(k)


def test_fair_coin_is_not_deterministic():
    coin = uniform(B)
    assert not is_deterministic(coin)
    assert not copy_is_natural(coin)
    assert is_deterministic(point_mass(B, 1))


def test_float_determinism_uses_point_masses():
    near_coin = StochMap(ONE, B, np.array([[0.89, 0.11]]), 0.1)
    assert copy_is_natural(near_coin)
    assert not has_point_mass_rows(near_coin)
    assert not is_deterministic(near_coin)
    assert is_deterministic(StochMap(ONE, B, np.array([[0.95, 0.05]]), 0.1))
    assert not is_deterministic(StochMap(ONE, B, np.array([[0.95, 0.05]])))


def test_marginalize():
    assert marginalize(uniform(SQUARE), [0, 1]) == uniform(SQUARE)
    at_01 = point_mass(SQUARE, SQUARE.flat((0, 1)))
    assert marginalize(at_01, [0]).rows.tolist() == [[1, 0]]
    assert marginalize(at_01, [1]).rows.tolist() == [[0, 1]]
    _, correlated = marginals_witness()
    assert marginalize(correlated, [1]) == uniform(B)
    assert marginalize(correlated, []).cod == ONE
    with pytest.raises(FactorStructureError):
        marginalize(uniform(B), [0])
    with pytest.raises(FactorStructureError):
        marginalize(correlated, [2])


def test_marginalize_matches_deleting_the_dropped_factor():
    _, correlated = marginals_witness()
    dropped = stoch_compose(correlated, stoch_tensor(StochMap.identity(B), delete(B)))
    assert np.array_equal(dropped.rows, marginalize(correlated, [0]).rows)


def test_marginals_witness_is_not_determined_by_marginals():
    independent, correlated = marginals_witness()
    for joint in (independent, correlated):
        assert marginalize(joint, [0]) == uniform(B)
        assert marginalize(joint, [1]) == uniform(B)
    assert independent.rows[0, 0] == Fraction(1, 4)
    assert correlated.rows[0, 0] == HALF
    assert independent != correlated
    assert is_projectable(independent) and not is_projectable(correlated)


def test_projectable_examples():
    assert is_projectable(copy_first_factor())
    _, correlated = marginals_witness()
    ignoring = stoch_compose(delete(SQUARE), correlated)
    assert not is_projectable(ignoring)
    with pytest.raises(FactorStructureError):
        is_projectable(uniform(B))


@given(st.data())
def test_copied_tensor_is_projectable(data):
    Y = data.draw(finsets())
    m1 = data.draw(kernels(Y, data.draw(finsets())))
    m2 = data.draw(kernels(Y, data.draw(finsets())))
    m = stoch_compose(copy(Y), stoch_tensor(m1, m2))
    assert is_projectable(m)
    assert marginalize(m, [0]) == m1


def test_conditional_independence_examples():
    A = FinSet.range(2)
    h, g, k = uniform(B, A), uniform(FinSet.range(3), A), point_mass(B, 0)
    k = stoch_compose(delete(A), k)
    f = stoch_compose(copy(A, 3), stoch_tensor(h, g, k))
    assert check_cond_independence(f)

    copied = StochMap(ONE, FinSet.product(B, ONE, B),
                      np.array([[HALF, Fraction(0), Fraction(0), HALF]], dtype=object))
    assert not check_cond_independence(copied)

    singleton_y = StochMap(ONE, FinSet.product(B, B, ONE),
                           np.array([[Fraction(1, 4)] * 4], dtype=object))
    assert check_cond_independence(singleton_y)
    with pytest.raises(FactorStructureError):
        check_cond_independence(uniform(SQUARE))


def test_conditional_independence_on_a_rare_state():
    cube = FinSet.product(B, B, B)
    row = np.zeros(8)
    row[cube.flat((0, 0, 0))] = 1 - 1e-5
    row[cube.flat((0, 1, 0))] = 5e-6
    row[cube.flat((1, 1, 1))] = 5e-6
    assert not check_cond_independence(StochMap(ONE, cube, np.array([row]), 1e-9))

    row = np.zeros(8)
    row[cube.flat((0, 0, 0))] = 1 - 1e-5
    row[cube.flat((0, 1, 0))] = 1e-5
    assert check_cond_independence(StochMap(ONE, cube, np.array([row]), 1e-9))

    row = np.zeros(8)
    row[cube.flat((0, 0, 0))] = 1 - 1e-10
    row[cube.flat((1, 1, 1))] = 1e-10
    assert check_cond_independence(StochMap(ONE, cube, np.array([row]), 1e-9))


def test_regroup_layout():
    m = copy_first_factor()
    r = regroup(m, 1)
    assert r.cod.factors == (B, SQUARE, B)
    y = SQUARE.flat((1, 0))
    assert r.rows[y, r.cod.flat((1, y, 1))] == 1
    joint = prior_joint(m, 0)
    assert joint.dom == ONE
    assert sum(joint.rows[0]) == 1


@given(st.data())
def test_projectable_iff_codes_independent_given_factors(data):
    n = data.draw(st.integers(1, 3))
    Y = FinSet.product(*(data.draw(finsets(2)) for _ in range(n)))
    Z = FinSet.product(*(data.draw(finsets(2)) for _ in range(n)))
    m = data.draw(kernels(Y, Z))
    assert is_projectable(m) == codes_independent_given_factors(m)


def test_modularity_examples():
    m = stoch_tensor(uniform(B, B), uniform(B, B))
    assert is_modular_stoch(m)
    assert is_componentwise(m) == [uniform(B, B), uniform(B, B)]

    broken = copy_first_factor()
    assert not is_modular_stoch(broken)
    assert is_componentwise(broken) is None

    single = FinSet.product(B)
    assert is_modular_stoch(StochMap.identity(single))


def test_constant_kernel_has_constant_components():
    _, correlated = marginals_witness()
    m = stoch_compose(delete(SQUARE), correlated)
    components = is_componentwise(m)
    assert components == [uniform(B, B), uniform(B, B)]
    with pytest.raises(FactorStructureError):
        is_modular_stoch(uniform(B, B))


@given(st.data())
def test_componentwise_tensor_recovers_components(data):
    Y1, Y2, Z1, Z2 = (data.draw(finsets()) for _ in range(4))
    m11, m22 = data.draw(kernels(Y1, Z1)), data.draw(kernels(Y2, Z2))
    m = stoch_tensor(m11, m22)
    assert is_componentwise(m) == [m11, m22]
    assert is_modular_stoch(m)


@given(st.data())
def test_componentwise_and_modular_coincide(data):
    Y = FinSet.product(data.draw(finsets(2)), data.draw(finsets(2)))
    Z = FinSet.product(data.draw(finsets(2)), data.draw(finsets(2)))
    m = data.draw(kernels(Y, Z))
    assert (is_componentwise(m) is not None) == is_modular_stoch(m)


def test_mono_stoch():
    assert is_mono_stoch(StochMap.identity(B))
    assert not is_mono_stoch(uniform(B, B))


def test_measure_preservation():
    four = FinSet.range(4)
    assert is_measure_preserving(FinDist.uniform(B), FinFn.identity(B), FinDist.uniform(B))
    assert is_measure_preserving(FinDist.uniform(four), FinFn.constant(four, B, 1), FinDist.point_mass(B, 1))
    two_to_one = FinFn(four, B, (0, 0, 1, 1))
    assert is_measure_preserving(FinDist.uniform(four), two_to_one, FinDist.uniform(B))
    assert not is_measure_preserving(FinDist.uniform(four), FinFn(four, B, (0, 0, 0, 1)), FinDist.uniform(B))
    assert pushforward(FinDist.uniform(four), two_to_one).weights.tolist() == [HALF, HALF]
    with pytest.raises(CarrierMismatchError):
        is_measure_preserving(FinDist.uniform(B), two_to_one, FinDist.uniform(B))


def test_code_kernel_is_a_marginal():
    m = copy_first_factor()
    assert code_kernel(m, 1) == marginalize(m, [1])
