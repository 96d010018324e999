# Hypothesis strategies for small carriers, functions, relations and kernels.

from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from modules.finrel import FinRel
from modules.finset import FinFn, FinSet
from modules.finstoch import StochMap


def finsets(max_size=3):
    return st.integers(1, max_size).map(FinSet.range)


@st.composite
def products(draw, max_factors=3, max_size=3, n=None):
    n = n if n is not None else draw(st.integers(1, max_factors))
    return FinSet.product(*(draw(finsets(max_size)) for _ in range(n)))


@st.composite
def functions(draw, dom, cod):
    return FinFn(dom, cod, tuple(draw(st.lists(st.integers(0, cod.size - 1),
                                               min_size=dom.size, max_size=dom.size))))


@st.composite
def encoders(draw, max_factors=3, max_size=3):
    """An arbitrary map between two products with the same number of factors."""
    n = draw(st.integers(1, max_factors))
    Y = draw(products(max_size=max_size, n=n))
    Z = draw(products(max_size=max_size, n=n))
    return draw(functions(Y, Z))


@st.composite
def product_encoders(draw, max_factors=3, max_size=3):
    """A product of per-factor maps, so always modular."""
    n = draw(st.integers(1, max_factors))
    doms = [draw(finsets(max_size)) for _ in range(n)]
    cods = [draw(finsets(max_size)) for _ in range(n)]
    from modules.finset import product_map
    return product_map(*(draw(functions(a, b)) for a, b in zip(doms, cods)))


@st.composite
def relations(draw, dom, cod):
    bits = draw(st.lists(st.booleans(), min_size=dom.size * cod.size, max_size=dom.size * cod.size))
    return FinRel(dom, cod, np.array(bits, dtype=bool).reshape(dom.size, cod.size))


@st.composite
def distributions(draw, size):
    weights = draw(st.lists(st.integers(0, 4), min_size=size, max_size=size))
    if not any(weights):
        weights[draw(st.integers(0, size - 1))] = 1
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


@st.composite
def kernels(draw, dom, cod):
    rows = [draw(distributions(cod.size)) for _ in range(dom.size)]
    return StochMap(dom, cod, np.array(rows, dtype=object))
