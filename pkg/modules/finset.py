# modules/finset.py
"""
Finite sets, total functions and the cartesian structure of the category of
finite sets, together with the modularity/explicitness predicates for
encoders between product sets.

A product set keeps its factors. Its elements are enumerated in mixed-radix
order with the first factor as the most significant digit, so nesting
products is associative on indices and no associator has to be tracked.
Factor indices in this API are 0-based.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence

from modules.errors import (
    CarrierMismatchError,
    FactorStructureError,
    InvalidStructureError,
    SearchBudgetExceeded,
)
from modules.search import (
    DEFAULT_SEARCH_BUDGET,
    SearchOutcome,
    Verdict,
    forced_values,
    search_function,
)


def product_label(labels: Sequence[str]) -> str:
    return "(" + ",".join(labels) + ")"


@dataclass(frozen=True)
class FinSet:
    """A labeled finite set; `factors` is present iff the set is a product."""
    labels: tuple
    factors: Optional[tuple] = None

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InvalidStructureError("a finite set needs at least one element")
        if len(set(labels)) != len(labels):
            raise InvalidStructureError(f"labels must be distinct: {labels}")
        if self.factors is not None:
            factors = tuple(self.factors)
            if not factors:
                raise InvalidStructureError("a product needs at least one factor")
            if math.prod(factor.size for factor in factors) != len(labels):
                raise InvalidStructureError(
                    f"factor sizes {[f.size for f in factors]} do not multiply to {len(labels)}"
                )
            object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *labels) -> "FinSet":
        return cls(tuple(labels))

    @classmethod
    def range(cls, n: int, prefix: str = "") -> "FinSet":
        return cls(tuple(f"{prefix}{i}" for i in range(n)))

    @classmethod
    def one_point(cls) -> "FinSet":
        return cls(("*",))

    @classmethod
    def product(cls, *factors: "FinSet") -> "FinSet":
        if not factors:
            raise InvalidStructureError("a product needs at least one factor")
        labels = tuple(
            product_label(combo) for combo in itertools.product(*(f.labels for f in factors))
        )
        return cls(labels, tuple(factors))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def is_product(self) -> bool:
        return self.factors is not None

    @property
    def factor_shape(self) -> Optional[tuple]:
        if self.factors is None:
            return None
        return tuple(factor.size for factor in self.factors)

    @property
    def n_factors(self) -> int:
        return len(self.factors) if self.factors is not None else 0

    def factor(self, i: int) -> "FinSet":
        self.require_factors()
        return self.factors[i]

    def require_factors(self, what: str = "set") -> tuple:
        if self.factors is None:
            raise FactorStructureError(f"{what} {self.labels[:4]}... carries no factor structure")
        return self.factors

    @cached_property
    def _index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InvalidStructureError(f"unknown element {label!r}") from None

    def __contains__(self, label) -> bool:
        return str(label) in self._index

    @cached_property
    def coords_table(self) -> tuple:
        """Mixed-radix coordinates of every element, in element order."""
        shape = self.require_factors()
        return tuple(itertools.product(*(range(f.size) for f in shape)))

    def coords(self, index: int) -> tuple:
        return self.coords_table[index]

    def flat(self, coords: Sequence[int]) -> int:
        index = 0
        for digit, factor in zip(coords, self.require_factors()):
            index = index * factor.size + digit
        return index

    def without(self, i: int) -> "FinSet":
        """The product of every factor but the i-th (the one-point set when nothing is left)."""
        rest = [f for k, f in enumerate(self.require_factors()) if k != i]
        if not rest:
            return FinSet.one_point()
        if len(rest) == 1:
            return rest[0]
        return FinSet.product(*rest)

    def rest_index(self, coords: Sequence[int], i: int) -> int:
        """Index of the element of `without(i)` obtained by dropping coordinate i."""
        index = 0
        for k, (digit, factor) in enumerate(zip(coords, self.require_factors())):
            if k != i:
                index = index * factor.size + digit
        return index


@dataclass(frozen=True)
class FinFn:
    """A total function, stored as the codomain index of every domain element."""
    dom: FinSet
    cod: FinSet
    map: tuple

    def __post_init__(self):
        values = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", values)
        if len(values) != self.dom.size:
            raise InvalidStructureError(
                f"function table has {len(values)} entries for a domain of size {self.dom.size}"
            )
        for v in values:
            if not 0 <= v < self.cod.size:
                raise InvalidStructureError(f"value {v} outside a codomain of size {self.cod.size}")

    def __call__(self, index: int) -> int:
        return self.map[index]

    def apply_label(self, label: str) -> str:
        return self.cod.labels[self.map[self.dom.index(label)]]

    @classmethod
    def identity(cls, A: FinSet) -> "FinFn":
        return cls(A, A, tuple(range(A.size)))

    @classmethod
    def constant(cls, A: FinSet, B: FinSet, value: int = 0) -> "FinFn":
        return cls(A, B, (value,) * A.size)

    @classmethod
    def from_labels(cls, dom: FinSet, cod: FinSet, mapping: dict) -> "FinFn":
        missing = [label for label in dom.labels if label not in mapping]
        if missing:
            raise InvalidStructureError(f"function is undefined on {missing}")
        return cls(dom, cod, tuple(cod.index(mapping[label]) for label in dom.labels))

    @classmethod
    def from_callable(cls, dom: FinSet, cod: FinSet, fn: Callable[[int], int]) -> "FinFn":
        return cls(dom, cod, tuple(fn(i) for i in range(dom.size)))

    def image(self) -> frozenset:
        return frozenset(self.map)

    def fibers(self) -> dict:
        result = {}
        for x, y in enumerate(self.map):
            result.setdefault(y, []).append(x)
        return result

    def as_dict(self) -> dict:
        return {label: self.cod.labels[v] for label, v in zip(self.dom.labels, self.map)}


@dataclass(frozen=True)
class MorphismClass:
    mono: bool
    epi: bool
    iso: bool


@dataclass(frozen=True)
class ComponentWitness:
    """The per-factor maps m_{i,i}: Y_i -> Z_i of a modular encoder."""
    components: tuple

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> FinFn:
        return self.components[i]

    def product(self) -> FinFn:
        return product_map(*self.components)


@dataclass(frozen=True)
class CartesianStructure:
    product: FinSet
    projections: tuple
    pair: Callable
    diagonal: Callable
    terminal: Callable


# ---------------------------------------------------------------- category plumbing

def compose(f: FinFn, g: FinFn) -> FinFn:
    """The composite g∘f (f first)."""
    if f.cod != g.dom:
        raise CarrierMismatchError("cannot compose: codomain of the first map is not the domain of the second")
    return FinFn(f.dom, g.cod, tuple(g.map[v] for v in f.map))


def compose_all(*maps: FinFn) -> FinFn:
    """Composes left to right: compose_all(f, g, h) = h∘g∘f."""
    result = maps[0]
    for nxt in maps[1:]:
        result = compose(result, nxt)
    return result


def enumerate_functions(A: FinSet, B: FinSet) -> Iterator[FinFn]:
    """Every function A -> B, in lexicographic order of tables."""
    for table in itertools.product(range(B.size), repeat=A.size):
        yield FinFn(A, B, table)


# ---------------------------------------------------------------- cartesian structure

def projection(P: FinSet, i: int) -> FinFn:
    P.require_factors("product")
    return FinFn(P, P.factors[i], tuple(c[i] for c in P.coords_table))


def pair(maps: Sequence[FinFn], product: Optional[FinSet] = None) -> FinFn:
    """The pairing ⟨f_1, ..., f_N⟩ into the product of the codomains."""
    maps = list(maps)
    if not maps:
        raise InvalidStructureError("pairing needs at least one map")
    dom = maps[0].dom
    if any(f.dom != dom for f in maps):
        raise CarrierMismatchError("pairing needs a common domain")
    target = product or FinSet.product(*(f.cod for f in maps))
    if target.factors != tuple(f.cod for f in maps):
        raise CarrierMismatchError("pairing target is not the product of the codomains")
    return FinFn(dom, target, tuple(target.flat([f.map[x] for f in maps]) for x in range(dom.size)))


def diagonal(A: FinSet, n: int = 2) -> FinFn:
    """Δ_A = ⟨id, ..., id⟩ : A -> A^n."""
    return pair([FinFn.identity(A)] * n)


def terminal(A: FinSet) -> FinFn:
    return FinFn.constant(A, FinSet.one_point())


def product_map(*maps: FinFn) -> FinFn:
    """f_1 × ... × f_N between the products of the domains and codomains."""
    dom = FinSet.product(*(f.dom for f in maps))
    cod = FinSet.product(*(f.cod for f in maps))
    return FinFn(dom, cod, tuple(
        cod.flat([f.map[c] for f, c in zip(maps, coords)]) for coords in dom.coords_table
    ))


def swap(A: FinSet, B: FinSet) -> FinFn:
    """β = ⟨p_2, p_1⟩ : A×B -> B×A."""
    P = FinSet.product(A, B)
    return pair([projection(P, 1), projection(P, 0)])


def cartesian_structure(factors: Sequence[FinSet]) -> CartesianStructure:
    factors = list(factors)
    if not factors:
        raise InvalidStructureError("cartesian structure needs at least one factor")
    P = FinSet.product(*factors)
    return CartesianStructure(
        product=P,
        projections=tuple(projection(P, i) for i in range(len(factors))),
        pair=lambda maps: pair(maps, P),
        diagonal=diagonal,
        terminal=terminal,
    )


# ---------------------------------------------------------------- mono / epi / retractions

def classify_morphism(f: FinFn) -> MorphismClass:
    mono = len(f.image()) == f.dom.size
    epi = len(f.image()) == f.cod.size
    return MorphismClass(mono=mono, epi=epi, iso=mono and epi)


def find_retraction(m: FinFn, budget: int = DEFAULT_SEARCH_BUDGET) -> SearchOutcome:
    """
    Searches for h with h∘m = id. The witness is the first one in lexicographic
    order of tables; past the budget it is built directly from preimages.
    """
    requirements = {z: set(xs) for z, xs in m.fibers().items()}
    allowed = forced_values(m.cod.size, m.dom.size, requirements)
    identity = tuple(range(m.dom.size))

    def accept(table):
        return tuple(table[z] for z in m.map) == identity

    outcome = search_function(
        allowed, accept, budget, n_values=m.dom.size,
        construct_over_budget=True, gate_on_raw=True, label="retraction",
    )
    if outcome.found:
        return _with_witness(outcome, FinFn(m.cod, m.dom, outcome.witness))
    return outcome


def is_inverse(f: FinFn, g: FinFn) -> bool:
    if f.cod != g.dom or g.cod != f.dom:
        raise CarrierMismatchError("is_inverse needs f: A -> B and g: B -> A")
    return compose(g, f) == FinFn.identity(g.dom) and compose(f, g) == FinFn.identity(f.dom)


def _with_witness(outcome: SearchOutcome, witness) -> SearchOutcome:
    return SearchOutcome(outcome.status, witness, outcome.path, outcome.candidates,
                         outcome.raw_candidates, outcome.notes)


# ---------------------------------------------------------------- modularity

def _require_matching_factors(m: FinFn) -> int:
    m.dom.require_factors("domain")
    m.cod.require_factors("codomain")
    if m.dom.n_factors != m.cod.n_factors:
        raise FactorStructureError(
            f"factor counts differ: {m.dom.n_factors} factors in, {m.cod.n_factors} codes out"
        )
    return m.dom.n_factors


def code_values(m: FinFn, i: int) -> tuple:
    """The table of m_i = p_i∘m."""
    coords = m.cod.coords_table
    return tuple(coords[z][i] for z in m.map)


def code_map(m: FinFn, i: int) -> FinFn:
    m.cod.require_factors("codomain")
    return FinFn(m.dom, m.cod.factors[i], code_values(m, i))


def _basepoint_coords(Y: FinSet, basepoint: int) -> list:
    return [min(basepoint, f.size - 1) for f in Y.factors]


def extract_component(m: FinFn, i: int, basepoint: int = 0) -> FinFn:
    """m_{i,i}(a) = m_i(a, others fixed at `basepoint`), clipped to each factor's size."""
    _require_matching_factors(m)
    Y = m.dom
    values = code_values(m, i)
    base = _basepoint_coords(Y, basepoint)
    table = []
    for a in range(Y.factors[i].size):
        coords = list(base)
        coords[i] = a
        table.append(values[Y.flat(coords)])
    return FinFn(Y.factors[i], m.cod.factors[i], tuple(table))


def code_is_invariant(m: FinFn, i: int) -> bool:
    """m_i ignores every factor but the i-th."""
    values = code_values(m, i)
    seen = {}
    for y, coords in enumerate(m.dom.coords_table):
        if seen.setdefault(coords[i], values[y]) != values[y]:
            return False
    return True


def is_product_morphism(m: FinFn, basepoint: int = 0) -> Optional[ComponentWitness]:
    """Returns the components m_{i,i} when m = ∏ m_{i,i}, otherwise None."""
    n = _require_matching_factors(m)
    if not all(code_is_invariant(m, i) for i in range(n)):
        return None
    return ComponentWitness(tuple(extract_component(m, i, basepoint) for i in range(n)))


# ---------------------------------------------------------------- exponential transpose / pullback

def transpose_table(m: FinFn, i: int) -> tuple:
    """m̂_i as a table: for each element of Y∖i, the function Y_i -> Z_i it selects."""
    Y = m.dom
    Y.require_factors("domain")
    m.cod.require_factors("codomain")
    values = code_values(m, i)
    rest = Y.without(i)
    rows = [[0] * Y.factors[i].size for _ in range(rest.size)]
    for y, coords in enumerate(Y.coords_table):
        rows[Y.rest_index(coords, i)][coords[i]] = values[y]
    return tuple(tuple(row) for row in rows)


def exponential(A: FinSet, B: FinSet, budget: int = DEFAULT_SEARCH_BUDGET) -> FinSet:
    """B^A, each function labeled by its table of B labels."""
    if B.size ** A.size > budget:
        raise SearchBudgetExceeded(f"exponential of size {B.size ** A.size} exceeds {budget}")
    return FinSet(tuple(
        "[" + ",".join(B.labels[v] for v in table) + "]"
        for table in itertools.product(range(B.size), repeat=A.size)
    ))


def _function_index(table: Sequence[int], n_values: int) -> int:
    index = 0
    for v in table:
        index = index * n_values + v
    return index


def exponential_transpose(m: FinFn, i: int, budget: int = DEFAULT_SEARCH_BUDGET) -> FinFn:
    """m̂_i : Y∖i -> Z_i^{Y_i} as a function."""
    Yi, Zi = m.dom.factor(i), m.cod.factor(i)
    cod = exponential(Yi, Zi, budget)
    rows = transpose_table(m, i)
    return FinFn(m.dom.without(i), cod, tuple(_function_index(row, Zi.size) for row in rows))


def transpose_is_constant(m: FinFn, i: int) -> bool:
    return len(set(transpose_table(m, i))) == 1


def pullback(f: FinFn, g: FinFn):
    """The pullback {(a, b) : f(a) = g(b)} with its two projections."""
    if f.cod != g.cod:
        raise CarrierMismatchError("pullback needs a common codomain")
    pairs = [(a, b) for a in range(f.dom.size) for b in range(g.dom.size) if f.map[a] == g.map[b]]
    P = FinSet(tuple(product_label((f.dom.labels[a], g.dom.labels[b])) for a, b in pairs))
    return (
        P,
        FinFn(P, f.dom, tuple(a for a, _ in pairs)),
        FinFn(P, g.dom, tuple(b for _, b in pairs)),
    )


def invariance_via_pullback(m: FinFn, i: int) -> bool:
    m.dom.require_factors("domain")
    p = projection(m.dom, i)
    _, first, second = pullback(p, p)
    mi = code_map(m, i)
    return compose(first, mi) == compose(second, mi)


# ---------------------------------------------------------------- decoders

def _component_retraction(m: FinFn, i: int, budget: int) -> SearchOutcome:
    Y, Z = m.dom, m.cod
    values = code_values(m, i)
    requirements = {}
    for y, coords in enumerate(Y.coords_table):
        requirements.setdefault(values[y], set()).add(coords[i])
    size_y = Y.factors[i].size
    allowed = forced_values(Z.factors[i].size, size_y, requirements)
    expected = tuple(coords[i] for coords in Y.coords_table)

    def accept(table):
        return tuple(table[z] for z in values) == expected

    outcome = search_function(
        allowed, accept, budget, n_values=size_y,
        construct_over_budget=True, gate_on_raw=True, label=f"component retraction {i}",
    )
    if outcome.found:
        return _with_witness(outcome, FinFn(Z.factors[i], Y.factors[i], outcome.witness))
    return outcome


def find_modular_retraction(m: FinFn, budget: int = DEFAULT_SEARCH_BUDGET) -> SearchOutcome:
    """Searches for h_{i,i}: Z_i -> Y_i with (∏ h_{i,i})∘m = id."""
    n = _require_matching_factors(m)
    components = []
    paths = set()
    for i in range(n):
        outcome = _component_retraction(m, i, budget)
        if not outcome.found:
            return outcome
        components.append(outcome.witness)
        paths.add(outcome.path)
    witness = ComponentWitness(tuple(components))
    path = "construction" if "construction" in paths else "exhaustive"
    return SearchOutcome(Verdict.HOLDS, witness, path)


@dataclass(frozen=True)
class InformationMatrix:
    """
    entries[i][j] (i != j) is HOLDS when no h: Z_i -> Y_j recovers factor j from
    code i, FAILS when one does, UNDECIDED past the budget; the diagonal is None.
    """
    entries: tuple
    witnesses: dict

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    @property
    def size(self) -> int:
        return len(self.entries)

    def overall(self) -> Verdict:
        values = [e for i, row in enumerate(self.entries) for j, e in enumerate(row) if i != j]
        if any(e is Verdict.FAILS for e in values):
            return Verdict.FAILS
        if any(e is Verdict.UNDECIDED for e in values):
            return Verdict.UNDECIDED
        return Verdict.HOLDS

    def recoverable_factors(self, i: int) -> list:
        """Factors other than the i-th that code i still determines."""
        return [j for j, e in enumerate(self.entries[i]) if j != i and e is Verdict.FAILS]


def missing_information_search(m: FinFn, budget: int = DEFAULT_SEARCH_BUDGET) -> InformationMatrix:
    n = _require_matching_factors(m)
    Y, Z = m.dom, m.cod
    entries = []
    witnesses = {}
    for i in range(n):
        values = code_values(m, i)
        row = []
        for j in range(n):
            if i == j:
                row.append(None)
                continue
            requirements = {}
            for y, coords in enumerate(Y.coords_table):
                requirements.setdefault(values[y], set()).add(coords[j])
            size_y = Y.factors[j].size
            allowed = forced_values(Z.factors[i].size, size_y, requirements)
            expected = tuple(coords[j] for coords in Y.coords_table)

            def accept(table, values=values, expected=expected):
                return tuple(table[z] for z in values) == expected

            outcome = search_function(
                allowed, accept, budget, n_values=size_y,
                gate_on_raw=True, label=f"missing information ({i},{j})",
            )
            if outcome.found:
                witnesses[(i, j)] = FinFn(Z.factors[i], Y.factors[j], outcome.witness)
                row.append(Verdict.FAILS)
            elif outcome.decided:
                row.append(Verdict.HOLDS)
            else:
                row.append(Verdict.UNDECIDED)
        entries.append(tuple(row))
    return InformationMatrix(tuple(entries), witnesses)


def compactness_flags(m: FinFn, budget: int = DEFAULT_SEARCH_BUDGET,
                      matrix: Optional[InformationMatrix] = None) -> dict:
    """
    Per code i, the other factors it still determines, or None when an entry
    of row i stayed undecided and nothing was recovered. Code i is compact
    when its list is empty. Pass `matrix` to reuse a finished search.
    """
    if matrix is None:
        matrix = missing_information_search(m, budget)
    flags = {}
    for i in range(matrix.size):
        recovered = matrix.recoverable_factors(i)
        undecided = any(e is Verdict.UNDECIDED for e in matrix.entries[i])
        flags[i] = None if undecided and not recovered else recovered
    return flags
