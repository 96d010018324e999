# modules/algact.py
"""
Monoid actions as functors out of small schemes, equivariant maps as natural
transformations, and decompositions of unital magmas.

Composition convention: (a·b)_A = a_A ∘ b_A, i.e. F(ab)(x) = F(a)(F(b)(x)).
The table entry table[a][b] is the index of a·b.

Two schemes are supported: a single-object scheme for one monoid, and the
product scheme with objects s1, s2, s12 where Hom(s12, s12) = M1×M2 and
Hom(s12, si) ≅ Mi through the projections.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from modules.errors import (
    CarrierMismatchError,
    FactorStructureError,
    InvalidStructureError,
    SearchBudgetExceeded,
)
from modules.finset import (
    FinFn,
    FinSet,
    classify_morphism,
    compose,
    pair,
    product_label,
    product_map,
    projection,
)
from modules.search import (
    DEFAULT_SEARCH_BUDGET,
    SearchOutcome,
    Verdict,
    forced_values,
    pruned_space_size,
)
from modules.logging_manager import get_logger

SINGLE_OBJECT = "s"
S1, S2, S12 = "s1", "s2", "s12"
DEFAULT_MAGMA_MAX_SIZE = 12


@dataclass(frozen=True)
class MagmaTable:
    """A set with a binary operation and a two-sided unit (no associativity required)."""
    elements: tuple
    table: tuple
    unit: int = 0
    factors: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "table", table)
        n = len(elements)
        if n == 0:
            raise InvalidStructureError("a magma needs at least one element")
        if len(set(elements)) != n:
            raise InvalidStructureError(f"element labels must be distinct: {elements}")
        if len(table) != n or any(len(row) != n for row in table):
            raise InvalidStructureError(f"operation table must be {n}x{n}")
        if any(not 0 <= v < n for row in table for v in row):
            raise InvalidStructureError("operation table refers to unknown elements")
        if not 0 <= self.unit < n:
            raise InvalidStructureError(f"unit index {self.unit} out of range")

    @property
    def size(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, label: str) -> int:
        try:
            return self.elements.index(str(label))
        except ValueError:
            raise InvalidStructureError(f"unknown element {label!r}") from None

    def unit_violation(self) -> Optional[str]:
        e = self.unit
        for a in range(self.size):
            if self.mul(e, a) != a or self.mul(a, e) != a:
                return f"unit {self.elements[e]} is not two-sided at {self.elements[a]}"
        return None


class MonoidTable(MagmaTable):
    """A magma whose operation is associative; checked by validate_monoid, not on construction."""

    def is_group(self) -> bool:
        return all(
            any(self.mul(a, b) == self.unit and self.mul(b, a) == self.unit for b in range(self.size))
            for a in range(self.size)
        )


def validate_magma(t: MagmaTable) -> tuple:
    violation = t.unit_violation()
    return (violation is None, violation or "ok")


def validate_monoid(t: MagmaTable) -> tuple:
    """Returns (ok, message); the message names the first violating triple."""
    violation = t.unit_violation()
    if violation:
        return False, violation
    for a, b, c in itertools.product(range(t.size), repeat=3):
        if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)):
            labels = [t.elements[k] for k in (a, b, c)]
            return False, f"associativity fails at ({', '.join(labels)})"
    return True, "ok"


def is_group(t: MonoidTable) -> bool:
    return t.is_group()


# ---------------------------------------------------------------- standard monoids

def trivial_monoid() -> MonoidTable:
    return MonoidTable(("e",), ((0,),), 0)


def cyclic_monoid(n: int) -> MonoidTable:
    """Z_n under addition."""
    return MonoidTable(tuple(str(k) for k in range(n)),
                       tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0)


def saturating_monoid(k: int) -> MonoidTable:
    """{0..k} under addition capped at k: the free monoid on one generator, truncated."""
    return MonoidTable(tuple(str(v) for v in range(k + 1)),
                       tuple(tuple(min(a + b, k) for b in range(k + 1)) for a in range(k + 1)), 0)


def klein_group() -> MonoidTable:
    """Z2×Z2 written as bit strings, operation xor."""
    labels = ("00", "10", "01", "11")
    bits = [(0, 0), (1, 0), (0, 1), (1, 1)]
    table = tuple(
        tuple(bits.index((x[0] ^ y[0], x[1] ^ y[1])) for y in bits) for x in bits
    )
    return MonoidTable(labels, table, 0)


def product_monoid(m1: MonoidTable, m2: MonoidTable) -> MonoidTable:
    """M1×M2 with (a,b) at index a*|M2| + b."""
    n2 = m2.size
    elements = tuple(product_label((a, b)) for a in m1.elements for b in m2.elements)
    table = tuple(
        tuple(m1.mul(a1, a2) * n2 + m2.mul(b1, b2) for a2 in range(m1.size) for b2 in range(n2))
        for a1 in range(m1.size) for b1 in range(n2)
    )
    return MonoidTable(elements, table, m1.unit * n2 + m2.unit, factors=(m1, m2))


def enumerate_monoids(order: int) -> list:
    """Every monoid table on {0..order-1} with unit 0, in lexicographic table order."""
    free = [(a, b) for a in range(1, order) for b in range(1, order)]
    found = []
    for values in itertools.product(range(order), repeat=len(free)):
        table = [[a if b == 0 else b if a == 0 else 0 for b in range(order)] for a in range(order)]
        for (a, b), v in zip(free, values):
            table[a][b] = v
        monoid = MonoidTable(tuple(str(k) for k in range(order)), table, 0)
        if validate_monoid(monoid)[0]:
            found.append(monoid)
    return found


# ---------------------------------------------------------------- schemes and models

@dataclass(frozen=True)
class MonoidScheme:
    """A monoid as a category with one object."""
    monoid: MonoidTable
    objects = (SINGLE_OBJECT,)

    def monoid_at(self, obj: str) -> MonoidTable:
        if obj != SINGLE_OBJECT:
            raise InvalidStructureError(f"unknown scheme object {obj!r}")
        return self.monoid


@dataclass(frozen=True)
class ProductScheme:
    """Objects s1, s2 and their product s12, acted on by M1, M2 and M1×M2."""
    m1: MonoidTable
    m2: MonoidTable
    objects = (S1, S2, S12)

    @cached_property
    def product(self) -> MonoidTable:
        return product_monoid(self.m1, self.m2)

    def monoid_at(self, obj: str) -> MonoidTable:
        try:
            return {S1: self.m1, S2: self.m2, S12: self.product}[obj]
        except KeyError:
            raise InvalidStructureError(f"unknown scheme object {obj!r}") from None


@dataclass(frozen=True, eq=False)
class SchemeModel:
    """
    A functor from a scheme into finite sets: a carrier per object, the action
    of every monoid element at that object, and for product schemes the images
    q1, q2 of the two projections.
    """
    scheme: object
    carriers: dict
    actions: dict
    projections: tuple = ()

    def act(self, obj: str, element: int) -> FinFn:
        return self.actions[obj][element]

    def carrier(self, obj: str) -> FinSet:
        return self.carriers[obj]

    @property
    def is_product_scheme(self) -> bool:
        return isinstance(self.scheme, ProductScheme)


def action_model(monoid: MonoidTable, carrier: FinSet, maps: Sequence[FinFn]) -> SchemeModel:
    return SchemeModel(MonoidScheme(monoid), {SINGLE_OBJECT: carrier}, {SINGLE_OBJECT: tuple(maps)})


def action_from_callable(monoid: MonoidTable, carrier: FinSet, act) -> SchemeModel:
    """act(element, x) -> index of the image of x."""
    maps = [FinFn.from_callable(carrier, carrier, lambda x, a=a: act(a, x)) for a in range(monoid.size)]
    return action_model(monoid, carrier, maps)


def trivial_action(monoid: MonoidTable, carrier: FinSet) -> SchemeModel:
    return action_model(monoid, carrier, [FinFn.identity(carrier)] * monoid.size)


def componentwise_model(scheme: ProductScheme, first: SchemeModel, second: SchemeModel) -> SchemeModel:
    """The product-preserving model with F(s12) = F(s1)×F(s2) and literal projections."""
    A, B = first.carrier(SINGLE_OBJECT), second.carrier(SINGLE_OBJECT)
    P = FinSet.product(A, B)
    joint = tuple(
        product_map(first.act(SINGLE_OBJECT, a), second.act(SINGLE_OBJECT, b))
        for a in range(scheme.m1.size) for b in range(scheme.m2.size)
    )
    return SchemeModel(
        scheme,
        {S1: A, S2: B, S12: P},
        {S1: first.actions[SINGLE_OBJECT], S2: second.actions[SINGLE_OBJECT], S12: joint},
        (projection(P, 0), projection(P, 1)),
    )


def constant_model(scheme) -> SchemeModel:
    """Δ1: every object goes to the one-point set, every morphism to its identity."""
    point = FinSet.one_point()
    carriers = {obj: point for obj in scheme.objects}
    actions = {obj: (FinFn.identity(point),) * scheme.monoid_at(obj).size for obj in scheme.objects}
    projections = ()
    if isinstance(scheme, ProductScheme):
        projections = (FinFn.identity(point), FinFn.identity(point))
    return SchemeModel(scheme, carriers, actions, projections)


def restrict_to_object(model: SchemeModel, obj: str = S12) -> SchemeModel:
    """The action of the monoid at one object, as a single-object model."""
    return action_model(model.scheme.monoid_at(obj), model.carrier(obj), model.actions[obj])


def pull_back_action(model: SchemeModel, m1: MonoidTable, m2: MonoidTable, i: int) -> SchemeModel:
    """An action of M_{i+1} seen as an action of M1×M2 through the i-th projection."""
    joint = product_monoid(m1, m2)
    own = model.actions[SINGLE_OBJECT]
    maps = [own[a] if i == 0 else own[b] for a in range(m1.size) for b in range(m2.size)]
    return action_model(joint, model.carrier(SINGLE_OBJECT), maps)


def enumerate_actions(monoid: MonoidTable, carrier: FinSet) -> list:
    """Every action of `monoid` on `carrier`, in lexicographic order of the element maps."""
    all_maps = [FinFn(carrier, carrier, t)
                for t in itertools.product(range(carrier.size), repeat=carrier.size)]
    identity = FinFn.identity(carrier)
    others = [a for a in range(monoid.size) if a != monoid.unit]
    found = []
    for choice in itertools.product(all_maps, repeat=len(others)):
        maps = [identity] * monoid.size
        for a, f in zip(others, choice):
            maps[a] = f
        model = action_model(monoid, carrier, maps)
        if validate_model(model)[0]:
            found.append(model)
    return found


def _check_functorial(monoid: MonoidTable, carrier: FinSet, maps: Sequence[FinFn], where: str):
    if len(maps) != monoid.size:
        return f"{where}: {len(maps)} action maps for a monoid of size {monoid.size}"
    for a, f in enumerate(maps):
        if f.dom != carrier or f.cod != carrier:
            return f"{where}: action of {monoid.elements[a]} is not an endomap of the carrier"
    if maps[monoid.unit] != FinFn.identity(carrier):
        return f"{where}: the unit does not act as the identity"
    for a, b in itertools.product(range(monoid.size), repeat=2):
        if maps[monoid.mul(a, b)] != compose(maps[b], maps[a]):
            return f"{where}: F({monoid.elements[a]}·{monoid.elements[b]}) differs from F(a)∘F(b)"
    return None


def validate_model(model: SchemeModel) -> tuple:
    """Returns (ok, message); checks functoriality and, for product schemes, projection naturality."""
    scheme = model.scheme
    for obj in scheme.objects:
        if obj not in model.carriers or obj not in model.actions:
            return False, f"missing data for object {obj}"
        problem = _check_functorial(scheme.monoid_at(obj), model.carrier(obj), model.actions[obj], obj)
        if problem:
            return False, problem
    if isinstance(scheme, ProductScheme):
        if len(model.projections) != 2:
            return False, "a product-scheme model needs both projections"
        for i, (obj, factor) in enumerate(((S1, scheme.m1), (S2, scheme.m2))):
            q = model.projections[i]
            if q.dom != model.carrier(S12) or q.cod != model.carrier(obj):
                return False, f"projection q{i + 1} does not run from F(s12) to F({obj})"
            for a, b in itertools.product(range(scheme.m1.size), range(scheme.m2.size)):
                joint = model.act(S12, a * scheme.m2.size + b)
                own = model.act(obj, a if i == 0 else b)
                if compose(joint, q) != compose(q, own):
                    label = scheme.product.elements[a * scheme.m2.size + b]
                    return False, f"projection q{i + 1} is not natural at {label}"
    return True, "ok"


# ---------------------------------------------------------------- equivariance

def is_equivariant(f: FinFn, A: SchemeModel, B: SchemeModel, at: str = SINGLE_OBJECT) -> bool:
    """f∘a_A = a_B∘f for every monoid element acting at `at`."""
    if f.dom != A.carrier(at) or f.cod != B.carrier(at):
        raise CarrierMismatchError(f"map does not connect the carriers at {at}")
    monoid = A.scheme.monoid_at(at)
    return all(
        compose(A.act(at, a), f) == compose(f, B.act(at, a)) for a in range(monoid.size)
    )


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    """Per-object maps between two models over the same scheme."""
    source: SchemeModel
    target: SchemeModel
    components: dict

    def at(self, obj: str) -> FinFn:
        return self.components[obj]

    def is_natural(self) -> bool:
        for obj in self.source.scheme.objects:
            if not is_equivariant(self.at(obj), self.source, self.target, obj):
                return False
        if self.source.is_product_scheme:
            for i, obj in enumerate((S1, S2)):
                lhs = compose(self.at(S12), self.target.projections[i])
                rhs = compose(self.source.projections[i], self.at(obj))
                if lhs != rhs:
                    return False
        return True

    def then(self, other: "EquivariantMap") -> "EquivariantMap":
        """The composite with `other` applied second."""
        return EquivariantMap(
            self.source, other.target,
            {obj: compose(self.at(obj), other.at(obj)) for obj in self.source.scheme.objects},
        )


def functor_product(models: Sequence[SchemeModel]) -> SchemeModel:
    """Pointwise product of single-object models of one monoid."""
    models = list(models)
    if not models:
        raise FactorStructureError("functor product needs at least one model")
    monoid = models[0].scheme.monoid_at(SINGLE_OBJECT)
    if any(m.scheme.monoid_at(SINGLE_OBJECT) != monoid for m in models):
        raise FactorStructureError("functor product needs models of one monoid")
    carrier = FinSet.product(*(m.carrier(SINGLE_OBJECT) for m in models))
    maps = [product_map(*(m.act(SINGLE_OBJECT, a) for m in models)) for a in range(monoid.size)]
    return action_model(monoid, carrier, maps)


def check_dis2(components: Sequence[FinFn], F_X: SchemeModel, F_Z_list: Sequence[SchemeModel]) -> bool:
    """Whether the pairing of the components is equivariant into the product of the code actions."""
    if len(components) != len(F_Z_list):
        raise FactorStructureError(f"{len(components)} components for {len(F_Z_list)} code models")
    target = functor_product(F_Z_list)
    return is_equivariant(pair(components, target.carrier(SINGLE_OBJECT)), F_X, target)


def check_dis2prime(f: FinFn, F_X: SchemeModel, F_Z: SchemeModel, generators_only: bool = True) -> bool:
    """Equivariance under M1×M2; the generators (a,e) and (e,b) suffice."""
    monoid = F_X.scheme.monoid_at(SINGLE_OBJECT)
    if monoid.factors is None or F_Z.scheme.monoid_at(SINGLE_OBJECT) != monoid:
        raise FactorStructureError("both models must act through the same product monoid")
    if f.dom != F_X.carrier(SINGLE_OBJECT) or f.cod != F_Z.carrier(SINGLE_OBJECT):
        raise CarrierMismatchError("map does not connect the two carriers")
    m1, m2 = monoid.factors
    if generators_only:
        elements = sorted({a * m2.size + m2.unit for a in range(m1.size)}
                          | {m1.unit * m2.size + b for b in range(m2.size)})
    else:
        elements = range(monoid.size)
    return all(
        compose(F_X.act(SINGLE_OBJECT, g), f) == compose(f, F_Z.act(SINGLE_OBJECT, g))
        for g in elements
    )


def pairing_map(model: SchemeModel) -> FinFn:
    """⟨F(p1), F(p2)⟩ : F(s12) -> F(s1)×F(s2)."""
    return pair(model.projections)


def is_product_preserving(model: SchemeModel) -> bool:
    if not model.is_product_scheme:
        raise FactorStructureError("product preservation needs a product-scheme model")
    scheme = model.scheme
    pairing = pairing_map(model)
    if not classify_morphism(pairing).iso:
        return False
    for a, b in itertools.product(range(scheme.m1.size), range(scheme.m2.size)):
        joint = model.act(S12, a * scheme.m2.size + b)
        split = product_map(model.act(S1, a), model.act(S2, b))
        if compose(joint, pairing) != compose(pairing, split):
            return False
    return True


def _distinct(maps: Iterable[FinFn]) -> bool:
    maps = list(maps)
    return len(set(f.map for f in maps)) == len(maps)


def is_faithful(model: SchemeModel) -> bool:
    """Injective on every hom-set, including Hom(s12, si) ≅ Mi."""
    scheme = model.scheme
    for obj in scheme.objects:
        if not _distinct(model.actions[obj]):
            return False
    if model.is_product_scheme:
        for i, obj in enumerate((S1, S2)):
            q = model.projections[i]
            if not _distinct(compose(q, f) for f in model.actions[obj]):
                return False
    return True


def transport_is_componentwise(mu: EquivariantMap) -> bool:
    """⟨q1,q2⟩∘μ_s12 = (μ_s1 × μ_s2)∘⟨q1,q2⟩."""
    lhs = compose(mu.at(S12), pairing_map(mu.target))
    rhs = compose(pairing_map(mu.source), product_map(mu.at(S1), mu.at(S2)))
    return lhs == rhs


def find_equivariant_retraction(mu: EquivariantMap, budget: int = DEFAULT_SEARCH_BUDGET) -> SearchOutcome:
    """
    Searches for an equivariant h with h∘μ = id at every object. Candidates are
    pruned by the retraction equation first, then filtered by equivariance.
    """
    logger = get_logger()
    F_Y, F_Z = mu.source, mu.target
    objects = F_Y.scheme.objects
    per_object = {}
    visited = 0
    for obj in objects:
        m = mu.at(obj)
        requirements = {z: set(ys) for z, ys in m.fibers().items()}
        allowed = forced_values(m.cod.size, m.dom.size, requirements)
        size = pruned_space_size(allowed)
        if size == 0:
            return SearchOutcome(Verdict.FAILS, None, candidates=visited)
        if size > budget:
            logger.warning(f"equivariant retraction: {size} candidates at {obj} exceed the budget of {budget}")
            return SearchOutcome(Verdict.UNDECIDED, None, candidates=visited,
                                 notes=(f"{size} candidates at {obj} exceed the search budget {budget}",))
        good = []
        for table in itertools.product(*allowed):
            visited += 1
            h = FinFn(m.cod, m.dom, table)
            if is_equivariant(h, F_Z, F_Y, obj):
                good.append(h)
        if not good:
            return SearchOutcome(Verdict.FAILS, None, candidates=visited)
        per_object[obj] = good

    combined = pruned_space_size([per_object[obj] for obj in objects])
    if combined > budget:
        return SearchOutcome(Verdict.UNDECIDED, None, candidates=visited,
                             notes=(f"{combined} combined candidates exceed the search budget {budget}",))
    for choice in itertools.product(*(per_object[obj] for obj in objects)):
        visited += 1
        candidate = EquivariantMap(F_Z, F_Y, dict(zip(objects, choice)))
        if candidate.is_natural():
            logger.debug(f"equivariant retraction found after {visited} candidates")
            return SearchOutcome(Verdict.HOLDS, candidate, candidates=visited)
    return SearchOutcome(Verdict.FAILS, None, candidates=visited)


def preserves_point(f: FinFn, x0: int, z0: int) -> bool:
    """Whether f sends the distinguished point x0 to z0 (a nullary operation)."""
    return f.map[x0] == z0


# ---------------------------------------------------------------- binary operations

def binary_op_naturality(f: FinFn, c_X: FinFn, c_Z: FinFn,
                         F_X: Optional[SchemeModel] = None, F_Z: Optional[SchemeModel] = None,
                         pairs: Optional[Sequence[tuple]] = None) -> bool:
    """
    f(c_X(a_X x1, b_X x2)) = c_Z(a_Z f(x1), b_Z f(x2)) for every x1, x2 and
    every (a, b) in `pairs` (all pairs of elements by default; identities
    when no models are given).
    """
    X, Z = f.dom, f.cod
    for c, carrier, name in ((c_X, X, "c_X"), (c_Z, Z, "c_Z")):
        if c.dom.factors is None or len(c.dom.factors) != 2:
            raise FactorStructureError(f"{name} must be a binary operation")
        if c.dom.factors != (carrier, carrier) or c.cod != carrier:
            raise CarrierMismatchError(f"{name} must map {carrier.size}x{carrier.size} elements into the carrier")
    if F_X is None or F_Z is None:
        identity_x, identity_z = FinFn.identity(X), FinFn.identity(Z)
        actions = [(identity_x, identity_x, identity_z, identity_z)]
    else:
        size = F_X.scheme.monoid_at(SINGLE_OBJECT).size
        chosen = pairs if pairs is not None else list(itertools.product(range(size), repeat=2))
        actions = [
            (F_X.act(SINGLE_OBJECT, a), F_X.act(SINGLE_OBJECT, b),
             F_Z.act(SINGLE_OBJECT, a), F_Z.act(SINGLE_OBJECT, b))
            for a, b in chosen
        ]
    for a_x, b_x, a_z, b_z in actions:
        for x1, x2 in itertools.product(range(X.size), repeat=2):
            lhs = f.map[c_X.map[c_X.dom.flat((a_x.map[x1], b_x.map[x2]))]]
            rhs = c_Z.map[c_Z.dom.flat((a_z.map[f.map[x1]], b_z.map[f.map[x2]]))]
            if lhs != rhs:
                return False
    return True


def operation_map(t: MagmaTable) -> FinFn:
    """The magma operation as a function M×M -> M."""
    M = FinSet(t.elements)
    P = FinSet.product(M, M)
    return FinFn(P, M, tuple(t.mul(a, b) for a, b in P.coords_table))


# ---------------------------------------------------------------- magma decompositions

def _as_indices(g: MagmaTable, subset: Iterable) -> frozenset:
    return frozenset(s if isinstance(s, int) else g.index(s) for s in subset)


def _is_closed(g: MagmaTable, s: frozenset) -> bool:
    return all(g.mul(a, b) in s for a in s for b in s)


def verify_product_decomposition(g: MagmaTable, s1: Iterable, s2: Iterable) -> bool:
    """Closure of both parts, cross-commutation, and bijectivity of (m, n) -> m∘n."""
    s1, s2 = _as_indices(g, s1), _as_indices(g, s2)
    if g.unit not in s1 or g.unit not in s2:
        raise InvalidStructureError("both parts of a decomposition must contain the unit")
    if not (_is_closed(g, s1) and _is_closed(g, s2)):
        return False
    if any(g.mul(m, n) != g.mul(n, m) for m in s1 for n in s2):
        return False
    products = {g.mul(m, n) for m in s1 for n in s2}
    return len(s1) * len(s2) == g.size and len(products) == g.size


def find_decompositions(g: MagmaTable, max_size: int = DEFAULT_MAGMA_MAX_SIZE) -> list:
    """
    Every ordered pair (s1, s2) of unit-containing parts that decomposes g,
    ordered by part size and then by sorted element indices.
    """
    if g.size > max_size:
        raise SearchBudgetExceeded(f"magma of size {g.size} exceeds the limit of {max_size}")
    others = [a for a in range(g.size) if a != g.unit]
    closed = []
    for r in range(len(others) + 1):
        for chosen in itertools.combinations(others, r):
            part = frozenset((g.unit,) + chosen)
            if _is_closed(g, part):
                closed.append(part)
    closed.sort(key=lambda s: (len(s), sorted(s)))
    found = []
    for s1 in closed:
        for s2 in closed:
            if len(s1) * len(s2) == g.size and verify_product_decomposition(g, s1, s2):
                found.append((tuple(sorted(s1)), tuple(sorted(s2))))
    return found
