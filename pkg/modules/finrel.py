# modules/finrel.py
"""
Finite relations: the Kleisli category of the powerset monad on finite sets.

A relation A ⇝ B is a boolean incidence matrix of shape (|A|, |B|). The
monoidal product is the cartesian product of carriers; it is not a
categorical product here, so a relation into a product need not factor.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from modules.errors import CarrierMismatchError, FactorStructureError, InvalidStructureError
from modules.finset import FinFn, FinSet

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True, eq=False)
class FinRel:
    dom: FinSet
    cod: FinSet
    incidence: np.ndarray

    def __post_init__(self):
        incidence = np.array(self.incidence, dtype=bool)
        if incidence.shape != (self.dom.size, self.cod.size):
            raise InvalidStructureError(
                f"incidence of shape {incidence.shape} does not match carriers "
                f"({self.dom.size}, {self.cod.size})"
            )
        incidence.setflags(write=False)
        object.__setattr__(self, "incidence", incidence)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinRel):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and np.array_equal(self.incidence, other.incidence)
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.incidence.tobytes()))

    @classmethod
    def from_pairs(cls, dom: FinSet, cod: FinSet, pairs: Iterable) -> "FinRel":
        """Builds a relation from (dom label, cod label) pairs."""
        incidence = np.zeros((dom.size, cod.size), dtype=bool)
        for a, b in pairs:
            incidence[dom.index(a), cod.index(b)] = True
        return cls(dom, cod, incidence)

    @classmethod
    def empty(cls, dom: FinSet, cod: FinSet) -> "FinRel":
        return cls(dom, cod, np.zeros((dom.size, cod.size), dtype=bool))

    @classmethod
    def full(cls, dom: FinSet, cod: FinSet) -> "FinRel":
        return cls(dom, cod, np.ones((dom.size, cod.size), dtype=bool))

    def pairs(self) -> list:
        return [
            (self.dom.labels[a], self.cod.labels[b])
            for a, b in zip(*np.nonzero(self.incidence))
        ]

    def is_empty(self) -> bool:
        return not self.incidence.any()

    def __repr__(self) -> str:
        return f"FinRel({self.pairs()})"


@dataclass(frozen=True)
class RelationClass:
    right_unique: bool
    left_total: bool
    function: bool


def rel_identity(A: FinSet) -> FinRel:
    return FinRel(A, A, np.eye(A.size, dtype=bool))


def graph(f: FinFn) -> FinRel:
    """The graph of a function as a relation dom ⇝ cod."""
    incidence = np.zeros((f.dom.size, f.cod.size), dtype=bool)
    incidence[np.arange(f.dom.size), list(f.map)] = True
    return FinRel(f.dom, f.cod, incidence)


def rel_compose(r: FinRel, s: FinRel) -> FinRel:
    """The composite relation, r first: a ~ c iff a r b and b s c for some b."""
    if r.cod != s.dom:
        raise CarrierMismatchError("cannot compose relations: r.cod differs from s.dom")
    product = r.incidence.astype(np.int64) @ s.incidence.astype(np.int64)
    return FinRel(r.dom, s.cod, product > 0)


def rel_tensor(*relations: FinRel) -> FinRel:
    """(a_1..a_N) ~ (b_1..b_N) iff a_k r_k b_k for every k, on flat product carriers."""
    if not relations:
        raise InvalidStructureError("tensor needs at least one relation")
    dom = FinSet.product(*(r.dom for r in relations))
    cod = FinSet.product(*(r.cod for r in relations))
    incidence = reduce(np.kron, (r.incidence.astype(np.int64) for r in relations))
    return FinRel(dom, cod, incidence > 0)


def _binary_factors(carrier: FinSet, side: str) -> tuple:
    factors = carrier.factors
    if factors is None or len(factors) != 2:
        raise FactorStructureError(f"currying needs a binary factor structure on the {side}")
    return factors


def rel_curry(r: FinRel, direction: str = FORWARD) -> FinRel:
    """
    Moves one factor across the arrow.

    forward:  r: A⊗B ⇝ C  becomes  A ⇝ B⊗C
    backward: r: A ⇝ B⊗C  becomes  A⊗B ⇝ C
    """
    if direction == FORWARD:
        A, B = _binary_factors(r.dom, "domain")
        C = r.cod
        return FinRel(A, FinSet.product(B, C), r.incidence.reshape(A.size, B.size * C.size))
    if direction == BACKWARD:
        B, C = _binary_factors(r.cod, "codomain")
        A = r.dom
        return FinRel(FinSet.product(A, B), C, r.incidence.reshape(A.size * B.size, C.size))
    raise ValueError(f"unknown currying direction {direction!r}")


def classify_relation(r: FinRel) -> RelationClass:
    counts = r.incidence.sum(axis=1)
    right_unique = bool((counts <= 1).all())
    left_total = bool((counts >= 1).all())
    return RelationClass(right_unique, left_total, right_unique and left_total)


def is_left_unique(r: FinRel) -> bool:
    """No element of the codomain is reached from two domain elements."""
    return bool((r.incidence.sum(axis=0) <= 1).all())


def inverse_image(l: FinFn) -> FinRel:
    """The relation l.cod ⇝ l.dom with y ~ x iff l(x) = y."""
    return FinRel(l.cod, l.dom, graph(l).incidence.T)


def is_relation_preserving(f: FinFn, r_A: FinRel, r_B: FinRel) -> bool:
    """Whether a ~ a' in r_A implies f(a) ~ f(a') in r_B."""
    if r_A.dom != f.dom or r_A.cod != f.dom or r_B.dom != f.cod or r_B.cod != f.cod:
        raise CarrierMismatchError("relations must be endo-relations on f's domain and codomain")
    return all(r_B.incidence[f.map[a], f.map[b]] for a, b in zip(*np.nonzero(r_A.incidence)))


def _require_matching_factors(m: FinRel) -> int:
    if m.dom.factors is None or m.cod.factors is None:
        raise FactorStructureError("monoidal factorization needs factor structure on both sides")
    if m.dom.n_factors != m.cod.n_factors:
        raise FactorStructureError(
            f"factor counts differ: {m.dom.n_factors} in, {m.cod.n_factors} out"
        )
    return m.dom.n_factors


def existential_projection(m: FinRel, i: int) -> FinRel:
    """y_i ~ z_i iff some completion of the other coordinates lies in m."""
    n = _require_matching_factors(m)
    shape = m.dom.factor_shape + m.cod.factor_shape
    cube = m.incidence.reshape(shape)
    others = tuple(k for k in range(2 * n) if k not in (i, n + i))
    return FinRel(m.dom.factors[i], m.cod.factors[i], cube.any(axis=others))


def monoidal_factorization(m: FinRel) -> Optional[Sequence[FinRel]]:
    """Components m_{i,i} with m = ⊗ m_{i,i}, or None when m does not factor."""
    n = _require_matching_factors(m)
    if m.is_empty():
        return [FinRel.empty(m.dom.factors[i], m.cod.factors[i]) for i in range(n)]
    components = [existential_projection(m, i) for i in range(n)]
    if np.array_equal(rel_tensor(*components).incidence, m.incidence):
        return components
    return None
