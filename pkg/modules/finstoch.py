# modules/finstoch.py
"""
Finite stochastic maps: the Kleisli category of the finite distribution monad,
a Markov category with copy, delete and swap.

Kernels hold one row per domain element. Exact kernels use numpy object
arrays of Fraction and compare exactly; float kernels carry a tolerance and
compare entrywise within it.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from modules.errors import (
    CarrierMismatchError,
    ConsistencyError,
    FactorStructureError,
    InvalidStructureError,
)
from modules.finset import FinFn, FinSet, projection

EXACT = "exact"
FLOAT = "float"
DEFAULT_TOLERANCE = 1e-9


def parse_probability(value, arithmetic: str = EXACT, max_denominator: int = 10 ** 6):
    """
    Reads "3/4", "0.25", 0.25 or Fraction(1, 4) into the requested arithmetic.

    In exact mode a decimal, whether a JSON number or a string, becomes the
    nearest rational with denominator at most max_denominator, so "0.1428571"
    and 0.1428571 both read as 1/7. A "p/q" string is taken as written.
    """
    if isinstance(value, bool):
        raise InvalidStructureError(f"not a probability: {value!r}")
    try:
        if arithmetic == FLOAT:
            return float(Fraction(value.strip())) if isinstance(value, str) else float(value)
        if isinstance(value, float):
            return Fraction(value).limit_denominator(max_denominator)
        if isinstance(value, str):
            text = value.strip()
            if "/" in text:
                return Fraction(text)
            return Fraction(text).limit_denominator(max_denominator)
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InvalidStructureError(f"not a probability: {value!r}") from e


def _zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        return np.full(shape, Fraction(0), dtype=object)
    return np.zeros(shape, dtype=float)


def _one(exact: bool):
    return Fraction(1) if exact else 1.0


def _all_close(a: np.ndarray, b: np.ndarray, eps: float) -> bool:
    if a.shape != b.shape:
        return False
    return bool(np.all(np.abs(a - b) <= eps))


@dataclass(frozen=True, eq=False)
class StochMap:
    dom: FinSet
    cod: FinSet
    rows: np.ndarray
    tol: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        rows = np.array(self.rows)
        exact = rows.dtype == object or np.issubdtype(rows.dtype, np.integer)
        rows = np.vectorize(Fraction, otypes=[object])(rows) if exact and rows.size else rows
        if not exact:
            rows = rows.astype(float)
        if rows.shape != (self.dom.size, self.cod.size):
            raise InvalidStructureError(
                f"kernel of shape {rows.shape} does not match carriers ({self.dom.size}, {self.cod.size})"
            )
        eps = 0 if exact else self.tol
        if bool(np.any(rows < -eps)):
            raise InvalidStructureError("kernel has negative entries")
        if not exact:
            rows = np.clip(rows, 0.0, None)
        sums = rows.sum(axis=1)
        if not bool(np.all(np.abs(sums - _one(exact)) <= eps)):
            raise InvalidStructureError("every kernel row must sum to 1")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def exact(self) -> bool:
        return self.rows.dtype == object

    @property
    def eps(self) -> float:
        return 0 if self.exact else self.tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, StochMap):
            return NotImplemented
        return kernels_close(self, other)

    __hash__ = None

    def __call__(self, x: int) -> np.ndarray:
        return self.rows[x]

    @classmethod
    def from_rows(cls, dom: FinSet, cod: FinSet, rows: Sequence[Sequence], arithmetic: str = EXACT,
                  tol: float = DEFAULT_TOLERANCE, max_denominator: int = 10 ** 6) -> "StochMap":
        parsed = [[parse_probability(v, arithmetic, max_denominator) for v in row] for row in rows]
        dtype = object if arithmetic == EXACT else float
        return cls(dom, cod, np.array(parsed, dtype=dtype).reshape(len(parsed), -1), tol)

    @classmethod
    def from_function(cls, f: FinFn, exact: bool = True, tol: float = DEFAULT_TOLERANCE) -> "StochMap":
        rows = _zeros((f.dom.size, f.cod.size), exact)
        for x, y in enumerate(f.map):
            rows[x, y] = _one(exact)
        return cls(f.dom, f.cod, rows, tol)

    @classmethod
    def identity(cls, A: FinSet, exact: bool = True) -> "StochMap":
        return cls.from_function(FinFn.identity(A), exact)

    def with_tolerance(self, tol: float) -> "StochMap":
        """The same kernel compared within tol; exact kernels stay exact."""
        if self.exact:
            return self
        return StochMap(self.dom, self.cod, self.rows, tol)

    def support(self, x: int) -> list:
        return [z for z, p in enumerate(self.rows[x]) if p > self.eps]

    def __repr__(self) -> str:
        return f"StochMap({self.dom.size}->{self.cod.size}, {self.rows.tolist()})"


@dataclass(frozen=True, eq=False)
class FinDist:
    carrier: FinSet
    weights: np.ndarray
    tol: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        kernel = StochMap(FinSet.one_point(), self.carrier, np.array([self.weights]), self.tol)
        object.__setattr__(self, "weights", kernel.rows[0])

    def as_kernel(self) -> StochMap:
        return StochMap(FinSet.one_point(), self.carrier, np.array([self.weights]), self.tol)

    @classmethod
    def point_mass(cls, carrier: FinSet, index: int, exact: bool = True) -> "FinDist":
        weights = _zeros(carrier.size, exact)
        weights[index] = _one(exact)
        return cls(carrier, weights)

    @classmethod
    def uniform(cls, carrier: FinSet, exact: bool = True) -> "FinDist":
        value = Fraction(1, carrier.size) if exact else 1.0 / carrier.size
        return cls(carrier, np.array([value] * carrier.size, dtype=object if exact else float))


@dataclass(frozen=True)
class MarkovGenerators:
    copy: StochMap
    delete: StochMap
    swap: StochMap


# ---------------------------------------------------------------- category plumbing

def kernels_close(p: StochMap, q: StochMap) -> bool:
    if p.dom != q.dom or p.cod != q.cod:
        return False
    return _all_close(p.rows, q.rows, max(p.eps, q.eps))


def _same_rows(p: StochMap, q: StochMap) -> bool:
    """Compares rows only, for kernels whose carriers agree up to a canonical reindexing."""
    return _all_close(p.rows, q.rows, max(p.eps, q.eps))


def stoch_compose(p: StochMap, q: StochMap) -> StochMap:
    """The Chapman-Kolmogorov composite, p first."""
    if p.cod != q.dom:
        raise CarrierMismatchError("cannot compose kernels: p.cod differs from q.dom")
    left, right = _aligned_rows(p, q)
    rows = left @ right
    return StochMap(p.dom, q.cod, rows, _accumulated_tol(p, q))


def _aligned_rows(*maps: StochMap) -> list:
    """Row arrays in a common arithmetic; one float kernel makes the result float."""
    if all(m.exact for m in maps) or not any(m.exact for m in maps):
        return [m.rows for m in maps]
    return [m.rows.astype(float) for m in maps]


def _accumulated_tol(*maps: StochMap) -> float:
    return max(m.tol for m in maps)


def stoch_tensor(*maps: StochMap) -> StochMap:
    """The monoidal product on flat product carriers."""
    if not maps:
        raise InvalidStructureError("tensor needs at least one kernel")

    def outer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        block = np.multiply.outer(a, b).transpose(0, 2, 1, 3)
        return block.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    rows = reduce(outer, _aligned_rows(*maps))
    dom = FinSet.product(*(m.dom for m in maps))
    cod = FinSet.product(*(m.cod for m in maps))
    return StochMap(dom, cod, rows, _accumulated_tol(*maps))


def point_mass(B: FinSet, index: int, exact: bool = True) -> StochMap:
    """The kernel 1 -> B concentrated on one element."""
    return FinDist.point_mass(B, index, exact).as_kernel()


def uniform(B: FinSet, A: Optional[FinSet] = None, exact: bool = True) -> StochMap:
    """The kernel A -> B sending every element to the uniform distribution."""
    A = A or FinSet.one_point()
    row = FinDist.uniform(B, exact).weights
    return StochMap(A, B, np.array([row] * A.size, dtype=row.dtype))


def copy(A: FinSet, n: int = 2, exact: bool = True) -> StochMap:
    """copy^n : A -> A^⊗n, a to the point mass at (a, ..., a)."""
    target = FinSet.product(*([A] * n))
    return StochMap.from_function(
        FinFn(A, target, tuple(target.flat([a] * n) for a in range(A.size))), exact
    )


def delete(A: FinSet, exact: bool = True) -> StochMap:
    return StochMap.from_function(FinFn.constant(A, FinSet.one_point()), exact)


def swap_kernel(A: FinSet, B: FinSet, exact: bool = True) -> StochMap:
    P, Q = FinSet.product(A, B), FinSet.product(B, A)
    return StochMap.from_function(
        FinFn(P, Q, tuple(Q.flat((b, a)) for a, b in P.coords_table)), exact
    )


def markov_generators(A: FinSet, exact: bool = True) -> MarkovGenerators:
    return MarkovGenerators(copy(A, 2, exact), delete(A, exact), swap_kernel(A, A, exact))


def comonoid_laws(A: FinSet, exact: bool = True) -> dict:
    """Counit, coassociativity and cocommutativity of copy/delete on A, each as a bool."""
    gens = markov_generators(A, exact)
    identity = StochMap.identity(A, exact)
    left_counit = stoch_compose(gens.copy, stoch_tensor(gens.delete, identity))
    right_counit = stoch_compose(gens.copy, stoch_tensor(identity, gens.delete))
    left_assoc = stoch_compose(gens.copy, stoch_tensor(gens.copy, identity))
    right_assoc = stoch_compose(gens.copy, stoch_tensor(identity, gens.copy))
    return {
        "counit": _same_rows(left_counit, identity) and _same_rows(right_counit, identity),
        "coassociativity": _same_rows(left_assoc, right_assoc),
        "cocommutativity": kernels_close(stoch_compose(gens.copy, gens.swap), gens.copy),
    }


def delete_is_natural(f: StochMap) -> bool:
    return kernels_close(stoch_compose(f, delete(f.cod, f.exact)), delete(f.dom, f.exact))


def copy_is_natural(f: StochMap) -> bool:
    lhs = stoch_compose(f, copy(f.cod, 2, f.exact))
    rhs = stoch_compose(copy(f.dom, 2, f.exact), stoch_tensor(f, f))
    return _same_rows(lhs, rhs)


def has_point_mass_rows(f: StochMap) -> bool:
    one = _one(f.exact)
    return all(bool(one - row.max() <= f.eps) for row in f.rows)


def is_deterministic(f: StochMap) -> bool:
    """
    Every row is a point mass (within the kernel's tolerance).

    Exact kernels also check copy-naturality and raise ConsistencyError if the
    two readings disagree. Within a float tolerance copy-naturality is the
    looser test: [[0.89, 0.11]] commutes with copy within 0.1 but is no point mass.
    """
    point_masses = has_point_mass_rows(f)
    if f.exact:
        natural = copy_is_natural(f)
        if natural != point_masses:
            raise ConsistencyError(
                f"copy-naturality ({natural}) and point-mass rows ({point_masses}) disagree"
            )
    return point_masses


def is_mono_stoch(m: StochMap) -> bool:
    """Distinct inputs have distinguishable output distributions."""
    for a in range(m.dom.size):
        for b in range(a + 1, m.dom.size):
            if _all_close(m.rows[a], m.rows[b], m.eps):
                return False
    return True


# ---------------------------------------------------------------- marginals and joints

def _keep_carrier(factors: Sequence[FinSet]) -> FinSet:
    if not factors:
        return FinSet.one_point()
    if len(factors) == 1:
        return factors[0]
    return FinSet.product(*factors)


def marginalize(m: StochMap, keep: Iterable[int]) -> StochMap:
    """Sums out every codomain factor not in `keep` (0-based indices)."""
    factors = m.cod.factors
    if factors is None:
        raise FactorStructureError("marginalization needs factor structure on the codomain")
    keep = sorted(set(keep))
    if any(not 0 <= k < len(factors) for k in keep):
        raise FactorStructureError(f"factor indices {keep} out of range for {len(factors)} factors")
    if len(keep) == len(factors):
        return m
    cube = m.rows.reshape((m.dom.size,) + m.cod.factor_shape)
    dropped = tuple(k + 1 for k in range(len(factors)) if k not in keep)
    summed = cube.sum(axis=dropped)
    target = _keep_carrier([factors[k] for k in keep])
    return StochMap(m.dom, target, summed.reshape(m.dom.size, target.size), m.tol)


def code_kernel(m: StochMap, i: int) -> StochMap:
    """m_i: the i-th code marginal."""
    return marginalize(m, [i])


def _product_of_marginals(joint: np.ndarray) -> np.ndarray:
    marginals = [
        joint.sum(axis=tuple(k for k in range(joint.ndim) if k != axis))
        for axis in range(joint.ndim)
    ]
    return reduce(np.multiply.outer, marginals)


def is_projectable(m: StochMap) -> bool:
    """Conditioned on each input, the code joint equals the product of its marginals."""
    shape = m.cod.factor_shape
    if shape is None:
        raise FactorStructureError("projectability needs factor structure on the codomain")
    for row in m.rows:
        joint = row.reshape(shape)
        if not _all_close(joint, _product_of_marginals(joint), m.eps):
            return False
    return True


def check_cond_independence(f: StochMap) -> bool:
    """
    Whether f: A -> X⊗W⊗Y displays X ⊥ Y | W: for every a and every w with
    p(w|a) > eps, p(x,y|w,a) = p(x|w,a) p(y|w,a) within eps.
    States with p(w|a) <= eps impose nothing.
    """
    shape = f.cod.factor_shape
    if shape is None or len(shape) != 3:
        raise FactorStructureError("conditional independence needs a ternary codomain X⊗W⊗Y")
    for row in f.rows:
        joint = row.reshape(shape)
        p_w = joint.sum(axis=(0, 2))
        for w, mass in enumerate(p_w):
            if not mass > f.eps:
                continue
            conditional = joint[:, w, :] / mass
            product = np.multiply.outer(conditional.sum(axis=1), conditional.sum(axis=0))
            if not _all_close(conditional, product, f.eps):
                return False
    return True


def _split_code(m: StochMap, i: int):
    factors = m.cod.require_factors("codomain")
    rest = [f for k, f in enumerate(factors) if k != i]
    return factors[i], _keep_carrier(rest)


def regroup(m: StochMap, i: int) -> StochMap:
    """⟨m, id⟩ rearranged as Y -> Z_i ⊗ Y ⊗ Z∖i."""
    Zi, rest = _split_code(m, i)
    Y = m.dom
    target = FinSet.product(Zi, Y, rest)
    rows = _zeros((Y.size, target.size), m.exact)
    for y in range(Y.size):
        for z, p in enumerate(m.rows[y]):
            coords = m.cod.coords(z)
            rest_index = m.cod.rest_index(coords, i)
            rows[y, target.flat((coords[i], y, rest_index))] += p
    return StochMap(Y, target, rows, m.tol)


def prior_joint(m: StochMap, i: int, prior: Optional[FinDist] = None) -> StochMap:
    """The state 1 -> Z_i ⊗ Y ⊗ Z∖i obtained by feeding a prior on Y through regroup(m, i)."""
    prior = prior or FinDist.uniform(m.dom, m.exact)
    if prior.carrier != m.dom:
        raise CarrierMismatchError("the prior must live on the encoder's domain")
    return stoch_compose(prior.as_kernel(), regroup(m, i))


def codes_independent_given_factors(m: StochMap) -> bool:
    """Z_i ⊥ Z∖i | Y for every i, read off regroup(m, i)."""
    n = len(m.cod.require_factors("codomain"))
    return all(check_cond_independence(regroup(m, i)) for i in range(n))


# ---------------------------------------------------------------- modularity

def _require_matching_factors(m: StochMap) -> int:
    if m.dom.factors is None or m.cod.factors is None:
        raise FactorStructureError("needs factor structure on both domain and codomain")
    if m.dom.n_factors != m.cod.n_factors:
        raise FactorStructureError(
            f"factor counts differ: {m.dom.n_factors} in, {m.cod.n_factors} out"
        )
    return m.dom.n_factors


def is_modular_stoch(m: StochMap) -> bool:
    """Every code marginal m_i(·|y) depends on y only through y_i."""
    n = _require_matching_factors(m)
    Y = m.dom
    for i in range(n):
        rows = code_kernel(m, i).rows
        reference = {}
        for y, coords in enumerate(Y.coords_table):
            first = reference.setdefault(coords[i], y)
            if not _all_close(rows[y], rows[first], m.eps):
                return False
    return True


def is_componentwise(m: StochMap) -> Optional[list]:
    """Components m_{i,i}(z_i|y_i) with m_i = m_{i,i} ⊗ delete, or None."""
    n = _require_matching_factors(m)
    Y = m.dom
    components = []
    for i in range(n):
        marginal = code_kernel(m, i)
        rows = [marginal.rows[Y.flat([a if k == i else 0 for k in range(n)])]
                for a in range(Y.factors[i].size)]
        component = StochMap(Y.factors[i], m.cod.factors[i], np.array(rows, dtype=marginal.rows.dtype), m.tol)
        through_projection = stoch_compose(StochMap.from_function(projection(Y, i), m.exact, m.tol), component)
        if not _same_rows(through_projection, marginal):
            return None
        components.append(component)
    return components


# ---------------------------------------------------------------- witnesses

def marginals_witness() -> tuple:
    """Two joints on {0,1}⊗{0,1} with equal uniform marginals: independent and perfectly correlated."""
    bit = FinSet.range(2)
    independent = uniform(FinSet.product(bit, bit))
    half = Fraction(1, 2)
    correlated = StochMap(
        FinSet.one_point(), FinSet.product(bit, bit),
        np.array([[half, Fraction(0), Fraction(0), half]], dtype=object),
    )
    return independent, correlated


def pushforward(p: FinDist, f: FinFn) -> FinDist:
    if f.dom != p.carrier:
        raise CarrierMismatchError("pushforward needs f.dom to be the distribution's carrier")
    kernel = stoch_compose(p.as_kernel(), StochMap.from_function(f, p.weights.dtype == object, p.tol))
    return FinDist(f.cod, kernel.rows[0], p.tol)


def is_measure_preserving(pA: FinDist, f: FinFn, pB: FinDist) -> bool:
    if f.dom != pA.carrier or f.cod != pB.carrier:
        raise CarrierMismatchError("f must run from pA's carrier to pB's carrier")
    pushed = pushforward(pA, f)
    eps = max(0 if pA.weights.dtype == object else pA.tol, 0 if pB.weights.dtype == object else pB.tol)
    return _all_close(pushed.weights, pB.weights, eps)


def random_kernel(dom: FinSet, cod: FinSet, rng, max_weight: int = 4, sparsity: float = 0.3) -> StochMap:
    """An exact kernel with integer weights in [0, max_weight], normalized row by row."""
    rows = []
    for _ in range(dom.size):
        weights = [0 if rng.random() < sparsity else rng.randint(1, max_weight) for _ in range(cod.size)]
        if not any(weights):
            weights[rng.randrange(cod.size)] = 1
        total = sum(weights)
        rows.append([Fraction(w, total) for w in weights])
    return StochMap(dom, cod, np.array(rows, dtype=object))
