# modules/multiset.py
"""
Counting maps: the Kleisli category of the nonempty multiset monad.

A MultiFn A -> B records, for every source a, how many ways there are to
reach each target b. Composition multiplies and sums counts.
"""

from dataclasses import dataclass

import numpy as np

from modules.errors import CarrierMismatchError, InvalidStructureError
from modules.finset import FinFn, FinSet, compose


@dataclass(frozen=True, eq=False)
class MultiFn:
    dom: FinSet
    cod: FinSet
    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.shape != (self.dom.size, self.cod.size):
            raise InvalidStructureError(
                f"count matrix of shape {counts.shape} does not match carriers "
                f"({self.dom.size}, {self.cod.size})"
            )
        if (counts < 0).any():
            raise InvalidStructureError("counts must be natural numbers")
        empty = [self.dom.labels[a] for a in range(self.dom.size) if not counts[a].any()]
        if empty:
            raise InvalidStructureError(f"rows for {empty} are empty multisets")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiFn):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and np.array_equal(self.counts, other.counts)

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.counts.tobytes()))

    @classmethod
    def from_counts(cls, dom: FinSet, cod: FinSet, counts: dict) -> "MultiFn":
        """counts: dom label -> {cod label: count}."""
        matrix = np.zeros((dom.size, cod.size), dtype=np.int64)
        for a, row in counts.items():
            for b, n in row.items():
                matrix[dom.index(a), cod.index(b)] = int(n)
        return cls(dom, cod, matrix)

    @classmethod
    def from_function(cls, f: FinFn) -> "MultiFn":
        counts = np.zeros((f.dom.size, f.cod.size), dtype=np.int64)
        counts[np.arange(f.dom.size), list(f.map)] = 1
        return cls(f.dom, f.cod, counts)

    def row(self, label: str) -> dict:
        a = self.dom.index(label)
        return {self.cod.labels[b]: int(n) for b, n in enumerate(self.counts[a]) if n}


def mset_identity(A: FinSet) -> MultiFn:
    return MultiFn(A, A, np.eye(A.size, dtype=np.int64))


def mset_compose(f: MultiFn, g: MultiFn) -> MultiFn:
    """f first, then g."""
    if f.cod != g.dom:
        raise CarrierMismatchError("cannot compose counting maps: f.cod differs from g.dom")
    return MultiFn(f.dom, g.cod, f.counts @ g.counts)


@dataclass(frozen=True)
class TimedSystem:
    """Discrete-time dynamics: ℕ acting on the states through powers of `step`."""
    states: FinSet
    step: FinFn

    def __post_init__(self):
        if self.step.dom != self.states or self.step.cod != self.states:
            raise InvalidStructureError("step must be an endomap of the states")


def step_power(sys: TimedSystem, k: int) -> FinFn:
    result = FinFn.identity(sys.states)
    for _ in range(k):
        result = compose(result, sys.step)
    return result


def is_invariant_counter(phi: MultiFn, sys: TimedSystem) -> bool:
    """φ∘step = φ; the generator square suffices for every power of step."""
    if phi.dom != sys.states:
        raise CarrierMismatchError("the counter must be defined on the system's states")
    return mset_compose(MultiFn.from_function(sys.step), phi) == phi


# ---------------------------------------------------------------- the three-frame scene

SCENE_FRAMES = ("frame1", "frame2", "frame3")
SCENE_COLORS = ("red", "green", "blue")
SCENE_BUCKETS = ("top", "middle", "bottom")

# Objects per frame: two red shapes, one green, one blue. The red circle moves
# top -> middle -> bottom while the other shapes stay put (one top, two bottom).
_CIRCLE_ROW = {"frame1": "top", "frame2": "middle", "frame3": "bottom"}
_STATIC_ROWS = ("top", "bottom", "bottom")


def scene_system() -> TimedSystem:
    """Three frames cycling frame1 -> frame2 -> frame3 -> frame1."""
    states = FinSet(SCENE_FRAMES)
    return TimedSystem(states, FinFn(states, states, (1, 2, 0)))


def color_counter() -> MultiFn:
    """Counts objects per color; the same multiset in every frame."""
    states, colors = FinSet(SCENE_FRAMES), FinSet(SCENE_COLORS)
    return MultiFn.from_counts(states, colors, {
        frame: {"red": 2, "green": 1, "blue": 1} for frame in SCENE_FRAMES
    })


def position_counter() -> MultiFn:
    """Counts objects per vertical bucket; follows the moving circle."""
    states, buckets = FinSet(SCENE_FRAMES), FinSet(SCENE_BUCKETS)
    counts = {}
    for frame in SCENE_FRAMES:
        row = {bucket: 0 for bucket in SCENE_BUCKETS}
        for bucket in _STATIC_ROWS + (_CIRCLE_ROW[frame],):
            row[bucket] += 1
        counts[frame] = row
    return MultiFn.from_counts(states, buckets, counts)
