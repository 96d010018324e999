# modules/gallery.py
"""
Worked examples with golden verdicts: four encoders between finite sets, a
correlated stochastic encoder, the three-frame scene counters, and a
constant action model.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from instances import schemas
from modules import algact, finstoch, multiset
from modules.checker import Instance
from modules.finset import FinFn, FinSet

BIT = FinSet.of("0", "1")
FACTORS = FinSet.product(BIT, BIT)

# Relabels Y onto an unstructured observation set X; any bijection works.
_RELABEL = (2, 0, 3, 1)


@dataclass(frozen=True, eq=False)
class GalleryEntry:
    name: str
    instance: Instance
    expected: dict
    expected_flags: dict = field(default_factory=dict)
    description: str = ""


def _observations(Y: FinSet) -> tuple:
    X = FinSet.range(Y.size, prefix="x")
    g = FinFn(Y, X, _RELABEL if Y.size == len(_RELABEL) else tuple(range(Y.size)))
    return X, g


def _set_instance(name: str, Z: FinSet, encode, expected: dict) -> Instance:
    """Builds Y -> X -> Z with g a relabeling and f∘g = m, where m(y) = encode(coords of y)."""
    Y = FACTORS
    X, g = _observations(Y)
    m = [Z.flat(encode(Y.coords(y))) for y in range(Y.size)]
    table = [0] * X.size
    for y, x in enumerate(g.map):
        table[x] = m[y]
    return Instance(schemas.SET, Y, X, Z, g, FinFn(X, Z, tuple(table)), name, dict(expected))


def constant_instance() -> GalleryEntry:
    point = FinSet.one_point()
    Z = FinSet.product(point, point)
    expected = {"D1.a": "holds", "D1.b": "holds", "pullback": "holds", "D1.c": "fails", "D1.d": "fails"}
    inst = _set_instance("Constant", Z, lambda y: (0, 0), expected)
    return GalleryEntry("Constant", inst, expected, {"mono": False},
                        "every code is constant: perfectly modular and useless")


def rotation_instance() -> GalleryEntry:
    expected = {"D1.a": "fails", "D1.c": "holds", "D1.c'": "holds", "D1.d": "fails"}
    inst = _set_instance("Rotation", FACTORS, lambda y: (y[0] ^ y[1], y[1]), expected)
    return GalleryEntry("Rotation", inst, expected, {"iso": True},
                        "an invertible shear over GF(2): explicit but not modular")


def duplicate_instance() -> GalleryEntry:
    Z = FinSet.product(FACTORS, FACTORS)
    expected = {"D1.a": "fails", "D1.c": "holds", "D1.d": "holds", "D1.e(1,2)": "fails", "D1.e": "fails"}
    inst = _set_instance("Duplicate", Z, lambda y: (FACTORS.flat(y), FACTORS.flat(y)), expected)
    return GalleryEntry("Duplicate", inst, expected, {"mono": True},
                        "both codes copy the whole factor pair; decodable by projections")


def redundancy_instance() -> GalleryEntry:
    Z = FinSet.product(FACTORS, BIT)
    expected = {"D1.a": "holds", "D1.c": "holds", "D1.d": "holds"}
    inst = _set_instance("Redundancy", Z, lambda y: (FACTORS.flat((y[0], y[0])), y[1]), expected)
    return GalleryEntry("Redundancy", inst, expected, {"epi": False},
                        "the first factor is stored twice: modular and explicit, not surjective")


def correlated_joint_instance() -> GalleryEntry:
    Y = FACTORS
    X, g_fn = _observations(Y)
    half = Fraction(1, 2)
    row = [half, Fraction(0), Fraction(0), half]
    Z = FinSet.product(BIT, BIT)
    g = finstoch.StochMap.from_function(g_fn)
    f = finstoch.StochMap(X, Z, np.array([row] * X.size, dtype=object))
    expected = {"D5.a": "fails", "D5.b": "fails", "D5.c": "holds", "D5.d": "holds"}
    inst = Instance(schemas.STOCH, Y, X, Z, g, f, "CorrelatedJoint", expected)
    return GalleryEntry("CorrelatedJoint", inst, expected, {"deterministic": False},
                        "codes ignore the factors and are perfectly correlated with each other")


def _scene_instance(name: str, counter: multiset.MultiFn, verdict: str, description: str) -> GalleryEntry:
    system = multiset.scene_system()
    expected = {"count.invariant": verdict}
    inst = Instance(schemas.COUNT, system.states, system.states, counter.cod, system, counter, name, expected)
    return GalleryEntry(name, inst, expected, {}, description)


def scene_count_instance() -> GalleryEntry:
    return _scene_instance("SceneCount", multiset.color_counter(), "holds",
                           "counting objects per color ignores the moving circle")


def scene_bucket_instance() -> GalleryEntry:
    return _scene_instance("SceneBucket", multiset.position_counter(), "fails",
                           "counting objects per vertical bucket follows the circle")


def flip_action(monoid: algact.MonoidTable = None) -> algact.SchemeModel:
    """Z2 acting on {0,1} by bit flip."""
    monoid = monoid or algact.cyclic_monoid(2)
    return algact.action_from_callable(monoid, BIT, lambda a, x: (x + a) % 2)


def constant_action_instance() -> GalleryEntry:
    z2 = algact.cyclic_monoid(2)
    scheme = algact.ProductScheme(z2, z2)
    F_Y = algact.componentwise_model(scheme, flip_action(z2), flip_action(z2))
    F_Z = algact.constant_model(scheme)
    g = algact.EquivariantMap(F_Y, F_Y, {obj: FinFn.identity(F_Y.carrier(obj)) for obj in scheme.objects})
    f = algact.EquivariantMap(F_Y, F_Z, {
        obj: FinFn.constant(F_Y.carrier(obj), F_Z.carrier(obj)) for obj in scheme.objects
    })
    expected = {"D2": "holds", "D2'": "holds", "D3": "holds", "D3.a": "holds", "D3.b": "fails", "D3.c": "fails"}
    inst = Instance(schemas.ACTION, F_Y, F_Y, F_Z, g, f, "ConstantAction", expected)
    return GalleryEntry("ConstantAction", inst, expected, {"F_Y_faithful": True},
                        "the constant functor: natural and product-preserving, never faithful")


def gallery() -> list:
    return [
        constant_instance(),
        rotation_instance(),
        duplicate_instance(),
        redundancy_instance(),
        correlated_joint_instance(),
        scene_count_instance(),
        scene_bucket_instance(),
        constant_action_instance(),
    ]


def gallery_entry(name: str) -> GalleryEntry:
    for entry in gallery():
        if entry.name == name:
            return entry
    raise KeyError(name)
