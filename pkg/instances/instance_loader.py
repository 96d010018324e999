# instances/instance_loader.py
"""
Reads instance files (JSON, schema documented in instances/README.md) into
checker Instances and magma tables, and moves Reports to and from JSON.
"""

import json
import os

from instances import schemas
from instances.input_validator import InstanceValidator
from modules import algact, finrel, finstoch, multiset
from modules.checker import Instance, Report
from modules.errors import DisentangleError, InstanceFileError
from modules.finset import FinFn, FinSet
from modules.logging_manager import get_logger


class InstanceLoader:
    """
    Turns instance files into checker inputs.

    Args:
        arithmetic: "exact" (rationals) or "float" for stochastic entries
        tolerance: comparison tolerance for float kernels
        max_denominator: bound used when reading decimals as rationals
    """

    def __init__(self, arithmetic=finstoch.EXACT, tolerance=finstoch.DEFAULT_TOLERANCE, max_denominator=10 ** 6):
        self.arithmetic = arithmetic
        self.tolerance = tolerance
        self.max_denominator = max_denominator
        self.logger = get_logger()

    # ------------------------------------------------------------ files

    def read_json(self, path):
        if not os.path.exists(path):
            raise InstanceFileError(f"File not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InstanceFileError(f"{path}: invalid JSON ({e})") from e
        except OSError as e:
            raise InstanceFileError(f"{path}: {e}") from e

    def load_instance(self, path):
        data = self.read_json(path)
        default_name = os.path.splitext(os.path.basename(path))[0]
        try:
            return self.parse_instance(data, default_name)
        except InstanceFileError as e:
            raise InstanceFileError(f"{path}: {e}") from e

    def load_magma(self, path):
        data = self.read_json(path)
        try:
            self._require(InstanceValidator.validate_format_version(data.get("format_version")))
            if "magma" not in data:
                raise InstanceFileError("Missing \"magma\" table")
            return self.parse_magma(data["magma"])
        except InstanceFileError as e:
            raise InstanceFileError(f"{path}: {e}") from e

    # ------------------------------------------------------------ parsing

    @staticmethod
    def _require(result):
        valid, message = result
        if not valid:
            raise InstanceFileError(message)

    def parse_instance(self, data, default_name="instance"):
        if not isinstance(data, dict):
            raise InstanceFileError("An instance file must hold a JSON object")
        self._require(InstanceValidator.validate_format_version(data.get("format_version")))
        category = data.get("category")
        self._require(InstanceValidator.validate_category(category))
        expected = data.get("expected", {})
        self._require(InstanceValidator.validate_expected(expected))
        name = data.get("name", default_name)
        self.logger.debug(f"InstanceLoader: parsing {category} instance {name}")
        try:
            builder = {
                schemas.SET: self._parse_set_instance,
                schemas.REL: self._parse_rel_instance,
                schemas.STOCH: self._parse_stoch_instance,
                schemas.ACTION: self._parse_action_instance,
                schemas.COUNT: self._parse_count_instance,
            }[category]
            Y, X, Z, g, f = builder(data)
            return Instance(category, Y, X, Z, g, f, name, dict(expected))
        except InstanceFileError:
            raise
        except DisentangleError as e:
            raise InstanceFileError(str(e)) from e
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InstanceFileError(f"Malformed {category} instance: {e!r}") from e

    def parse_sets(self, definitions):
        """Resolves named set definitions; products refer to other names."""
        if not isinstance(definitions, dict) or not definitions:
            raise InstanceFileError("\"sets\" must be a non-empty object")
        resolved = {}

        def resolve(name, trail):
            if name in resolved:
                return resolved[name]
            if name not in definitions:
                raise InstanceFileError(f"Unknown set {name!r}")
            if name in trail:
                raise InstanceFileError(f"Set {name!r} is defined in terms of itself")
            entry = definitions[name]
            if isinstance(entry, list):
                entry = {"labels": entry}
            if "factors" in entry:
                factors = [resolve(factor, trail + (name,)) for factor in entry["factors"]]
                if not factors:
                    raise InstanceFileError(f"Set {name!r} has an empty factor list")
                result = FinSet.product(*factors)
            else:
                self._require(InstanceValidator.validate_labels(entry.get("labels")))
                result = FinSet(tuple(str(label) for label in entry["labels"]))
            resolved[name] = result
            return result

        for name in definitions:
            resolve(name, ())
        return resolved

    def _carriers(self, data):
        sets = self.parse_sets(data.get("sets"))
        names = [data.get(key, key) for key in ("Y", "X", "Z")]
        for name in names:
            if name not in sets:
                raise InstanceFileError(f"Carrier {name!r} is not defined under \"sets\"")
        return sets, [sets[name] for name in names]

    @staticmethod
    def _morphism(data, name):
        morphisms = data.get("morphisms", {})
        if name not in morphisms:
            raise InstanceFileError(f"Missing morphism {name!r}")
        return morphisms[name]

    @staticmethod
    def parse_function(dom, cod, mapping):
        if isinstance(mapping, dict) and "map" in mapping:
            mapping = mapping["map"]
        if not isinstance(mapping, dict):
            raise InstanceFileError("A function is written as {\"map\": {label: label}}")
        return FinFn.from_labels(dom, cod, {str(k): str(v) for k, v in mapping.items()})

    def _parse_set_instance(self, data):
        _, (Y, X, Z) = self._carriers(data)
        g = self.parse_function(Y, X, self._morphism(data, "g"))
        f = self.parse_function(X, Z, self._morphism(data, "f"))
        return Y, X, Z, g, f

    @staticmethod
    def parse_relation(dom, cod, entry):
        pairs = entry.get("pairs") if isinstance(entry, dict) else entry
        if not isinstance(pairs, list):
            raise InstanceFileError("A relation is written as {\"pairs\": [[label, label], ...]}")
        for pair in pairs:
            if not isinstance(pair, list) or len(pair) != 2:
                raise InstanceFileError(f"Relation pair {pair!r} must have two labels")
        return finrel.FinRel.from_pairs(dom, cod, [(str(a), str(b)) for a, b in pairs])

    def _parse_rel_instance(self, data):
        _, (Y, X, Z) = self._carriers(data)
        g = self.parse_relation(Y, X, self._morphism(data, "g"))
        f = self.parse_relation(X, Z, self._morphism(data, "f"))
        return Y, X, Z, g, f

    def parse_kernel(self, dom, cod, entry):
        """Rows as a list of lists in label order, or as {dom label: {cod label: probability}}."""
        rows = entry.get("rows") if isinstance(entry, dict) else entry
        if isinstance(rows, dict):
            table = []
            for label in dom.labels:
                if label not in rows:
                    raise InstanceFileError(f"Kernel row for {label!r} is missing")
                row = ["0"] * cod.size
                for target, p in rows[label].items():
                    row[cod.index(target)] = p
                table.append(row)
            rows = table
        if not isinstance(rows, list) or len(rows) != dom.size:
            raise InstanceFileError(f"A kernel needs {dom.size} rows")
        for row in rows:
            if not isinstance(row, list) or len(row) != cod.size:
                raise InstanceFileError(f"Every kernel row needs {cod.size} entries")
            for value in row:
                self._require(InstanceValidator.validate_probability(value))
        return finstoch.StochMap.from_rows(dom, cod, rows, self.arithmetic, self.tolerance, self.max_denominator)

    def _parse_stoch_instance(self, data):
        _, (Y, X, Z) = self._carriers(data)
        g = self.parse_kernel(Y, X, self._morphism(data, "g"))
        f = self.parse_kernel(X, Z, self._morphism(data, "f"))
        return Y, X, Z, g, f

    def parse_magma(self, entry, cls=algact.MagmaTable):
        elements = entry.get("elements")
        self._require(InstanceValidator.validate_labels(elements))
        elements = [str(e) for e in elements]
        table = entry.get("table")
        self._require(InstanceValidator.validate_table(table, len(elements)))
        unit = str(entry.get("unit", elements[0]))
        if unit not in elements:
            raise InstanceFileError(f"Unit {unit!r} is not an element")
        try:
            rows = [[elements.index(str(v)) for v in row] for row in table]
        except ValueError as e:
            raise InstanceFileError(f"Operation table refers to an unknown element: {e}") from e
        return cls(tuple(elements), tuple(tuple(r) for r in rows), elements.index(unit))

    def _parse_monoids(self, data):
        monoids = {}
        for name, entry in data.get("monoids", {}).items():
            monoid = self.parse_magma(entry, algact.MonoidTable)
            valid, message = algact.validate_monoid(monoid)
            if not valid:
                raise InstanceFileError(f"Monoid {name!r} is not a monoid: {message}")
            monoids[name] = monoid
        return monoids

    def _parse_single_action(self, monoid, carrier, entry):
        if entry is None:
            return algact.trivial_action(monoid, carrier)
        maps = []
        for element in monoid.elements:
            if element in entry:
                maps.append(self.parse_function(carrier, carrier, entry[element]))
            elif element == monoid.elements[monoid.unit]:
                maps.append(FinFn.identity(carrier))
            else:
                raise InstanceFileError(f"No action given for element {element!r}")
        return maps

    def _parse_model(self, scheme, sets, entry):
        if entry.get("constant"):
            return algact.constant_model(scheme)
        carriers = {obj: sets[entry["carriers"][obj]] for obj in (algact.S1, algact.S2)}
        actions = entry.get("actions", {})
        first = algact.action_model(scheme.m1, carriers[algact.S1],
                                    self._parse_single_action(scheme.m1, carriers[algact.S1], actions.get(algact.S1)))
        second = algact.action_model(scheme.m2, carriers[algact.S2],
                                     self._parse_single_action(scheme.m2, carriers[algact.S2], actions.get(algact.S2)))
        if entry.get("componentwise"):
            return algact.componentwise_model(scheme, first, second)
        joint = sets[entry["carriers"][algact.S12]]
        projections = entry.get("projections", {})
        if "q1" not in projections or "q2" not in projections:
            raise InstanceFileError("A model that is not componentwise needs projections q1 and q2")
        return algact.SchemeModel(
            scheme,
            {algact.S1: carriers[algact.S1], algact.S2: carriers[algact.S2], algact.S12: joint},
            {
                algact.S1: first.actions[algact.SINGLE_OBJECT],
                algact.S2: second.actions[algact.SINGLE_OBJECT],
                algact.S12: tuple(self._parse_single_action(scheme.product, joint, actions.get(algact.S12))),
            },
            (self.parse_function(joint, carriers[algact.S1], projections["q1"]),
             self.parse_function(joint, carriers[algact.S2], projections["q2"])),
        )

    def _parse_equivariant(self, source, target, entry):
        components = {}
        for obj in source.scheme.objects:
            if obj not in entry:
                raise InstanceFileError(f"Missing component at {obj}")
            components[obj] = self.parse_function(source.carrier(obj), target.carrier(obj), entry[obj])
        return algact.EquivariantMap(source, target, components)

    def _parse_action_instance(self, data):
        sets = self.parse_sets(data.get("sets"))
        monoids = self._parse_monoids(data)
        scheme_entry = data.get("scheme", {})
        try:
            scheme = algact.ProductScheme(monoids[scheme_entry["m1"]], monoids[scheme_entry["m2"]])
        except KeyError as e:
            raise InstanceFileError(f"The scheme refers to an unknown monoid {e}") from e
        models = data.get("models", {})
        F_Y, F_X, F_Z = (self._parse_model(scheme, sets, models[name]) for name in ("F_Y", "F_X", "F_Z"))
        g = self._parse_equivariant(F_Y, F_X, self._morphism(data, "g"))
        f = self._parse_equivariant(F_X, F_Z, self._morphism(data, "f"))
        return F_Y, F_X, F_Z, g, f

    def _parse_count_instance(self, data):
        sets = self.parse_sets(data.get("sets"))
        states = sets[data.get("states", "states")]
        system = multiset.TimedSystem(states, self.parse_function(states, states, data["step"]))
        counter = data["counter"]
        cod = sets[counter["cod"]]
        for row in counter["counts"].values():
            for n in row.values():
                self._require(InstanceValidator.validate_count(n))
        phi = multiset.MultiFn.from_counts(states, cod, counter["counts"])
        return states, states, cod, system, phi

    # ------------------------------------------------------------ reports

    @staticmethod
    def save_report(report, path):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(report.to_dict(), f, sort_keys=True, indent=2, ensure_ascii=False)

    @staticmethod
    def load_report(path):
        with open(path, "r", encoding="utf-8") as f:
            return Report.from_dict(json.load(f))


def instance_to_data(instance):
    """Writes a set, rel, stoch or count instance back into the file format."""
    def set_entry(carrier, names):
        if carrier.factors is None:
            return {"labels": list(carrier.labels)}
        return {"factors": [names[id(f)] for f in carrier.factors]}

    category = instance.category
    data = {"format_version": schemas.FORMAT_VERSION, "category": category, "name": instance.name}
    if category == schemas.ACTION:
        raise InstanceFileError("action instances are written by hand; see instances/examples")
    carriers = _collect_sets({"Y": instance.Y, "X": instance.X, "Z": instance.Z})
    names = {id(s): name for name, s in carriers.items()}
    data["sets"] = {name: set_entry(s, names) for name, s in carriers.items()}
    if category == schemas.COUNT:
        data["states"] = "Y"
        data["step"] = {"map": instance.g.step.as_dict()}
        data["counter"] = {
            "cod": "Z",
            "counts": {label: instance.f.row(label) for label in instance.Y.labels},
        }
    else:
        data["morphisms"] = {
            "g": _morphism_data(category, instance.g),
            "f": _morphism_data(category, instance.f),
        }
    if instance.expected:
        data["expected"] = dict(instance.expected)
    return data


def _collect_sets(named):
    """Gives every distinct set reachable through factors a name, top-level names first."""
    result = dict(named)
    seen = {id(s) for s in named.values()}
    queue = list(named.values())
    counter = 0
    while queue:
        carrier = queue.pop(0)
        for factor in carrier.factors or ():
            if id(factor) not in seen:
                seen.add(id(factor))
                result[f"S{counter}"] = factor
                counter += 1
                queue.append(factor)
    return result


def _morphism_data(category, morphism):
    if category == schemas.SET:
        return {"map": morphism.as_dict()}
    if category == schemas.REL:
        return {"pairs": [list(p) for p in morphism.pairs()]}
    return {"rows": [[str(p) for p in row] for row in morphism.rows]}

