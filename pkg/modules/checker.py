# modules/checker.py
"""
Evaluates the disentanglement definitions on one instance (Y, X, Z, g, f) in
its declared category and assembles a Report.

Instance carriers by category:
    set, rel, stoch: Y, X, Z are FinSets; g, f are FinFn / FinRel / StochMap
    action:          Y, X, Z are SchemeModels of a ProductScheme; g, f are EquivariantMaps
    count:           Y = X = the states; g is the TimedSystem, f the MultiFn counter
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional

from instances import schemas
from modules import algact, finrel, finset, finstoch, multiset
from modules.errors import (
    CarrierMismatchError,
    ConsistencyError,
    FactorStructureError,
    InvalidStructureError,
)
from modules.logging_manager import get_logger
from modules.search import DEFAULT_SEARCH_BUDGET, SearchOutcome, Verdict

FINSTOCH_IDENTIFICATION_NOTE = (
    "D5.c and D5.d are computed independently and coincide for finite stochastic maps; "
    "this identification is specific to finite kernels"
)
REL_EXPLICITNESS_NOTE = "explicitness is not defined for relations; only factorability is reported"


@dataclass(frozen=True)
class CheckConfig:
    """
    budget caps each witness search. tolerance, when set, replaces the
    tolerance float kernels were loaded with; exact kernels ignore it.
    """
    budget: int = DEFAULT_SEARCH_BUDGET
    tolerance: Optional[float] = None


@dataclass(frozen=True, eq=False)
class Instance:
    category: str
    Y: object
    X: object
    Z: object
    g: object
    f: object
    name: str = "instance"
    expected: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.category not in schemas.CATEGORIES:
            raise InvalidStructureError(f"unknown category {self.category!r}")
        if self.category in (schemas.SET, schemas.REL, schemas.STOCH):
            if self.Y.factors is None or self.Z.factors is None:
                raise FactorStructureError("Y and Z must carry factor structure")
            if self.Y.n_factors != self.Z.n_factors:
                raise FactorStructureError(
                    f"Y has {self.Y.n_factors} factors but Z has {self.Z.n_factors}"
                )
            if self.g.dom != self.Y or self.g.cod != self.X:
                raise CarrierMismatchError("g must run from Y to X")
            if self.f.dom != self.X or self.f.cod != self.Z:
                raise CarrierMismatchError("f must run from X to Z")
        elif self.category == schemas.ACTION:
            for name, model in (("F_Y", self.Y), ("F_X", self.X), ("F_Z", self.Z)):
                if not isinstance(model.scheme, algact.ProductScheme):
                    raise InvalidStructureError(f"{name} must be a model of a product scheme")
                ok, message = algact.validate_model(model)
                if not ok:
                    raise InvalidStructureError(f"{name} is not a functor: {message}")
            if self.g.source is not self.Y or self.g.target is not self.X:
                raise CarrierMismatchError("g must run from F_Y to F_X")
            if self.f.source is not self.X or self.f.target is not self.Z:
                raise CarrierMismatchError("f must run from F_X to F_Z")
        elif self.category == schemas.COUNT:
            if self.f.dom != self.g.states:
                raise CarrierMismatchError("the counter must be defined on the system's states")


@dataclass
class Report:
    instance: str
    category: str
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def set(self, definition: str, verdict: Verdict, witness=None, note: Optional[str] = None):
        if definition in self.verdicts:
            raise ConsistencyError(f"definition {definition} evaluated twice")
        self.verdicts[definition] = verdict
        if witness is not None:
            self.witnesses[definition] = witness
        if note:
            self.notes.append(f"{definition}: {note}")

    def verdict(self, definition: str) -> Optional[Verdict]:
        return self.verdicts.get(definition)

    def holds(self, definition: str) -> bool:
        return self.verdicts.get(definition) is Verdict.HOLDS

    def fails(self, definition: str) -> bool:
        return self.verdicts.get(definition) is Verdict.FAILS

    def any_failed(self) -> bool:
        return any(v is Verdict.FAILS for v in self.verdicts.values())

    def mismatches(self, expected: dict) -> list:
        """(definition, expected, actual) for every expectation the report does not meet."""
        result = []
        for definition, wanted in sorted(expected.items()):
            actual = self.verdicts.get(definition)
            if actual is None or actual.value != str(wanted):
                result.append((definition, str(wanted), actual.value if actual else "missing"))
        return result

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "category": self.category,
            "verdicts": {k: v.value for k, v in self.verdicts.items()},
            "witnesses": dict(self.witnesses),
            "warnings": list(self.warnings),
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(
            instance=data["instance"],
            category=data["category"],
            verdicts={k: Verdict(v) for k, v in data.get("verdicts", {}).items()},
            witnesses=dict(data.get("witnesses", {})),
            warnings=list(data.get("warnings", [])),
            flags=dict(data.get("flags", {})),
            notes=list(data.get("notes", [])),
        )


# ---------------------------------------------------------------- witness rendering

def _fn_data(f: finset.FinFn) -> dict:
    return f.as_dict()


def _rel_data(r: finrel.FinRel) -> list:
    return [list(p) for p in r.pairs()]


def _stoch_data(m: finstoch.StochMap) -> dict:
    return {
        m.dom.labels[x]: {m.cod.labels[z]: str(p) for z, p in enumerate(row) if p != 0}
        for x, row in enumerate(m.rows)
    }


def _budget_note(outcome: SearchOutcome) -> Optional[str]:
    if outcome.status is Verdict.UNDECIDED:
        return "; ".join(outcome.notes) or "search budget exceeded"
    return None


# ---------------------------------------------------------------- selections

def resolve_selection(category: str, selection: Optional[Iterable[str]]) -> list:
    if selection is None:
        return list(schemas.DEFAULT_SELECTIONS[category])
    chosen = []
    for definition in selection:
        definition = definition.strip()
        if not definition:
            continue
        if definition not in schemas.ALL_DEFINITIONS and not schemas.is_pair_definition(definition):
            raise InvalidStructureError(f"unknown definition {definition!r}")
        if definition not in chosen:
            chosen.append(definition)
    return chosen


def _applicable(category: str, definition: str) -> bool:
    if schemas.is_pair_definition(definition):
        return category == schemas.SET
    return definition in schemas.DEFINITIONS_BY_CATEGORY[category]


# ---------------------------------------------------------------- per-category evaluation

def _evaluate_set(inst: Instance, selected: list, config: CheckConfig, report: Report):
    logger = get_logger()
    m = finset.compose(inst.g, inst.f)
    kind = finset.classify_morphism(m)
    report.flags.update({"mono": kind.mono, "epi": kind.epi, "iso": kind.iso})
    if not finset.classify_morphism(inst.g).mono:
        report.warnings.append("Assumption 2 violated: g is not injective")
    n = inst.Y.n_factors
    information = []

    for definition in selected:
        logger.log_definition(inst.name, definition)
        if definition == "D1":
            report.set("D1", Verdict.HOLDS)
        elif definition == "D1.a":
            components = finset.is_product_morphism(m)
            witness = None
            if components is not None:
                witness = [_fn_data(c) for c in components.components]
            report.set("D1.a", Verdict.of(components is not None), witness)
        elif definition == "D1.b":
            report.set("D1.b", Verdict.of(all(finset.transpose_is_constant(m, i) for i in range(n))))
        elif definition == "pullback":
            report.set("pullback", Verdict.of(all(finset.invariance_via_pullback(m, i) for i in range(n))))
        elif definition == "D1.c":
            outcome = finset.find_retraction(m, config.budget)
            witness = _fn_data(outcome.witness) if outcome.found else None
            report.set("D1.c", outcome.status, witness, _budget_note(outcome))
        elif definition == "D1.c'":
            if inst.Y.factor_shape != inst.Z.factor_shape:
                report.set("D1.c'", Verdict.NOT_APPLICABLE,
                           note="needs Z to have the same factor structure as Y")
            else:
                outcome = finset.find_retraction(m, config.budget)
                inverse = outcome.found and finset.is_inverse(m, outcome.witness)
                report.set("D1.c'", Verdict.of(inverse) if outcome.decided else outcome.status,
                           note=_budget_note(outcome))
        elif definition == "D1.d":
            outcome = finset.find_modular_retraction(m, config.budget)
            witness = [_fn_data(c) for c in outcome.witness.components] if outcome.found else None
            report.set("D1.d", outcome.status, witness, _budget_note(outcome))
        elif definition == "D1.e" or schemas.is_pair_definition(definition):
            _evaluate_missing_information(m, definition, config, report, information)
        else:
            report.set(definition, Verdict.NOT_APPLICABLE)


def _evaluate_missing_information(m, definition: str, config: CheckConfig, report: Report, cache: list):
    """Fills D1.e and its per-pair entries; `cache` holds the matrix once computed."""
    if not cache:
        cache.append(finset.missing_information_search(m, config.budget))
    matrix = cache[0]
    if definition == "D1.e":
        for i in range(matrix.size):
            for j in range(matrix.size):
                key = schemas.pair_definition(i, j)
                if i != j and key not in report.verdicts:
                    witness = matrix.witnesses.get((i, j))
                    report.set(key, matrix.entry(i, j), _fn_data(witness) if witness else None)
        report.set("D1.e", matrix.overall())
        for i, recovered in finset.compactness_flags(m, config.budget, matrix).items():
            if recovered is not None:
                report.flags[f"compact_code{i + 1}"] = not recovered
        return
    i, j = (int(k) - 1 for k in definition[len("D1.e("):-1].split(","))
    if not (0 <= i < matrix.size and 0 <= j < matrix.size) or i == j:
        report.set(definition, Verdict.NOT_APPLICABLE)
        return
    if definition not in report.verdicts:
        witness = matrix.witnesses.get((i, j))
        report.set(definition, matrix.entry(i, j), _fn_data(witness) if witness else None)


def _evaluate_rel(inst: Instance, selected: list, config: CheckConfig, report: Report):
    m = finrel.rel_compose(inst.g, inst.f)
    kind = finrel.classify_relation(m)
    report.flags.update({
        "right_unique": kind.right_unique, "left_total": kind.left_total, "function": kind.function,
    })
    g_kind = finrel.classify_relation(inst.g)
    if not (g_kind.left_total and finrel.is_left_unique(inst.g)):
        report.warnings.append("Assumption 2 violated: g is not left-total with disjoint images")
    for definition in selected:
        get_logger().log_definition(inst.name, definition)
        if definition == "D4":
            report.set("D4", Verdict.HOLDS, note=REL_EXPLICITNESS_NOTE)
        elif definition == "D4.a":
            components = finrel.monoidal_factorization(m)
            witness = [_rel_data(c) for c in components] if components is not None else None
            report.set("D4.a", Verdict.of(components is not None), witness)
        else:
            report.set(definition, Verdict.NOT_APPLICABLE)


def _evaluate_stoch(inst: Instance, selected: list, config: CheckConfig, report: Report):
    g, f = inst.g, inst.f
    if config.tolerance is not None:
        g, f = g.with_tolerance(config.tolerance), f.with_tolerance(config.tolerance)
    m = finstoch.stoch_compose(g, f)
    report.flags["deterministic"] = finstoch.is_deterministic(m)
    if not finstoch.is_mono_stoch(g):
        report.warnings.append("Assumption 2 violated: g sends two factors to the same distribution")
    for definition in selected:
        get_logger().log_definition(inst.name, definition)
        if definition == "D5":
            report.set("D5", Verdict.HOLDS)
        elif definition == "D5.a":
            report.set("D5.a", Verdict.of(finstoch.codes_independent_given_factors(m)))
        elif definition == "D5.b":
            report.set("D5.b", Verdict.of(finstoch.is_projectable(m)))
        elif definition == "D5.c":
            report.set("D5.c", Verdict.of(finstoch.is_modular_stoch(m)))
        elif definition == "D5.d":
            components = finstoch.is_componentwise(m)
            witness = [_stoch_data(c) for c in components] if components is not None else None
            report.set("D5.d", Verdict.of(components is not None), witness)
        else:
            report.set(definition, Verdict.NOT_APPLICABLE)
    if "D5.c" in report.verdicts and "D5.d" in report.verdicts:
        report.notes.append(FINSTOCH_IDENTIFICATION_NOTE)


def _code_components(inst: Instance) -> list:
    f_joint = inst.f.at(algact.S12)
    return [finset.compose(f_joint, q) for q in inst.Z.projections]


def _evaluate_action(inst: Instance, selected: list, config: CheckConfig, report: Report):
    scheme = inst.Y.scheme
    mu = inst.g.then(inst.f)
    report.flags["F_Y_product_preserving"] = algact.is_product_preserving(inst.Y)
    report.flags["F_Y_faithful"] = algact.is_faithful(inst.Y)
    if not report.flags["F_Y_product_preserving"]:
        report.warnings.append("Assumption violated: F_Y is not product-preserving")
    if not all(finset.classify_morphism(inst.g.at(obj)).mono for obj in scheme.objects):
        report.warnings.append("Assumption 2 violated: g is not injective at every object")
    for definition in selected:
        get_logger().log_definition(inst.name, definition)
        if definition == "D2":
            F_X = algact.restrict_to_object(inst.X, algact.S12)
            codes = [
                algact.pull_back_action(algact.restrict_to_object(inst.Z, obj), scheme.m1, scheme.m2, i)
                for i, obj in enumerate((algact.S1, algact.S2))
            ]
            report.set("D2", Verdict.of(algact.check_dis2(_code_components(inst), F_X, codes)))
        elif definition == "D2'":
            F_X = algact.restrict_to_object(inst.X, algact.S12)
            split = algact.componentwise_model(
                scheme,
                algact.restrict_to_object(inst.Z, algact.S1),
                algact.restrict_to_object(inst.Z, algact.S2),
            )
            F_Z = algact.restrict_to_object(split, algact.S12)
            paired = finset.pair(_code_components(inst), F_Z.carrier(algact.SINGLE_OBJECT))
            report.set("D2'", Verdict.of(algact.check_dis2prime(paired, F_X, F_Z)))
        elif definition == "D3":
            natural = inst.g.is_natural() and inst.f.is_natural() and mu.is_natural()
            report.set("D3", Verdict.of(natural))
        elif definition == "D3.a":
            report.set("D3.a", Verdict.of(algact.is_product_preserving(inst.Z)))
        elif definition == "D3.b":
            report.set("D3.b", Verdict.of(algact.is_faithful(inst.Z)))
        elif definition == "D3.c":
            outcome = algact.find_equivariant_retraction(mu, config.budget)
            witness = None
            if outcome.found:
                witness = {obj: _fn_data(outcome.witness.at(obj)) for obj in scheme.objects}
            report.set("D3.c", outcome.status, witness, _budget_note(outcome))
        else:
            report.set(definition, Verdict.NOT_APPLICABLE)


def _evaluate_count(inst: Instance, selected: list, config: CheckConfig, report: Report):
    for definition in selected:
        if definition == "count.invariant":
            report.set(definition, Verdict.of(multiset.is_invariant_counter(inst.f, inst.g)))
        else:
            report.set(definition, Verdict.NOT_APPLICABLE)


_EVALUATORS = {
    schemas.SET: _evaluate_set,
    schemas.REL: _evaluate_rel,
    schemas.STOCH: _evaluate_stoch,
    schemas.ACTION: _evaluate_action,
    schemas.COUNT: _evaluate_count,
}


# ---------------------------------------------------------------- consistency closure

def _implication(report: Report, premises: tuple, conclusion: str, name: str):
    if all(report.holds(p) for p in premises) and report.fails(conclusion):
        raise ConsistencyError(f"{report.instance}: {' and '.join(premises)} hold but {conclusion} fails ({name})")


def _equivalence(report: Report, left: str, right: str, name: str):
    a, b = report.verdict(left), report.verdict(right)
    decided = (Verdict.HOLDS, Verdict.FAILS)
    if a in decided and b in decided and a is not b:
        raise ConsistencyError(f"{report.instance}: {left} is {a.value} but {right} is {b.value} ({name})")


def check_consistency(report: Report):
    """Raises ConsistencyError when the report contradicts a known implication."""
    _implication(report, ("D1.a", "D1.c"), "D1.d", "modular decoders exist")
    _equivalence(report, "D1.a", "D1.b", "exponential transpose")
    _equivalence(report, "D1.a", "pullback", "pullback invariance")
    _implication(report, ("D1.c'",), "D1.c", "an inverse is a retraction")
    _implication(report, ("D5.d",), "D5.c", "componentwise implies modular")
    _equivalence(report, "D5.c", "D5.d", "finite-kernel identification")
    _equivalence(report, "D5.a", "D5.b", "independent outputs")
    if report.flags.get("F_Y_faithful"):
        _implication(report, ("D3.c",), "D3.b", "split monos preserve faithfulness")


def evaluate(inst: Instance, selection: Optional[Iterable[str]] = None,
             config: Optional[CheckConfig] = None) -> Report:
    config = config or CheckConfig()
    selected = resolve_selection(inst.category, selection)
    report = Report(inst.name, inst.category)
    applicable = [d for d in selected if _applicable(inst.category, d)]
    for definition in selected:
        if definition not in applicable:
            report.set(definition, Verdict.NOT_APPLICABLE)
    _EVALUATORS[inst.category](inst, applicable, config, report)
    for definition, verdict in report.verdicts.items():
        if verdict is Verdict.UNDECIDED and not any(n.startswith(f"{definition}:") for n in report.notes):
            report.notes.append(f"{definition}: search budget exceeded")
    check_consistency(report)
    get_logger().debug(f"checker: {inst.name} evaluated {len(report.verdicts)} definitions")
    return report
