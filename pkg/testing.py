"""
Theorem suites for the disentanglement checker.
Each suite runs one family of properties over exhaustive tiny instances and
seeded random instances, and reports pass/fail counts with the first
counterexample it meets.
"""

import itertools
import json
import os
import random
from datetime import datetime
from fractions import Fraction
from functools import reduce
from typing import Dict, List

import numpy as np

from modules import algact, checker, finrel, finset, finstoch, multiset
from modules.finset import FinFn, FinSet
from modules.gallery import gallery
from modules.logging_manager import get_logger
from modules.search import DEFAULT_SEARCH_BUDGET, Verdict

DEFAULT_SETTINGS = {
    "seed": 0,
    "max_factor_size": 3,
    "max_factors": 3,
    "trials": 500,
    "monoid_trials": 200,
    "save_log": False,
    "log_dir": "logs",
}

# Functions the suite looks up by name, so a test can swap in a broken version.
OVERRIDABLE = {
    "is_product_morphism": finset.is_product_morphism,
    "transpose_is_constant": finset.transpose_is_constant,
    "invariance_via_pullback": finset.invariance_via_pullback,
    "find_retraction": finset.find_retraction,
    "find_modular_retraction": finset.find_modular_retraction,
    "monoidal_factorization": finrel.monoidal_factorization,
    "is_projectable": finstoch.is_projectable,
    "codes_independent_given_factors": finstoch.codes_independent_given_factors,
    "is_modular_stoch": finstoch.is_modular_stoch,
    "is_componentwise": finstoch.is_componentwise,
    "find_equivariant_retraction": algact.find_equivariant_retraction,
    "is_faithful": algact.is_faithful,
    "find_decompositions": algact.find_decompositions,
    "is_invariant_counter": multiset.is_invariant_counter,
}


class TheoremTestSuite:
    """
    Runs the theorem suites and collects one record per suite.
    Records never carry timestamps, so two runs with the same settings
    produce identical summaries.
    """

    def __init__(self, settings: Dict = None, budget: int = DEFAULT_SEARCH_BUDGET, overrides: Dict = None):
        """
        Args:
            settings: suite settings (seed, max_factor_size, max_factors, trials, monoid_trials,
                save_log, log_dir); missing keys fall back to DEFAULT_SETTINGS
            budget: search budget passed to every witness search
            overrides: name -> replacement for entries of OVERRIDABLE
        """
        self.settings = {**DEFAULT_SETTINGS, **(settings or {})}
        self.budget = budget
        unknown = set(overrides or {}) - set(OVERRIDABLE)
        if unknown:
            raise KeyError(f"cannot override {sorted(unknown)}")
        self.ops = {**OVERRIDABLE, **(overrides or {})}
        self.results = []
        self._current = None
        self.logger = get_logger()

    @property
    def seed(self) -> int:
        return self.settings["seed"]

    @property
    def max_size(self) -> int:
        return max(1, self.settings["max_factor_size"])

    @property
    def max_factors(self) -> int:
        return max(1, self.settings["max_factors"])

    @property
    def trials(self) -> int:
        return max(0, self.settings["trials"])

    @property
    def monoid_trials(self) -> int:
        return max(0, self.settings["monoid_trials"])

    def _rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.seed}:{suite}")

    def _start(self, name: str):
        self._current = {"name": name, "checks": 0, "passed": 0, "failed": 0,
                         "partial": False, "counterexample": None}
        self.results.append(self._current)

    def _log_test(self, passed: bool, details: str = ""):
        """Record one check in the current suite; the first failure's details are kept."""
        suite = self._current
        suite["checks"] += 1
        if passed:
            suite["passed"] += 1
        else:
            suite["failed"] += 1
            if suite["counterexample"] is None:
                suite["counterexample"] = details
                self.logger.warning(f"{suite['name']}: counterexample {details}")

    def _mark_partial(self, reason: str):
        self._current["partial"] = True
        self.logger.info(f"{self._current['name']}: partial ({reason})")

    def run_all(self) -> Dict:
        """
        Run every suite.

        Returns:
            Dictionary with per-suite records and pass/fail totals
        """
        suites = [
            ("finset.universal_property", self.test_universal_property),
            ("finset.exponential_transpose", self.test_exponential_transpose),
            ("finset.component_extraction", self.test_component_extraction),
            ("finset.modular_decoder", self.test_modular_decoder),
            ("finset.missing_information", self.test_missing_information),
            ("gallery.golden_verdicts", self.test_gallery),
            ("finrel.kleisli_laws", self.test_kleisli_laws),
            ("finrel.currying", self.test_currying),
            ("finrel.factorization", self.test_factorization),
            ("finrel.embedding", self.test_relation_embedding),
            ("finstoch.markov_structure", self.test_markov_structure),
            ("finstoch.independence_of_outputs", self.test_independence_of_outputs),
            ("finstoch.componentwise_implies_modular", self.test_componentwise_implies_modular),
            ("finstoch.determinism", self.test_determinism),
            ("finstoch.not_cartesian", self.test_not_cartesian),
            ("finstoch.measure_preservation", self.test_measure_preservation),
            ("algact.equivariant_transport", self.test_equivariant_transport),
            ("algact.split_mono_faithfulness", self.test_split_mono_faithfulness),
            ("algact.generator_equivariance", self.test_generator_equivariance),
            ("algact.magma_decomposition", self.test_magma_decomposition),
            ("multiset.counting_maps", self.test_counting_maps),
            ("multiset.invariant_counters", self.test_invariant_counters),
        ]
        for name, suite in suites:
            self._start(name)
            try:
                suite()
            except Exception as e:
                self.logger.log_error_with_context(e, {"suite": name, "seed": self.seed})
                self._log_test(False, f"error: {type(e).__name__}: {e}")
            self.logger.log_suite_result(self._current)

        passed = sum(s["passed"] for s in self.results)
        failed = sum(s["failed"] for s in self.results)
        summary = {
            "settings": {k: self.settings[k] for k in
                         ("seed", "max_factor_size", "max_factors", "trials", "monoid_trials")},
            "suites": self.results,
            "total": passed + failed,
            "passed": passed,
            "failed": failed,
        }
        if self.settings.get("save_log"):
            self._save_test_log(summary)
        return summary

    def _save_test_log(self, summary: Dict):
        """Save suite results to the log directory."""
        try:
            log_dir = self.settings.get("log_dir", "logs")
            os.makedirs(log_dir, exist_ok=True)
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            log_path = os.path.join(log_dir, f"theorem_results_{timestamp}.json")
            with open(log_path, "w", encoding="utf-8") as f:
                json.dump(summary, f, indent=2, ensure_ascii=False, sort_keys=True)
            self.logger.info(f"Theorem results saved to: {log_path}")
        except OSError as e:
            self.logger.warning(f"Could not save theorem log: {e}")

    # ==================== RANDOM FAMILIES ====================

    def _random_factors(self, rng: random.Random, n: int) -> List[FinSet]:
        return [FinSet.range(rng.randint(1, self.max_size)) for _ in range(n)]

    def _random_encoder(self, rng: random.Random) -> FinFn:
        """Half the time a product of random components, otherwise an arbitrary map."""
        n = rng.randint(1, self.max_factors)
        Y = FinSet.product(*self._random_factors(rng, n))
        Z = FinSet.product(*self._random_factors(rng, n))
        if rng.random() < 0.5:
            components = [
                FinFn(Y.factors[i], Z.factors[i],
                      tuple(rng.randrange(Z.factors[i].size) for _ in range(Y.factors[i].size)))
                for i in range(n)
            ]
            return finset.product_map(*components)
        return FinFn(Y, Z, tuple(rng.randrange(Z.size) for _ in range(Y.size)))

    @staticmethod
    def _random_dist(size: int, rng: random.Random) -> list:
        weights = [rng.randint(0, 3) for _ in range(size)]
        if not any(weights):
            weights[rng.randrange(size)] = 1
        total = sum(weights)
        return [Fraction(w, total) for w in weights]

    def _random_stoch_encoder(self, rng: random.Random) -> finstoch.StochMap:
        """A third each: arbitrary rows, rows that are products of code distributions, tensors of components."""
        n = rng.randint(1, self.max_factors)
        Y = FinSet.product(*self._random_factors(rng, n))
        Z = FinSet.product(*self._random_factors(rng, n))
        kind = rng.randrange(3)
        if kind == 0:
            return finstoch.random_kernel(Y, Z, rng)
        if kind == 1:
            rows = [
                reduce(np.multiply.outer, [np.array(self._random_dist(f.size, rng), dtype=object)
                                           for f in Z.factors]).reshape(-1)
                for _ in range(Y.size)
            ]
            return finstoch.StochMap(Y, Z, np.array(rows, dtype=object))
        return finstoch.stoch_tensor(*(
            finstoch.random_kernel(Y.factors[i], Z.factors[i], rng) for i in range(n)
        ))

    # ==================== FINSET ====================

    def test_universal_property(self):
        """⟨f1, f2⟩ is the only u with p_i∘u = f_i (exhaustive, sizes ≤ 2)."""
        sizes = range(1, min(self.max_size, 2) + 1)
        for c, a, b in itertools.product(sizes, repeat=3):
            C, A, B = FinSet.range(c), FinSet.range(a), FinSet.range(b)
            structure = finset.cartesian_structure([A, B])
            p1, p2 = structure.projections
            candidates = list(finset.enumerate_functions(C, structure.product))
            for f1 in finset.enumerate_functions(C, A):
                for f2 in finset.enumerate_functions(C, B):
                    paired = structure.pair([f1, f2])
                    matching = [u for u in candidates
                                if finset.compose(u, p1) == f1 and finset.compose(u, p2) == f2]
                    self._log_test(matching == [paired], f"C={c}, f1={f1.map}, f2={f2.map}")

    def _check_transpose_agreement(self, m: FinFn):
        n = m.dom.n_factors
        modular = self.ops["is_product_morphism"](m) is not None
        constant = all(self.ops["transpose_is_constant"](m, i) for i in range(n))
        pulled = all(self.ops["invariance_via_pullback"](m, i) for i in range(n))
        self._log_test(modular == constant == pulled,
                       f"m={m.map} on shape {m.dom.factor_shape}: product={modular}, "
                       f"transpose constant={constant}, pullback={pulled}")

    def test_exponential_transpose(self):
        """Modularity, constancy of every transpose and pullback invariance agree."""
        bits = FinSet.product(FinSet.range(2), FinSet.range(2))
        for m in finset.enumerate_functions(bits, bits):
            self._check_transpose_agreement(m)
        rng = self._rng("exp")
        for _ in range(self.trials):
            self._check_transpose_agreement(self._random_encoder(rng))

    def test_component_extraction(self):
        """p_i∘m = m_ii∘p_i for every returned witness; the basepoint does not matter."""
        rng = self._rng("components")
        for _ in range(self.trials):
            m = self._random_encoder(rng)
            witness = self.ops["is_product_morphism"](m)
            if witness is None:
                continue
            for i in range(m.dom.n_factors):
                lhs = finset.compose(m, finset.projection(m.cod, i))
                rhs = finset.compose(finset.projection(m.dom, i), witness[i])
                self._log_test(lhs == rhs, f"m={m.map}, factor {i}: projection square")
                moved = finset.extract_component(m, i, basepoint=1)
                self._log_test(moved == witness[i], f"m={m.map}, factor {i}: basepoint 1 differs")
            self._log_test(witness.product() == m, f"m={m.map}: product of components differs")

    def test_modular_decoder(self):
        """Every modular split mono has a modular retraction (exhaustive over two factors)."""
        sizes = range(1, self.max_size + 1)
        for a, b, c, d in itertools.product(sizes, repeat=4):
            Y1, Y2, Z1, Z2 = (FinSet.range(k) for k in (a, b, c, d))
            for m1 in finset.enumerate_functions(Y1, Z1):
                for m2 in finset.enumerate_functions(Y2, Z2):
                    m = finset.product_map(m1, m2)
                    retraction = self.ops["find_retraction"](m, self.budget)
                    if not retraction.decided:
                        self._mark_partial("retraction search over budget")
                        continue
                    if not retraction.found:
                        continue
                    modular = self.ops["find_modular_retraction"](m, self.budget)
                    ok = modular.found and finset.compose(m, modular.witness.product()) == FinFn.identity(m.dom)
                    self._log_test(ok, f"m1={m1.map}, m2={m2.map}: no modular retraction")

    def test_missing_information(self):
        """A code that recovers another factor has a witness h with h∘m_i = p_j."""
        rng = self._rng("missing")
        for _ in range(self.trials):
            m = self._random_encoder(rng)
            matrix = finset.missing_information_search(m, self.budget)
            for (i, j), h in matrix.witnesses.items():
                lhs = finset.compose(finset.code_map(m, i), h)
                self._log_test(lhs == finset.projection(m.dom, j), f"m={m.map}: witness ({i},{j}) is wrong")
            if matrix.overall() is Verdict.UNDECIDED:
                self._mark_partial("missing-information search over budget")

    def test_gallery(self):
        """Recomputed gallery verdicts equal the golden ones."""
        config = checker.CheckConfig(self.budget)
        for entry in gallery():
            report = checker.evaluate(entry.instance, None, config)
            problems = report.mismatches(entry.expected)
            problems += [(flag, wanted, report.flags.get(flag))
                         for flag, wanted in entry.expected_flags.items() if report.flags.get(flag) != wanted]
            self._log_test(not problems, f"{entry.name}: {problems}")

    # ==================== FINREL ====================

    @staticmethod
    def _all_relations(A: FinSet, B: FinSet):
        for bits in itertools.product((False, True), repeat=A.size * B.size):
            yield finrel.FinRel(A, B, np.array(bits, dtype=bool).reshape(A.size, B.size))

    def test_kleisli_laws(self):
        """Unit and associativity of relation composition on carriers of size ≤ 2."""
        carriers = [FinSet.range(1), FinSet.range(2)]
        for A, B in itertools.product(carriers, repeat=2):
            for r in self._all_relations(A, B):
                left = finrel.rel_compose(finrel.rel_identity(A), r)
                right = finrel.rel_compose(r, finrel.rel_identity(B))
                self._log_test(left == r and right == r, f"{r}: identity is not neutral")
        two = carriers[1]
        relations = list(self._all_relations(two, two))
        for r, s, t in itertools.product(relations, repeat=3):
            lhs = finrel.rel_compose(finrel.rel_compose(r, s), t)
            rhs = finrel.rel_compose(r, finrel.rel_compose(s, t))
            self._log_test(lhs == rhs, f"{r}, {s}, {t}: composition not associative")

    def test_currying(self):
        """Currying is a bijection of hom-sets; the pictured relation curries as drawn."""
        two = FinSet.range(2)
        AB = FinSet.product(two, two)
        seen = set()
        for r in self._all_relations(AB, two):
            curried = finrel.rel_curry(r, finrel.FORWARD)
            seen.add(curried)
            back = finrel.rel_curry(curried, finrel.BACKWARD)
            self._log_test(back == r, f"{r}: round trip differs")
        self._log_test(len(seen) == 2 ** 8, f"only {len(seen)} distinct curried relations")

        A, B, C = FinSet.of("a", "b"), FinSet.of("0", "1"), FinSet.of("x", "y")
        pictured = finrel.FinRel.from_pairs(FinSet.product(A, B), C, [
            ("(a,0)", "x"), ("(a,0)", "y"), ("(a,1)", "y"), ("(b,1)", "x"),
        ])
        expected = finrel.FinRel.from_pairs(A, FinSet.product(B, C), [
            ("a", "(0,x)"), ("a", "(0,y)"), ("a", "(1,y)"), ("b", "(1,x)"),
        ])
        self._log_test(finrel.rel_curry(pictured) == expected, "pictured relation curries differently")

    def test_factorization(self):
        """Tensor-then-factor recovers nonempty components; the pictured relation does not factor."""
        two = FinSet.range(2)
        nonempty = [r for r in self._all_relations(two, two) if not r.is_empty()]
        for a, b in itertools.product(nonempty, repeat=2):
            found = self.ops["monoidal_factorization"](finrel.rel_tensor(a, b))
            self._log_test(found is not None and list(found) == [a, b], f"{a} ⊗ {b} not recovered")

        for a, b in itertools.product(self._all_relations(two, two), repeat=2):
            tensor = finrel.rel_tensor(a, b)
            klass, ka, kb = (finrel.classify_relation(r) for r in (tensor, a, b))
            ok = (not (ka.right_unique and kb.right_unique) or klass.right_unique) and \
                 (not (ka.left_total and kb.left_total) or klass.left_total)
            self._log_test(ok, f"{a} ⊗ {b}: classification not preserved")

        A, B, C, one = FinSet.of("a", "b"), FinSet.of("0", "1"), FinSet.of("x", "y"), FinSet.one_point()
        pictured = finrel.FinRel.from_pairs(FinSet.product(A, B), FinSet.product(C, one), [
            ("(a,0)", "(x,*)"), ("(a,0)", "(y,*)"), ("(a,1)", "(y,*)"), ("(b,1)", "(x,*)"),
        ])
        self._log_test(self.ops["monoidal_factorization"](pictured) is None, "pictured relation factors")

        empty = finrel.FinRel.empty(FinSet.product(two, two), FinSet.product(two, two))
        parts = self.ops["monoidal_factorization"](empty)
        self._log_test(parts is not None and all(p.is_empty() for p in parts), "empty relation does not factor")

    def test_relation_embedding(self):
        """graph(f1×f2) = graph(f1)⊗graph(f2); graphs compose like functions."""
        carriers = [FinSet.range(1), FinSet.range(2), FinSet.range(3)][:self.max_size]
        for A, B in itertools.product(carriers, repeat=2):
            for f1 in finset.enumerate_functions(A, B):
                graph = finrel.graph(f1)
                self._log_test(finrel.classify_relation(graph).function, f"graph of {f1.map} is not a function")
                for f2 in finset.enumerate_functions(B, A):
                    tensor = finrel.rel_tensor(graph, finrel.graph(f2))
                    self._log_test(tensor == finrel.graph(finset.product_map(f1, f2)),
                                   f"{f1.map} × {f2.map}: graph of product differs")
                    composite = finrel.rel_compose(graph, finrel.graph(f2))
                    self._log_test(composite == finrel.graph(finset.compose(f1, f2)),
                                   f"{f1.map} then {f2.map}: graphs compose differently")

    # ==================== FINSTOCH ====================

    def test_markov_structure(self):
        """Comonoid laws for copy/delete, naturality of delete and the coin breaking copy-naturality."""
        for n in range(1, 5):
            A = FinSet.range(n)
            laws = finstoch.comonoid_laws(A)
            self._log_test(all(laws.values()), f"|A|={n}: {laws}")
        rng = self._rng("markov")
        for _ in range(self.trials):
            f = self._random_stoch_encoder(rng)
            self._log_test(finstoch.delete_is_natural(f), f"{f}: delete is not natural")
        coin = finstoch.uniform(FinSet.range(2))
        self._log_test(not finstoch.copy_is_natural(coin), "the fair coin commutes with copy")
        for k in range(2):
            self._log_test(finstoch.copy_is_natural(finstoch.point_mass(FinSet.range(2), k)),
                           f"point mass at {k} does not commute with copy")

    def test_independence_of_outputs(self):
        """Projectability agrees with Z_i ⊥ Z∖i | Y read off ⟨m, id⟩."""
        rng = self._rng("indout")
        is_projectable = self.ops["is_projectable"]
        independent = self.ops["codes_independent_given_factors"]
        for _ in range(self.trials):
            m = self._random_stoch_encoder(rng)
            left, right = is_projectable(m), independent(m)
            self._log_test(left == right, f"{m}: projectable={left}, conditionally independent={right}")

    def test_componentwise_implies_modular(self):
        """Componentwise kernels are modular, and in finite kernels the two predicates coincide."""
        rng = self._rng("componentwise")
        for _ in range(self.trials):
            m = self._random_stoch_encoder(rng)
            componentwise = self.ops["is_componentwise"](m) is not None
            modular = self.ops["is_modular_stoch"](m)
            self._log_test(componentwise == modular, f"{m}: componentwise={componentwise}, modular={modular}")

    def test_determinism(self):
        """Copy-naturality and point-mass rows pick out the same kernels; functions embed faithfully."""
        rng = self._rng("determinism")
        for trial in range(self.trials):
            if trial % 2:
                f = self._random_stoch_encoder(rng)
            else:
                f = finstoch.StochMap.from_function(self._random_encoder(rng))
            natural, point_masses = finstoch.copy_is_natural(f), finstoch.has_point_mass_rows(f)
            self._log_test(natural == point_masses, f"{f}: copy-natural={natural}, point masses={point_masses}")
        for _ in range(self.trials):
            m = self._random_encoder(rng)
            h = FinFn(m.cod, m.dom, tuple(rng.randrange(m.dom.size) for _ in range(m.cod.size)))
            lhs = finstoch.stoch_compose(finstoch.StochMap.from_function(m), finstoch.StochMap.from_function(h))
            rhs = finstoch.StochMap.from_function(finset.compose(m, h))
            self._log_test(lhs == rhs, f"{m.map} then {h.map}: embedded composite differs")

    def test_not_cartesian(self):
        """Two different joints share the uniform marginals."""
        independent, correlated = finstoch.marginals_witness()
        quarter, half, zero = Fraction(1, 4), Fraction(1, 2), Fraction(0)
        self._log_test(list(independent.rows[0]) == [quarter] * 4, f"{independent}: not uniform")
        self._log_test(list(correlated.rows[0]) == [half, zero, zero, half], f"{correlated}: not correlated")
        self._log_test(not (independent == correlated), "witness joints coincide")
        for i in range(2):
            self._log_test(finstoch.marginalize(independent, [i]) == finstoch.marginalize(correlated, [i]),
                           f"marginal {i} differs")

    def test_measure_preservation(self):
        """Pushforwards are measure-preserving by construction; uniform 4 -> 2 halves evenly."""
        rng = self._rng("measure")
        for _ in range(self.trials):
            A, B = FinSet.range(rng.randint(1, 4)), FinSet.range(rng.randint(1, 4))
            f = FinFn(A, B, tuple(rng.randrange(B.size) for _ in range(A.size)))
            pA = finstoch.FinDist(A, np.array(self._random_dist(A.size, rng), dtype=object))
            self._log_test(finstoch.is_measure_preserving(pA, f, finstoch.pushforward(pA, f)),
                           f"{f.map}: pushforward is not preserved")
        four, two = FinSet.range(4), FinSet.range(2)
        halving = FinFn(four, two, (0, 0, 1, 1))
        self._log_test(finstoch.is_measure_preserving(finstoch.FinDist.uniform(four), halving,
                                                      finstoch.FinDist.uniform(two)),
                       "uniform on four points does not push to uniform on two")

    # ==================== ALGACT ====================

    _MONOIDS = None
    _ACTIONS = {}

    def _monoids(self) -> list:
        if TheoremTestSuite._MONOIDS is None:
            TheoremTestSuite._MONOIDS = [algact.trivial_monoid(), algact.cyclic_monoid(2), algact.cyclic_monoid(3),
                                         algact.saturating_monoid(1), algact.saturating_monoid(2)]
        return TheoremTestSuite._MONOIDS

    def _actions(self, monoid: algact.MonoidTable, size: int) -> list:
        key = (monoid.elements, monoid.table, size)
        if key not in TheoremTestSuite._ACTIONS:
            TheoremTestSuite._ACTIONS[key] = algact.enumerate_actions(monoid, FinSet.range(size))
        return TheoremTestSuite._ACTIONS[key]

    @staticmethod
    def _conjugate(model: algact.SchemeModel, perm: FinFn) -> algact.SchemeModel:
        """The same model with F(s12) relabeled through the bijection `perm`."""
        inverse = FinFn(perm.cod, perm.dom, tuple(perm.map.index(k) for k in range(perm.dom.size)))
        joint = tuple(finset.compose_all(inverse, f, perm) for f in model.actions[algact.S12])
        projections = tuple(finset.compose(inverse, q) for q in model.projections)
        return algact.SchemeModel(model.scheme, dict(model.carriers),
                                  {**model.actions, algact.S12: joint}, projections)

    def _random_triple(self, rng: random.Random):
        """A product scheme, two product-preserving models on it and an equivariant μ between them."""
        size = min(self.max_size, 3)
        m1, m2 = rng.choice(self._monoids()), rng.choice(self._monoids())
        scheme = algact.ProductScheme(m1, m2)
        actions = [
            (rng.choice(self._actions(m1, rng.randint(1, size))), rng.choice(self._actions(m2, rng.randint(1, size))))
            for _ in range(2)
        ]
        F_Y = algact.componentwise_model(scheme, *actions[0])
        F_Z = algact.componentwise_model(scheme, *actions[1])
        parts = []
        for obj in (algact.S1, algact.S2):
            maps = [f for f in finset.enumerate_functions(F_Y.carrier(obj), F_Z.carrier(obj))
                    if algact.is_equivariant(f, F_Y, F_Z, obj)]
            if not maps:
                return None
            parts.append(rng.choice(maps))
        perm_table = list(range(F_Z.carrier(algact.S12).size))
        rng.shuffle(perm_table)
        perm = FinFn(F_Z.carrier(algact.S12), F_Z.carrier(algact.S12), tuple(perm_table))
        F_Z = self._conjugate(F_Z, perm)
        components = {algact.S1: parts[0], algact.S2: parts[1],
                      algact.S12: finset.compose(finset.product_map(*parts), perm)}
        return algact.EquivariantMap(F_Y, F_Z, components)

    def test_equivariant_transport(self):
        """Every natural μ between product-preserving models is componentwise at s12."""
        rng = self._rng("muproduct")
        for _ in range(self.monoid_trials):
            mu = self._random_triple(rng)
            if mu is None:
                continue
            self._log_test(mu.is_natural(), "generated μ is not natural")
            source, target = mu.source.carrier(algact.S12), mu.target.carrier(algact.S12)
            if target.size ** source.size > 256:
                candidates = [mu.at(algact.S12)]
            else:
                candidates = [f for f in finset.enumerate_functions(source, target)
                              if algact.EquivariantMap(mu.source, mu.target,
                                                       {**mu.components, algact.S12: f}).is_natural()]
            for f in candidates:
                other = algact.EquivariantMap(mu.source, mu.target, {**mu.components, algact.S12: f})
                self._log_test(algact.transport_is_componentwise(other), f"μ_s12={f.map} is not componentwise")

    def test_split_mono_faithfulness(self):
        """A split mono out of a faithful product-preserving model lands in a faithful one."""
        rng = self._rng("monofaithful")
        for _ in range(self.monoid_trials):
            mu = self._random_triple(rng)
            if mu is None:
                continue
            F_Y, F_Z = mu.source, mu.target
            self._log_test(algact.is_product_preserving(F_Y) and algact.is_product_preserving(F_Z),
                           "generated models do not preserve products")
            outcome = self.ops["find_equivariant_retraction"](mu, self.budget)
            if not outcome.decided:
                self._mark_partial("equivariant retraction over budget")
                continue
            if not outcome.found:
                continue
            h = outcome.witness
            round_trip = mu.then(h)
            self._log_test(round_trip.is_natural() and all(
                round_trip.at(obj) == FinFn.identity(F_Y.carrier(obj)) for obj in F_Y.scheme.objects),
                "retraction does not compose to the identity")
            if self.ops["is_faithful"](F_Y):
                self._log_test(self.ops["is_faithful"](F_Z), "faithful F_Y but F_Z is not faithful")

    def test_generator_equivariance(self):
        """Equivariance under the generators (a,e), (e,b) gives equivariance under all of M1×M2."""
        rng = self._rng("generators")
        for _ in range(self.monoid_trials):
            mu = self._random_triple(rng)
            if mu is None:
                continue
            F_X = algact.restrict_to_object(mu.source)
            F_Z = algact.restrict_to_object(mu.target)
            maps = [mu.at(algact.S12)] + [
                FinFn(F_X.carrier("s"), F_Z.carrier("s"),
                      tuple(rng.randrange(F_Z.carrier("s").size) for _ in range(F_X.carrier("s").size)))
                for _ in range(3)
            ]
            for f in maps:
                on_generators = algact.check_dis2prime(f, F_X, F_Z)
                everywhere = algact.check_dis2prime(f, F_X, F_Z, generators_only=False)
                self._log_test(on_generators == everywhere, f"{f.map}: generators={on_generators}, all={everywhere}")

    def test_magma_decomposition(self):
        """Klein has all three subgroup pairings; Z2 and Z4 only the trivial ones."""
        find = self.ops["find_decompositions"]
        klein = algact.klein_group()
        pairs = find(klein)
        subgroups = [(0, 1), (0, 2), (0, 3)]
        for s1, s2 in itertools.permutations(subgroups, 2):
            self._log_test((s1, s2) in pairs, f"Klein misses ({s1}, {s2})")
        for s1, s2 in pairs:
            commute = all(klein.mul(a, b) == klein.mul(b, a) for a in s1 for b in s2)
            self._log_test(commute, f"Klein parts {s1}, {s2} do not commute")
        for n in (2, 4):
            group = algact.cyclic_monoid(n)
            everything = tuple(range(n))
            self._log_test(find(group) == [((0,), everything), (everything, (0,))],
                           f"Z{n}: {find(group)}")

    # ==================== MULTISET ====================

    @staticmethod
    def _all_counting_maps(A: FinSet, B: FinSet, max_count: int = 2):
        for values in itertools.product(range(max_count + 1), repeat=A.size * B.size):
            counts = np.array(values, dtype=np.int64).reshape(A.size, B.size)
            if counts.sum(axis=1).all():
                yield multiset.MultiFn(A, B, counts)

    def test_counting_maps(self):
        """Unit and associativity of counting-map composition; functions embed faithfully."""
        carriers = [FinSet.range(1), FinSet.range(2)]
        for A, B in itertools.product(carriers, repeat=2):
            for f in self._all_counting_maps(A, B):
                ok = (multiset.mset_compose(multiset.mset_identity(A), f) == f
                      and multiset.mset_compose(f, multiset.mset_identity(B)) == f)
                self._log_test(ok, f"{f.counts.tolist()}: identity is not neutral")
        two = carriers[1]
        small = list(self._all_counting_maps(two, two, max_count=1))
        for f, g, h in itertools.product(small, repeat=3):
            lhs = multiset.mset_compose(multiset.mset_compose(f, g), h)
            rhs = multiset.mset_compose(f, multiset.mset_compose(g, h))
            self._log_test(lhs == rhs, f"{f.counts.tolist()}, {g.counts.tolist()}, {h.counts.tolist()}: not associative")
        maps = list(self._all_counting_maps(two, two))
        rng = self._rng("multiset")
        for _ in range(self.trials):
            f, g, h = rng.choice(maps), rng.choice(maps), rng.choice(maps)
            lhs = multiset.mset_compose(multiset.mset_compose(f, g), h)
            rhs = multiset.mset_compose(f, multiset.mset_compose(g, h))
            self._log_test(lhs == rhs, f"{f.counts.tolist()}, {g.counts.tolist()}, {h.counts.tolist()}: not associative")
        for A, B in itertools.product(carriers, repeat=2):
            for f in finset.enumerate_functions(A, B):
                for g in finset.enumerate_functions(B, A):
                    lhs = multiset.mset_compose(multiset.MultiFn.from_function(f), multiset.MultiFn.from_function(g))
                    self._log_test(lhs == multiset.MultiFn.from_function(finset.compose(f, g)),
                                   f"{f.map} then {g.map}: embedded composite differs")

    def test_invariant_counters(self):
        """The color count is invariant, the bucket count is not; invariance survives every power."""
        is_invariant = self.ops["is_invariant_counter"]
        scene = multiset.scene_system()
        self._log_test(is_invariant(multiset.color_counter(), scene), "color counter is not invariant")
        self._log_test(not is_invariant(multiset.position_counter(), scene), "bucket counter is invariant")
        rng = self._rng("counters")
        for _ in range(self.trials):
            states = FinSet.range(rng.randint(1, 4))
            step = FinFn(states, states, tuple(rng.randrange(states.size) for _ in range(states.size)))
            system = multiset.TimedSystem(states, step)
            labels = FinSet.range(rng.randint(1, 3))
            counts = np.array([[rng.randint(0, 2) for _ in range(labels.size)] for _ in range(states.size)])
            counts[:, 0] += counts.sum(axis=1) == 0
            phi = multiset.MultiFn(states, labels, counts)
            if not is_invariant(phi, system):
                continue
            for k in range(states.size + 1):
                moved = multiset.mset_compose(multiset.MultiFn.from_function(multiset.step_power(system, k)), phi)
                self._log_test(moved == phi, f"counter changes after {k} steps")


def run_theorem_suite(settings: Dict = None, budget: int = DEFAULT_SEARCH_BUDGET) -> Dict:
    """
    Run every theorem suite.

    Args:
        settings: suite settings, see DEFAULT_SETTINGS
        budget: search budget

    Returns:
        Suite summary
    """
    return TheoremTestSuite(settings, budget).run_all()
