# modules/search.py
"""
Budgeted search over finite functions.

Candidates are functions {0..n_points-1} -> {0..n_values-1}, written as tuples
and enumerated in lexicographic order. Callers pass, per point, the values a
witness may take there; those lists must contain every value a witness could
use, so an empty pruned space proves non-existence.
"""

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

from modules.logging_manager import get_logger

DEFAULT_SEARCH_BUDGET = 10 ** 7

EXHAUSTIVE = "exhaustive"
CONSTRUCTION = "construction"


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDECIDED = "undecided"
    NOT_APPLICABLE = "not-applicable"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        return cls.HOLDS if value else cls.FAILS


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a witness search."""
    status: Verdict
    witness: object = None
    path: str = EXHAUSTIVE
    candidates: int = 0
    raw_candidates: int = 0
    notes: tuple = field(default=())

    @property
    def found(self) -> bool:
        return self.status is Verdict.HOLDS

    @property
    def decided(self) -> bool:
        return self.status is not Verdict.UNDECIDED


def raw_space_size(n_points: int, n_values: int) -> int:
    return n_values ** n_points


def pruned_space_size(allowed: Sequence[Sequence[int]]) -> int:
    return math.prod(len(values) for values in allowed)


def search_function(
    allowed: Sequence[Sequence[int]],
    accept: Optional[Callable[[tuple], bool]] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
    n_values: Optional[int] = None,
    construct_over_budget: bool = False,
    gate_on_raw: bool = False,
    label: str = "search",
) -> SearchOutcome:
    """
    Finds the lexicographically first candidate in the pruned space accepted by `accept`.

    Args:
        allowed: per point, the ascending list of values a witness may take there
        accept: full-candidate test; None means every pruned candidate is a witness
        budget: maximum number of candidates to visit
        n_values: size of the value set, used to report the unpruned space
        construct_over_budget: past the budget, test only the first pruned candidate
        gate_on_raw: compare the budget with the unpruned space instead of the pruned one
        label: name used in log lines

    Returns:
        SearchOutcome with status holds (witness found), fails (none exists) or undecided
    """
    logger = get_logger()
    allowed = [tuple(values) for values in allowed]
    raw = raw_space_size(len(allowed), n_values) if n_values is not None else pruned_space_size(allowed)
    size = pruned_space_size(allowed)

    if size == 0:
        logger.debug(f"{label}: pruned space is empty, no witness")
        return SearchOutcome(Verdict.FAILS, None, EXHAUSTIVE, 0, raw)

    gated = raw if gate_on_raw else size
    if gated > budget:
        if not construct_over_budget:
            logger.warning(f"{label}: {gated} candidates exceed the budget of {budget}, leaving it undecided")
            return SearchOutcome(Verdict.UNDECIDED, None, EXHAUSTIVE, 0, raw,
                                 (f"{gated} candidates exceed the search budget {budget}",))
        first = tuple(values[0] for values in allowed)
        if accept is None or accept(first):
            logger.debug(f"{label}: witness built directly ({gated} candidates over budget)")
            return SearchOutcome(Verdict.HOLDS, first, CONSTRUCTION, 1, raw)
        logger.debug(f"{label}: direct construction rejected")
        return SearchOutcome(Verdict.FAILS, None, CONSTRUCTION, 1, raw)

    visited = 0
    for candidate in itertools.product(*allowed):
        visited += 1
        if accept is None or accept(candidate):
            logger.debug(f"{label}: witness found after {visited} of {size} candidates")
            return SearchOutcome(Verdict.HOLDS, candidate, EXHAUSTIVE, visited, raw)
    logger.debug(f"{label}: exhausted {visited} candidates without a witness")
    return SearchOutcome(Verdict.FAILS, None, EXHAUSTIVE, visited, raw)


def forced_values(n_points: int, n_values: int, requirements: dict) -> list:
    """
    Builds per-point allowed lists from point -> set of required values.

    A point with two different requirements gets no value at all; a point
    without requirements may take any value.
    """
    allowed = []
    for point in range(n_points):
        required = requirements.get(point)
        if required is None:
            allowed.append(tuple(range(n_values)))
        elif len(required) == 1:
            allowed.append(tuple(required))
        else:
            allowed.append(())
    return allowed
