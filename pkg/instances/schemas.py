# instances/schemas.py
# This file defines the instance-file format version, category tags and the
# definition identifiers used as report keys.

import re

FORMAT_VERSION = 1

# --- Categories ---

SET = "set"
REL = "rel"
STOCH = "stoch"
ACTION = "action"
COUNT = "count"

CATEGORIES = (SET, REL, STOCH, ACTION, COUNT)

# --- Definition identifiers ---

SET_DEFINITIONS = ("D1", "D1.a", "D1.b", "D1.c", "D1.c'", "D1.d", "D1.e", "pullback")
REL_DEFINITIONS = ("D4", "D4.a")
STOCH_DEFINITIONS = ("D5", "D5.a", "D5.b", "D5.c", "D5.d")
ACTION_DEFINITIONS = ("D2", "D2'", "D3", "D3.a", "D3.b", "D3.c")
COUNT_DEFINITIONS = ("count.invariant",)

DEFINITIONS_BY_CATEGORY = {
    SET: SET_DEFINITIONS,
    REL: REL_DEFINITIONS,
    STOCH: STOCH_DEFINITIONS,
    ACTION: ACTION_DEFINITIONS,
    COUNT: COUNT_DEFINITIONS,
}

ALL_DEFINITIONS = tuple(d for defs in DEFINITIONS_BY_CATEGORY.values() for d in defs)

# Every definition of the category is selected by default.
DEFAULT_SELECTIONS = dict(DEFINITIONS_BY_CATEGORY)

PAIR_DEFINITION = re.compile(r"D1\.e\((\d+),(\d+)\)")

# --- Report flags ---

SET_FLAGS = ("mono", "epi", "iso")
REL_FLAGS = ("right_unique", "left_total", "function")
STOCH_FLAGS = ("deterministic",)
ACTION_FLAGS = ("F_Y_product_preserving", "F_Y_faithful")


def pair_definition(i: int, j: int) -> str:
    """Report key for the missing-information entry of code i and factor j (0-based in, 1-based out)."""
    return f"D1.e({i + 1},{j + 1})"


def is_pair_definition(definition: str) -> bool:
    return PAIR_DEFINITION.fullmatch(definition) is not None
