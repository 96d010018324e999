import json

import pytest

from modules.algact import klein_group
from modules.checker import Report, evaluate
from modules.formatting_handler import FormattingHandler
from modules.gallery import gallery_entry
from modules.search import Verdict


def sample_report():
    report = Report("Sample", "set")
    report.set("D1.a", Verdict.HOLDS)
    report.set("D1.c", Verdict.UNDECIDED, note="over budget")
    report.flags.update({"iso": False, "mono": True, "epi": False})
    report.warnings.append("Assumption 2 violated: g is not injective")
    return report


def test_rejects_unknown_format():
    with pytest.raises(ValueError):
        FormattingHandler("xml")


def test_text_report():
    text = FormattingHandler("text").format_report(sample_report(), [("D1.c", "holds", "undecided")])
    lines = text.splitlines()
    assert lines[0] == "Sample [set]"
    assert "✓ holds" in lines[1] and "? undecided" in lines[2]
    assert "  flags: mono=yes, epi=no, iso=no" in lines
    assert "  warning: Assumption 2 violated: g is not injective" in lines
    assert lines[-1] == "  MISMATCH D1.c: expected holds, got undecided"


def test_json_report_is_sorted_and_stable():
    handler = FormattingHandler("json")
    report = evaluate(gallery_entry("Rotation").instance)
    first = handler.format_report(report)
    assert first == handler.format_report(evaluate(gallery_entry("Rotation").instance))
    data = json.loads(first)
    assert list(data) == sorted(data)
    assert "mismatches" not in data
    assert json.loads(handler.format_report(report, []))["mismatches"] == []


def test_json_reports_attach_mismatches_by_name():
    handler = FormattingHandler("json")
    items = json.loads(handler.format_reports([sample_report()], {"Sample": [("D1.c", "holds", "undecided")]}))
    assert items[0]["mismatches"] == [["D1.c", "holds", "undecided"]]


def test_suite_summary():
    summary = {
        "settings": {"seed": 0},
        "suites": [
            {"name": "a", "checks": 2, "passed": 2, "failed": 0, "partial": False, "counterexample": None},
            {"name": "b", "checks": 3, "passed": 2, "failed": 1, "partial": True, "counterexample": "m=..."},
        ],
        "total": 5, "passed": 4, "failed": 1,
    }
    text = FormattingHandler().format_suite(summary)
    assert "[PASS] a: 2/2 checks" in text
    assert "[FAIL] b: 2/3 checks (partial)" in text
    assert "first counterexample: m=..." in text
    assert text.endswith("Total: 4 passed, 1 failed")
    assert json.loads(FormattingHandler("json").format_suite(summary)) == summary


def test_decompositions():
    k = klein_group()
    pairs = [((0, 1), (0, 2))]
    assert "{00, 10} × {00, 01}" in FormattingHandler().format_decompositions(k, pairs)
    assert FormattingHandler().format_decompositions(k, []) == "no decompositions"
    data = json.loads(FormattingHandler("json").format_decompositions(k, pairs))
    assert data["decompositions"] == [[["00", "10"], ["00", "01"]]]
