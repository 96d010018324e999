# modules/formatting_handler.py

import json

from instances import schemas
from modules.search import Verdict

_MARKS = {
    Verdict.HOLDS: "✓",
    Verdict.FAILS: "✗",
    Verdict.UNDECIDED: "?",
    Verdict.NOT_APPLICABLE: "-",
}

_FLAG_ORDER = schemas.SET_FLAGS + schemas.REL_FLAGS + schemas.STOCH_FLAGS + schemas.ACTION_FLAGS


class FormattingHandler:
    """
    Renders reports and suite results for the terminal or as JSON.

    JSON output is sorted and indented with no timestamps, so identical runs
    produce identical bytes.
    """

    def __init__(self, report_format="text"):
        """
        Args:
            report_format: "text" for aligned verdict tables, "json" for machine-readable output
        """
        if report_format not in ("text", "json"):
            raise ValueError(f"unknown report format {report_format!r}")
        self.report_format = report_format

    @staticmethod
    def to_json(data):
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)

    def format_report(self, report, mismatches=None):
        """
        Formats one checker Report.

        Args:
            report: The Report to render
            mismatches: Optional (definition, expected, actual) triples to list under the table

        Returns:
            The rendered string
        """
        if self.report_format == "json":
            data = report.to_dict()
            if mismatches is not None:
                data["mismatches"] = [list(m) for m in mismatches]
            return self.to_json(data)

        lines = [f"{report.instance} [{report.category}]"]
        width = max((len(d) for d in report.verdicts), default=0)
        for definition, verdict in report.verdicts.items():
            lines.append(f"  {definition.ljust(width)}  {_MARKS[verdict]} {verdict.value}")
        flags = _ordered_flags(report.flags)
        if flags:
            lines.append("  flags: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in flags))
        for warning in report.warnings:
            lines.append(f"  warning: {warning}")
        for note in report.notes:
            lines.append(f"  note: {note}")
        for definition, wanted, actual in mismatches or []:
            lines.append(f"  MISMATCH {definition}: expected {wanted}, got {actual}")
        return "\n".join(lines)

    def format_reports(self, reports, mismatches=None):
        """Formats several reports; `mismatches` maps instance name to its mismatch list."""
        mismatches = mismatches or {}
        if self.report_format == "json":
            items = []
            for report in reports:
                data = report.to_dict()
                if report.instance in mismatches:
                    data["mismatches"] = [list(m) for m in mismatches[report.instance]]
                items.append(data)
            return self.to_json(items)
        return "\n\n".join(self.format_report(r, mismatches.get(r.instance)) for r in reports)

    def format_suite(self, summary):
        """
        Formats a theorem-suite summary as returned by TheoremTestSuite.run_all().
        """
        if self.report_format == "json":
            return self.to_json(summary)
        lines = []
        for suite in summary["suites"]:
            status = "PASS" if suite["failed"] == 0 else "FAIL"
            partial = " (partial)" if suite.get("partial") else ""
            lines.append(f"[{status}] {suite['name']}: {suite['passed']}/{suite['checks']} checks{partial}")
            if suite.get("counterexample"):
                lines.append(f"       first counterexample: {suite['counterexample']}")
        lines.append("")
        lines.append(f"Total: {summary['passed']} passed, {summary['failed']} failed")
        return "\n".join(lines)

    def format_decompositions(self, magma, pairs):
        if self.report_format == "json":
            return self.to_json({
                "elements": list(magma.elements),
                "decompositions": [
                    [[magma.elements[a] for a in s1], [magma.elements[b] for b in s2]] for s1, s2 in pairs
                ],
            })
        if not pairs:
            return "no decompositions"
        lines = [f"{len(pairs)} decomposition(s) of a magma with {magma.size} elements:"]
        for s1, s2 in pairs:
            left = "{" + ", ".join(magma.elements[a] for a in s1) + "}"
            right = "{" + ", ".join(magma.elements[b] for b in s2) + "}"
            lines.append(f"  {left} × {right}")
        return "\n".join(lines)


def _ordered_flags(flags):
    known = [(k, flags[k]) for k in _FLAG_ORDER if k in flags]
    extra = sorted((k, v) for k, v in flags.items() if k not in _FLAG_ORDER)
    return known + extra
