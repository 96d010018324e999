# commands/gallery.py

from commands import EXIT_FAILED, EXIT_OK
from modules import checker
from modules.formatting_handler import FormattingHandler
from modules.gallery import gallery


class GalleryCommand:
    """Recomputes every gallery example and compares it with its golden verdicts."""

    name = 'gallery'

    def __init__(self, registry):
        self.config_manager = registry.config_manager
        self.logger = registry.logger

    def register(self, subparsers, common):
        subparsers.add_parser(self.name, parents=[common], help='run the worked examples')

    def run(self, args):
        config = checker.CheckConfig(self.config_manager.get_search_budget(), self.config_manager.get_tolerance())
        reports, mismatches = [], {}
        for entry in gallery():
            report = checker.evaluate(entry.instance, None, config)
            problems = report.mismatches(entry.expected)
            for flag, wanted in entry.expected_flags.items():
                if report.flags.get(flag) != wanted:
                    problems.append((f"flag {flag}", str(wanted), str(report.flags.get(flag))))
            if problems:
                mismatches[entry.name] = problems
                self.logger.warning(f"gallery: {entry.name} differs from its golden verdicts")
            reports.append(report)
        print(FormattingHandler(args.report).format_reports(reports, mismatches))
        return EXIT_FAILED if mismatches else EXIT_OK


def setup(registry):
    registry.add_command(GalleryCommand(registry))
