# commands/check.py

import sys

from commands import EXIT_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from instances.input_validator import InstanceValidator
from instances.instance_loader import InstanceLoader
from modules import checker, finstoch
from modules.errors import ConsistencyError, DisentangleError
from modules.formatting_handler import FormattingHandler


class CheckCommand:
    """Evaluates the selected definitions on one instance file."""

    name = 'check'

    def __init__(self, registry):
        self.config_manager = registry.config_manager
        self.logger = registry.logger

    def register(self, subparsers, common):
        parser = subparsers.add_parser(self.name, parents=[common], help='check one instance file')
        parser.add_argument('file', help='instance file (JSON)')
        parser.add_argument('--definitions', default=None,
                            help='comma-separated definition ids, e.g. D1.a,D1.c,D1.e(1,2)')
        parser.add_argument('--tolerance', type=float, default=None,
                            help='compare kernels in floating point within this tolerance')
        parser.add_argument('--budget', type=int, default=None,
                            help='maximum number of candidates per witness search')

    @staticmethod
    def _split_definitions(text):
        """Splits on commas outside parentheses so D1.e(1,2) stays whole."""
        parts, depth, current = [], 0, ''
        for ch in text:
            if ch == ',' and depth == 0:
                parts.append(current)
                current = ''
                continue
            depth += ch == '('
            depth -= ch == ')'
            current += ch
        parts.append(current)
        return [p.strip() for p in parts if p.strip()]

    def run(self, args):
        config = self.config_manager.get_config()
        budget = args.budget if args.budget is not None else self.config_manager.get_search_budget()
        if args.tolerance is not None:
            arithmetic, tolerance = finstoch.FLOAT, args.tolerance
        else:
            arithmetic, tolerance = config.get('arithmetic', finstoch.EXACT), self.config_manager.get_tolerance()

        selection = None
        if args.definitions:
            selection = self._split_definitions(args.definitions)
            valid, message = InstanceValidator.validate_definitions(selection)
            if not valid:
                print(message, file=sys.stderr)
                return EXIT_INPUT_ERROR

        loader = InstanceLoader(arithmetic, tolerance, config.get('decimal_max_denominator', 10 ** 6))
        try:
            instance = loader.load_instance(args.file)
        except DisentangleError as e:
            print(str(e), file=sys.stderr)
            self.logger.error(f"check: {e}")
            return EXIT_INPUT_ERROR

        try:
            report = checker.evaluate(instance, selection, checker.CheckConfig(budget, args.tolerance))
        except ConsistencyError as e:
            self.logger.log_error_with_context(e, {"command": self.name, "file": args.file})
            print(f"internal consistency error: {e}", file=sys.stderr)
            return EXIT_FAILED
        except DisentangleError as e:
            print(str(e), file=sys.stderr)
            return EXIT_INPUT_ERROR

        mismatches = report.mismatches(instance.expected) if instance.expected else None
        print(FormattingHandler(args.report).format_report(report, mismatches))
        self.logger.info(f"check: {instance.name} finished with {len(report.verdicts)} verdicts")

        if instance.expected:
            return EXIT_OK if not mismatches else EXIT_FAILED
        return EXIT_FAILED if report.any_failed() else EXIT_OK


def setup(registry):
    registry.add_command(CheckCommand(registry))
