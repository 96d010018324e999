# commands/theorems.py

from commands import EXIT_FAILED, EXIT_OK
from modules.formatting_handler import FormattingHandler
from testing import TheoremTestSuite


class TheoremsCommand:
    """Runs the theorem suites; any counterexample fails the run."""

    name = 'theorems'

    def __init__(self, registry):
        self.config_manager = registry.config_manager
        self.logger = registry.logger

    def register(self, subparsers, common):
        parser = subparsers.add_parser(self.name, parents=[common], help='verify the theorems on finite families')
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--max-size', type=int, default=None, help='largest factor size in random families')
        parser.add_argument('--trials', type=int, default=None, help='random instances per suite')
        parser.add_argument('--save-log', action='store_true', help='write the results as JSON under the log directory')

    def run(self, args):
        settings = self.config_manager.get_suite_settings()
        overrides = {'seed': args.seed, 'max_factor_size': args.max_size, 'trials': args.trials}
        settings.update({k: v for k, v in overrides.items() if v is not None})
        if args.save_log:
            settings['save_log'] = True
        suite = TheoremTestSuite(settings, budget=self.config_manager.get_search_budget())
        summary = suite.run_all()
        print(FormattingHandler(args.report).format_suite(summary))
        self.logger.info(f"theorems: {summary['passed']} passed, {summary['failed']} failed")
        return EXIT_OK if summary['failed'] == 0 else EXIT_FAILED


def setup(registry):
    registry.add_command(TheoremsCommand(registry))
