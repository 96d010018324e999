# commands/decompose.py

import sys

from commands import EXIT_INPUT_ERROR, EXIT_OK
from instances.instance_loader import InstanceLoader
from modules import algact
from modules.errors import DisentangleError
from modules.formatting_handler import FormattingHandler


class DecomposeCommand:
    """Lists the direct-product decompositions of a unital magma."""

    name = 'decompose'

    def __init__(self, registry):
        self.config_manager = registry.config_manager
        self.logger = registry.logger

    def register(self, subparsers, common):
        parser = subparsers.add_parser(self.name, parents=[common], help='decompose a unital magma')
        parser.add_argument('file', help='magma file (JSON)')
        parser.add_argument('--max-size', type=int, default=None,
                            help='largest magma to search (default from config.json)')

    def run(self, args):
        max_size = args.max_size
        if max_size is None:
            max_size = self.config_manager.get_config().get('magma_max_size', algact.DEFAULT_MAGMA_MAX_SIZE)
        try:
            magma = InstanceLoader().load_magma(args.file)
            valid, message = algact.validate_magma(magma)
            if not valid:
                print(f"{args.file}: {message}", file=sys.stderr)
                return EXIT_INPUT_ERROR
            pairs = algact.find_decompositions(magma, max_size)
        except DisentangleError as e:
            print(str(e), file=sys.stderr)
            return EXIT_INPUT_ERROR
        self.logger.info(f"decompose: {len(pairs)} decompositions found")
        print(FormattingHandler(args.report).format_decompositions(magma, pairs))
        return EXIT_OK


def setup(registry):
    registry.add_command(DecomposeCommand(registry))
