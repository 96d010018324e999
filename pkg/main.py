# main.py

import argparse
import importlib
import os
import sys

from commands import EXIT_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from modules.config_manager import ConfigManager
from modules.logging_manager import configure_logging

COMMANDS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'commands')


class CommandRegistry:
    """
    Collects subcommands from the modules under commands/.
    Each command module exposes setup(registry) and registers one command object
    with a `name`, a `register(subparsers, common)` method and a `run(args)` method.
    """

    def __init__(self, config_manager, logger):
        self.config_manager = config_manager
        self.logger = logger
        self.commands = {}

    def add_command(self, command):
        if command.name in self.commands:
            raise ValueError(f"command {command.name!r} registered twice")
        self.commands[command.name] = command


def _common_options():
    """Flags every subcommand accepts."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--log-level', default=None,
                        help='DEBUG, INFO, WARNING, ERROR or CRITICAL (default from config.json)')
    common.add_argument('--report', choices=('text', 'json'), default='text',
                        help='output format')
    return common


def _early_log_level(argv):
    """Reads --log-level before the full parser exists, so command loading is logged at the right level."""
    pre_parser = argparse.ArgumentParser(add_help=False)
    pre_parser.add_argument('--log-level', default=None)
    known, _ = pre_parser.parse_known_args(argv)
    return known.log_level


def load_commands(registry):
    """Imports every command module and lets it register itself."""
    for filename in sorted(os.listdir(COMMANDS_DIR)):
        if filename.endswith('.py') and not filename.startswith('__'):
            try:
                module = importlib.import_module(f'commands.{filename[:-3]}')
                module.setup(registry)
                registry.logger.debug(f'Successfully loaded command: {filename}')
            except Exception as e:
                registry.logger.error(f'Failed to load command {filename}: {e}')


def build_parser(registry):
    parser = argparse.ArgumentParser(
        prog='disentangle',
        description='Checks disentanglement definitions on finite instances and verifies the theorems relating them.',
    )
    common = _common_options()
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    for command in registry.commands.values():
        command.register(subparsers, common)
    return parser


def run(argv=None):
    """Parses argv, dispatches to a subcommand and returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)

    # 1. Initialize logging first
    config_manager = ConfigManager()
    log_settings = config_manager.get_logging_settings()
    logger = configure_logging(
        _early_log_level(argv) or log_settings.get('level', 'WARNING'),
        log_to_file=log_settings.get('log_to_file', False),
        log_dir=log_settings.get('log_dir', 'logs'),
    )

    # 2. Load all commands
    registry = CommandRegistry(config_manager, logger)
    load_commands(registry)
    parser = build_parser(registry)

    # 3. Parse and dispatch
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code not in (0, None) else EXIT_OK
    logger.log_command(args.command, getattr(args, 'file', None) or '-')
    return registry.commands[args.command].run(args)


if __name__ == '__main__':
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        print("\nInterrupted by user.", file=sys.stderr)
        sys.exit(EXIT_FAILED)
