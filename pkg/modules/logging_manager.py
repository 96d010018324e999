# modules/logging_manager.py

import logging
import os
import sys
from datetime import datetime

LOGGER_NAME = 'disentangle'

CONSOLE_FORMAT = '%(levelname)-8s %(message)s'
FILE_FORMAT = '%(asctime)s %(levelname)s %(module)s.%(funcName)s:%(lineno)d %(message)s'


def parse_level(level):
    """Accepts a level name ('info', 'DEBUG') or number; anything else means WARNING."""
    if isinstance(level, int) and not isinstance(level, bool):
        return level
    numeric = logging.getLevelName(str(level).strip().upper())
    return numeric if isinstance(numeric, int) else logging.WARNING


class LoggingManager:
    """
    Logger for the checker and its commands.

    Console records go to stderr, so a JSON report on stdout can be piped
    as is. With log_to_file, every DEBUG record also lands in a dated file
    under log_dir.
    """

    def __init__(self, log_level=logging.WARNING, log_to_file=False, log_dir='logs'):
        self.level = parse_level(log_level)
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.propagate = False
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()

        console = logging.StreamHandler(sys.stderr)
        console.setLevel(self.level)
        console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        self.logger.addHandler(console)

        self.log_file = None
        if log_to_file:
            os.makedirs(log_dir, exist_ok=True)
            self.log_file = os.path.join(log_dir, f'disentangle_{datetime.now():%Y%m%d}.log')
            to_file = logging.FileHandler(self.log_file, encoding='utf-8')
            to_file.setLevel(logging.DEBUG)
            to_file.setFormatter(logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
            self.logger.addHandler(to_file)
        self.logger.setLevel(logging.DEBUG if log_to_file else self.level)

    def debug(self, message):
        self.logger.debug(message)

    def info(self, message):
        self.logger.info(message)

    def warning(self, message):
        self.logger.warning(message)

    def error(self, message, exc_info=False):
        self.logger.error(message, exc_info=exc_info)

    def log_command(self, command, target):
        """Records which subcommand runs and on what (a file path, or '-' when there is none)."""
        self.info(f"{command}: started on {target}")

    def log_definition(self, instance, definition):
        self.debug(f"checker: evaluating {definition} on {instance}")

    def log_suite_result(self, record):
        """
        Logs one finished theorem suite.

        Args:
            record: A suite record with name, checks, passed, failed and partial keys
        """
        line = f"{record['name']}: {record['passed']}/{record['checks']} checks passed"
        if record.get('partial'):
            line += " (partial)"
        if record['failed']:
            self.warning(line)
        else:
            self.info(line)

    def log_error_with_context(self, error, context):
        """
        Logs an exception with key=value context.

        Args:
            error: The exception
            context: Dict of values that locate the failure (command, file, suite, seed)
        """
        details = ", ".join(f"{k}={v}" for k, v in context.items())
        self.error(f"{type(error).__name__}: {error} [{details}]", exc_info=True)


_logger_instance = None


def get_logger():
    """The process-wide LoggingManager, created with defaults on first use."""
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = LoggingManager()
    return _logger_instance


def configure_logging(level='WARNING', log_to_file=False, log_dir='logs'):
    """Replaces the process-wide LoggingManager and returns it."""
    global _logger_instance
    _logger_instance = LoggingManager(log_level=level, log_to_file=log_to_file, log_dir=log_dir)
    return _logger_instance
