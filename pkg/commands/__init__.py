# commands/__init__.py
# Subcommands live one per module; main.py imports each and calls setup(registry).

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2
