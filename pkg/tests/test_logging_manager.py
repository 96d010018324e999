import logging

from modules.logging_manager import configure_logging, get_logger, parse_level


def test_parse_level():
    assert parse_level("debug") == logging.DEBUG
    assert parse_level(" Info ") == logging.INFO
    assert parse_level(logging.ERROR) == logging.ERROR
    assert parse_level("chatty") == logging.WARNING
    assert parse_level(True) == logging.WARNING


def test_console_goes_to_stderr(capsys):
    logger = configure_logging("INFO")
    assert get_logger() is logger
    logger.log_command("check", "rotation_set.json")
    logger.debug("hidden")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "check: started on rotation_set.json" in captured.err
    assert "hidden" not in captured.err


def test_suite_results_warn_only_on_failure(capsys):
    logger = configure_logging("WARNING")
    logger.log_suite_result({"name": "ok", "checks": 3, "passed": 3, "failed": 0, "partial": False})
    logger.log_suite_result({"name": "bad", "checks": 3, "passed": 2, "failed": 1, "partial": True})
    err = capsys.readouterr().err
    assert "ok:" not in err
    assert "bad: 2/3 checks passed (partial)" in err


def test_file_log_keeps_debug_records(tmp_path):
    logger = configure_logging("ERROR", log_to_file=True, log_dir=str(tmp_path))
    logger.log_definition("Rotation", "D1.c")
    try:
        raise ValueError("bad row")
    except ValueError as e:
        logger.log_error_with_context(e, {"command": "check", "file": "x.json"})
    for handler in logger.logger.handlers:
        handler.flush()
    with open(logger.log_file, encoding="utf-8") as f:
        text = f.read()
    assert "checker: evaluating D1.c on Rotation" in text
    assert "ValueError: bad row [command=check, file=x.json]" in text
    configure_logging("ERROR")
