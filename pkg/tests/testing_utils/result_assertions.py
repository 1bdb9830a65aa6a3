import json

from click.testing import Result


def _flattened(output: str) -> str:
    """Error panels wrap long messages; compare on single-spaced text."""
    return " ".join(output.replace("│", " ").split())


def assert_that_result_is_usage_error(
    result: Result, expected_error_message: str
) -> None:
    assert result.exit_code == 2, result.exit_code
    assert expected_error_message in _flattened(result.output), result.output
    assert isinstance(result.exception, SystemExit)
    assert "traceback" not in result.output.lower()


def assert_that_result_failed_with(
    result: Result, exit_code: int, expected_error_message: str
) -> None:
    assert result.exit_code == exit_code, result.output
    assert expected_error_message in _flattened(result.output), result.output
    assert "traceback" not in result.output.lower()


def json_output(result: Result):
    assert result.exit_code == 0, result.output
    return json.loads(result.output)
