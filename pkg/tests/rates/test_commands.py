from tests.testing_utils.fixtures import *
from tests.testing_utils.result_assertions import (
    assert_that_result_failed_with,
    json_output,
)


def test_rates_table(runner):
    result = runner.invoke(
        ["rates", "--n", "200", "--d", "1000", "--s-star", "10", "--format", "JSON"]
    )

    rows = {row["kind"]: row for row in json_output(result)}
    assert list(rows) == ["slow", "fast", "noiseless", "slow_known_s", "fast_known_s"]
    assert rows["slow"]["rate"] == pytest.approx(1.8564, abs=1e-4)
    assert rows["fast"]["rate"] == pytest.approx(0.33746, rel=1e-4)
    assert rows["noiseless"]["lam"] == pytest.approx(80.0)
    assert rows["noiseless"]["tau"] == pytest.approx(5e-6)
    assert rows["fast"]["lam"] == pytest.approx(80.0)


def test_rates_margin_constant(runner):
    result = runner.invoke(
        [
            "rates",
            "--n",
            "100",
            "--d",
            "500",
            "--s-star",
            "5",
            "--margin-c",
            "2",
            "--format",
            "JSON",
        ]
    )

    rows = {row["kind"]: row for row in json_output(result)}
    assert rows["fast"]["lam"] == pytest.approx(25.0)


def test_rates_table_output(runner):
    result = runner.invoke(["rates", "--n", "200", "--d", "1000", "--s-star", "10"])
    assert result.exit_code == 0, result.output
    assert "slow_known_s" in result.output
    assert "| kind" in result.output


def test_rates_outside_domain(runner):
    result = runner.invoke(["rates", "--n", "200", "--d", "100", "--s-star", "10"])
    assert_that_result_failed_with(result, 3, "rate bounds assume 1 <= s* <= n < d")


def test_rates_requires_dimensions(runner):
    result = runner.invoke(["rates", "--n", "200"])
    assert result.exit_code == 2
