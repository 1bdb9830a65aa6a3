import json

import pandas as pd

from tests.testing_utils.fixtures import *
from tests.testing_utils.result_assertions import (
    assert_that_result_is_usage_error,
    json_output,
)

_SMALL = [
    "--n",
    "40",
    "--d",
    "8",
    "--s0",
    "3",
    "--replications",
    "2",
    "--n-iter",
    "200",
    "--burn-in",
    "50",
    "--test-rows",
    "200",
]


def _bench(runner, *arguments):
    return runner.invoke(["bench", *_SMALL, *arguments, "--format", "JSON"])


def test_bench_scenarios(runner, temp_dir):
    result = _bench(runner, "-s", "I.1", "-s", "II.2", "-m", "H_MALA", "-m", "Lasso")

    rows = json_output(result)
    assert {(r["scenario"], r["method"]) for r in rows} == {
        ("I.1", "H_MALA"),
        ("I.1", "Lasso"),
        ("II.2", "H_MALA"),
        ("II.2", "Lasso"),
    }
    for row in rows:
        assert row["reps"] + row["failed"] == 2
        assert "seconds" in row

    output_dir = Path(temp_dir) / "bench"
    results = pd.read_csv(output_dir / "results.csv")
    assert len(results) == 4
    records = pd.read_csv(output_dir / "records.csv")
    assert len(records) == 8
    manifest = json.loads((output_dir / "manifest.json").read_text())
    assert manifest["kind"] == "simulation"
    assert manifest["replications"] == 2
    assert manifest["sampler"]["thin"] == 10
    assert manifest["settings"]["init"] == "auto"


def test_bench_without_timings_is_reproducible(runner, temp_dir):
    arguments = ["-s", "I.3", "-m", "H_LMC", "--no-timings"]
    rows = json_output(_bench(runner, *arguments, "-o", "first"))
    assert all("seconds" not in row for row in rows)
    json_output(_bench(runner, *arguments, "-o", "second"))

    for name in ("results.csv", "records.csv", "manifest.json"):
        first = (Path(temp_dir) / "first" / name).read_bytes()
        assert first == (Path(temp_dir) / "second" / name).read_bytes()


def test_bench_workers_do_not_change_results(runner, temp_dir):
    arguments = ["-s", "I.2", "-m", "Logit_MALA", "--no-timings"]
    single = json_output(_bench(runner, *arguments, "--workers", "1", "-o", "one"))
    pooled = json_output(_bench(runner, *arguments, "--workers", "2", "-o", "two"))

    assert single == pooled


def test_bench_real_data(runner, temp_dir, separable_csv):
    result = runner.invoke(
        [
            "bench",
            "--data",
            str(separable_csv),
            "--splits",
            "2",
            "--train-fraction",
            "0.75",
            "-m",
            "Lasso",
            "-m",
            "H_LMC",
            "--n-iter",
            "200",
            "--burn-in",
            "50",
            "--format",
            "JSON",
        ]
    )

    rows = json_output(result)
    assert {r["scenario"] for r in rows} == {"separable"}
    assert {r["method"] for r in rows} == {"Lasso", "H_LMC"}
    manifest = json.loads((Path(temp_dir) / "bench" / "manifest.json").read_text())
    assert manifest["kind"] == "real_data"
    assert manifest["dataset"] == {"name": "separable", "rows": 80, "features": 5}
    assert manifest["train_fraction"] == 0.75


def test_bench_definition_file(runner, temp_dir):
    definition = Path(temp_dir) / "plan.yml"
    definition.write_text(
        "scenarios:\n"
        "  - name: II.1\n"
        "    n: 30\n"
        "    d: 6\n"
        "    s0: 2\n"
        "methods:\n"
        "  - Logit_LMC\n"
        "replications: 2\n"
        "seed: 3\n"
        "test_rows: 100\n"
        "sampler:\n"
        "  n_iter: 150\n"
        "  burn_in: 30\n"
        "model:\n"
        "  lam: 2.0\n"
    )

    result = runner.invoke(
        ["bench", "--definition", str(definition), "--thin", "5", "--format", "JSON"]
    )

    rows = json_output(result)
    assert [(r["scenario"], r["method"]) for r in rows] == [("II.1", "Logit_LMC")]
    manifest = json.loads((Path(temp_dir) / "bench" / "manifest.json").read_text())
    assert manifest["sampler"]["n_iter"] == 150
    assert manifest["sampler"]["thin"] == 5
    assert manifest["settings"]["lam"] == 2.0
    assert manifest["scenarios"][0]["seed"] == 3


@pytest.mark.parametrize(
    "content, message",
    [
        ("scenarios: []\nmethods: [Lasso]\n", "Invalid benchmark definition"),
        (
            "scenarios:\n  - name: I.9\n    n: 10\n    d: 5\n    s0: 2\nmethods:\n  - Lasso\n",
            "Invalid benchmark definition",
        ),
        (
            "scenarios:\n  - name: I.1\n    n: 10\n    d: 5\n    s0: 2\nmethods:\n  - SVM\n",
            "Invalid benchmark definition",
        ),
        (
            "scenarios:\n  - name: I.1\n    n: 10\n    d: 5\n    s0: 9\nmethods:\n  - Lasso\n",
            "sparsity 9 exceeds dimension 5",
        ),
    ],
)
def test_bench_invalid_definition(runner, temp_dir, content, message):
    definition = Path(temp_dir) / "plan.yml"
    definition.write_text(content)

    result = runner.invoke(["bench", "--definition", str(definition)])
    assert_that_result_is_usage_error(result, message)


def test_bench_data_and_definition_together(runner, temp_dir, separable_csv):
    definition = Path(temp_dir) / "plan.yml"
    definition.write_text("scenarios: []\nmethods: [Lasso]\n")

    result = runner.invoke(
        ["bench", "--data", str(separable_csv), "--definition", str(definition)]
    )
    assert_that_result_is_usage_error(
        result, "--data and --definition cannot be used together"
    )


def test_bench_unknown_scenario(runner, temp_dir):
    result = _bench(runner, "-s", "I.7", "-m", "Lasso")
    assert result.exit_code == 3, result.output


def test_bench_thin_defaults_to_ten_and_can_be_overridden(runner, temp_dir):
    arguments = ["-s", "I.1", "-m", "Lasso"]
    json_output(_bench(runner, *arguments, "-o", "default"))
    json_output(_bench(runner, *arguments, "--thin", "1", "-o", "every"))

    default = json.loads((Path(temp_dir) / "default" / "manifest.json").read_text())
    every = json.loads((Path(temp_dir) / "every" / "manifest.json").read_text())
    assert default["sampler"]["thin"] == 10
    assert every["sampler"]["thin"] == 1


def test_bench_scoring_and_model_options(runner, temp_dir):
    result = _bench(
        runner,
        "-s",
        "I.1",
        "-m",
        "Lasso",
        "--score-on",
        "train",
        "--cv-measure",
        "misclassification",
        "--risk-scale",
        "mean",
    )

    rows = json_output(result)
    assert rows[0]["reps"] == 2
    settings = json.loads((Path(temp_dir) / "bench" / "manifest.json").read_text())["settings"]
    assert settings["score_on"] == "train"
    assert settings["cv_measure"] == "misclassification"
    assert settings["risk_scale"] == "mean"


def test_bench_unknown_scoring_rows(runner, temp_dir):
    result = _bench(runner, "-s", "I.1", "-m", "Lasso", "--score-on", "validation")
    assert result.exit_code == 2, result.output


@pytest.mark.slow
def test_bench_ten_splits_of_the_prostate_stand_in(runner, temp_dir):
    json_output(runner.invoke(["simulate", "--prostate-stand-in", "--format", "JSON"]))
    data = Path(temp_dir) / "simulated" / "prostate_stand_in.csv"

    result = runner.invoke(
        [
            "bench",
            "--data",
            str(data),
            "--splits",
            "10",
            "--n-iter",
            "300",
            "--burn-in",
            "100",
            "--workers",
            "4",
            "--format",
            "JSON",
        ]
    )

    rows = json_output(result)
    assert len(rows) == 5
    for row in rows:
        assert row["reps"] == 10
        assert 0.0 <= row["mean_pct"] <= 100.0
        assert row["sd_pct"] >= 0.0
