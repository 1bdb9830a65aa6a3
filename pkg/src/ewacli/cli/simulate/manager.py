from __future__ import annotations

import dataclasses
import json
import logging
from pathlib import Path
from typing import List

import numpy as np
from ewacli.engine.benchmark import TEST_SLOT, TRUTH_SLOT, stream
from ewacli.engine.data_io import write_csv
from ewacli.engine.risk import LabeledDataset, misclassification_rate
from ewacli.engine.simulation import (
    ScenarioSpec,
    gen_test_set,
    gen_truth,
    prostate_stand_in,
)

log = logging.getLogger(__name__)

PROSTATE_FILE = "prostate_stand_in.csv"


def _describe(name: str, path: Path, data: LabeledDataset) -> dict:
    return {
        "file": name,
        "path": str(path),
        "rows": data.n,
        "features": data.d,
        "positives": int(np.sum(data.labels == 1)),
    }


class SimulateManager:
    def scenario(self, spec: ScenarioSpec, test_rows: int, output_dir: Path) -> List[dict]:
        output_dir.mkdir(parents=True, exist_ok=True)
        # same streams as the first benchmark replication of this scenario
        truth = gen_truth(spec, np.random.default_rng(stream(spec.seed, 0, TRUTH_SLOT)))
        test = gen_test_set(truth, spec, np.random.default_rng(stream(spec.seed, 0, TEST_SLOT)), test_rows)

        train_path = write_csv(truth.dataset, output_dir / "train.csv")
        test_path = write_csv(test, output_dir / "test.csv")
        truth_path = output_dir / "truth.json"
        truth_path.write_text(
            json.dumps(
                {
                    "scenario": dataclasses.asdict(spec),
                    "support": list(truth.support),
                    "beta_star": truth.beta_star.tolist(),
                    "oracle_test_error": misclassification_rate(truth.beta_star, test),
                },
                indent=2,
            )
            + "\n"
        )
        log.info("Scenario %s written to %s", spec.name, output_dir)
        return [
            _describe("train", train_path, truth.dataset),
            _describe("test", test_path, test),
        ]

    def prostate(self, seed: int, output_dir: Path) -> List[dict]:
        output_dir.mkdir(parents=True, exist_ok=True)
        data = prostate_stand_in(np.random.default_rng(seed))
        path = write_csv(data, output_dir / PROSTATE_FILE)
        return [_describe("prostate_stand_in", path, data)]
