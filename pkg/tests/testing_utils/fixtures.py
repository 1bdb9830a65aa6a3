import functools
import os
import shutil
import tempfile
from pathlib import Path
from typing import Generator
from unittest import mock

import numpy as np
import pytest
from ewacli.engine.risk import LabeledDataset
from typer import Typer
from typer.testing import CliRunner

from tests.testing_utils.files_and_dirs import create_named_file

TEST_DIR = Path(__file__).parent.parent
TEST_DATA_DIR = TEST_DIR / "test_data"


class EwaCliRunner(CliRunner):
    def __init__(self, app: Typer, test_ewa_config: Path):
        super().__init__()
        self.app = app
        self.test_ewa_config = test_ewa_config

    @functools.wraps(CliRunner.invoke)
    def invoke(self, *a, **kw):
        return self.invoke_with_config_file(self.test_ewa_config, *a, **kw)

    def invoke_with_config_file(self, config_file, *a, **kw):
        kw.update(catch_exceptions=False)
        return super().invoke(self.app, ["--config-file", str(config_file), *a[0]], **kw)


@pytest.fixture(scope="function")
def runner(test_ewa_config):
    from ewacli.app.cli_app import app

    return EwaCliRunner(app, test_ewa_config)


@pytest.fixture
def temp_dir():
    initial_dir = os.getcwd()
    tmp = tempfile.TemporaryDirectory()
    os.chdir(tmp.name)
    yield tmp.name
    os.chdir(initial_dir)
    tmp.cleanup()


@pytest.fixture(scope="session")
def test_ewa_config():
    test_config = TEST_DIR / "test.toml"
    with tempfile.NamedTemporaryFile(suffix=".toml", mode="w+") as fh:
        fh.write(test_config.read_text())
        fh.flush()
        yield Path(fh.name)


@pytest.fixture(scope="session")
def test_root_path():
    return TEST_DIR


@pytest.fixture
def config_file(temp_dir):
    """Writes a config file with the given lines into the temporary directory."""

    def _config_file(*lines: str) -> Path:
        return Path(create_named_file("config.toml", temp_dir, list(lines)))

    return _config_file


@pytest.fixture
def test_data_file(temp_dir) -> Generator:
    """Copies a file from tests/test_data into the temporary directory."""

    def _copy(name: str) -> Path:
        target = Path(temp_dir) / name
        shutil.copy(TEST_DATA_DIR / name, target)
        return target

    yield _copy


@pytest.fixture
def four_points() -> LabeledDataset:
    """Two features, margins (1, -1, -1, 0.25) at beta = (1, -1)."""
    return LabeledDataset(
        features=np.array([[1.0, 0.0], [0.0, 1.0], [2.0, 1.0], [0.5, 0.25]]),
        labels=np.array([1.0, 1.0, -1.0, 1.0]),
    )


@pytest.fixture
def separable_data() -> LabeledDataset:
    """80 rows, 5 features, labels given by the sign of the first two features."""
    rng = np.random.default_rng(7)
    features = rng.standard_normal((80, 5))
    score = 2.0 * features[:, 0] - 1.5 * features[:, 1]
    labels = np.where(score >= 0, 1.0, -1.0)
    return LabeledDataset(features, labels)


@pytest.fixture
def noisy_plane() -> LabeledDataset:
    """20 rows in two dimensions; the four repeated rows keep every direction misclassifying."""
    rng = np.random.default_rng(11)
    features = rng.standard_normal((16, 2))
    noise = rng.standard_normal(16)
    labels = np.where(features[:, 0] - 0.5 * features[:, 1] + noise >= 0, 1.0, -1.0)
    anchors = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 1.0]])
    return LabeledDataset(
        np.vstack([anchors, features]),
        np.concatenate([[1.0, -1.0, 1.0, -1.0], labels]),
    )


@pytest.fixture
def separable_csv(temp_dir, separable_data) -> Path:
    from ewacli.engine.data_io import write_csv

    return write_csv(separable_data, Path(temp_dir) / "separable.csv")


@pytest.fixture
def clean_environment():
    with mock.patch.dict(os.environ, {}, clear=True):
        yield
