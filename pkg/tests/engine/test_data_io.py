from pathlib import Path

import numpy as np
import pytest
from ewacli.engine.data_io import (
    fit_standardization,
    load_csv,
    load_features_csv,
    split,
    split_indices,
    standardize,
    write_csv,
    write_labels_csv,
)
from ewacli.engine.risk import LabeledDataset
from ewacli.exception import (
    DegenerateSplitError,
    EmptyDatasetError,
    InvalidDatasetError,
    MissingLabelColumnError,
    MixedLabelAlphabetError,
    NonNumericCellError,
)

from tests.testing_utils.fixtures import *


def test_load_csv(test_data_file, four_points):
    data = load_csv(test_data_file("four_points.csv"))
    assert data == four_points
    assert data.feature_names == ("x1", "x2")


def test_zero_one_labels_are_recoded(test_data_file):
    data = load_csv(test_data_file("zero_one_labels.csv"))
    assert data.labels.tolist() == [1.0, 1.0, -1.0, 1.0]


def test_non_numeric_cell_is_located(test_data_file):
    with pytest.raises(NonNumericCellError) as err:
        load_csv(test_data_file("bad_cell.csv"))
    assert err.value.row == 2
    assert err.value.column == "g17"
    assert err.value.value == "abc"


def test_mixed_label_alphabet(test_data_file):
    with pytest.raises(MixedLabelAlphabetError) as err:
        load_csv(test_data_file("mixed_labels.csv"))
    assert err.value.values == [-1.0, 0.0, 1.0]


def test_missing_label_column(test_data_file):
    with pytest.raises(MissingLabelColumnError):
        load_csv(test_data_file("no_label_column.csv"))
    assert load_csv(test_data_file("no_label_column.csv"), label_column="label").n == 2


def test_header_only_file_is_empty(temp_dir):
    path = Path(temp_dir) / "empty.csv"
    path.write_text("y,x1\n")
    with pytest.raises(EmptyDatasetError):
        load_csv(path)


def test_missing_file(temp_dir):
    with pytest.raises(InvalidDatasetError):
        load_csv(Path(temp_dir) / "absent.csv")


def test_csv_round_trip_is_lossless(temp_dir):
    rng = np.random.default_rng(0)
    data = LabeledDataset(
        rng.standard_normal((7, 3)) * 1e-3, np.array([1, -1, 1, 1, -1, -1, 1.0])
    )
    path = write_csv(data, Path(temp_dir) / "data.csv")
    assert path.read_text().splitlines()[0] == "y,x1,x2,x3"
    assert load_csv(path) == data


def test_load_features_csv_orders_columns(test_data_file):
    features, names = load_features_csv(test_data_file("four_points.csv"), ["x2", "x1"])
    assert names == ("x2", "x1")
    assert features[2].tolist() == [1.0, 2.0]
    unlabeled, names = load_features_csv(test_data_file("unlabeled.csv"))
    assert names == ("x1", "x2")
    assert unlabeled.shape == (2, 2)


def test_load_features_csv_reports_missing_columns(test_data_file):
    with pytest.raises(InvalidDatasetError) as err:
        load_features_csv(test_data_file("unlabeled.csv"), ["x1", "x9"])
    assert "x9" in err.value.message


def test_write_labels_csv(temp_dir):
    path = write_labels_csv(np.array([1, -1, 1]), Path(temp_dir) / "labels.csv")
    assert path.read_text() == "y\n1\n-1\n1\n"


def test_standardisation_uses_training_statistics():
    train = LabeledDataset(np.array([[1.0, 5.0], [3.0, 5.0], [5.0, 5.0]]), np.array([1.0, -1.0, 1.0]))
    test = LabeledDataset(np.array([[7.0, 6.0]]), np.array([1.0]))
    scaled, stats = standardize(train, test)
    assert stats.mean.tolist() == [3.0, 5.0]
    assert stats.sd[0] == pytest.approx(2.0)
    assert stats.constant.tolist() == [False, True]
    assert scaled.features.tolist() == [[2.0, 1.0]]


def test_standardised_training_set_has_unit_sample_sd(separable_data):
    scaled, _ = standardize(separable_data, separable_data)
    assert np.allclose(scaled.features.mean(axis=0), 0.0)
    assert np.allclose(scaled.features.std(axis=0, ddof=1), 1.0)


def test_standardisation_stats_round_trip():
    stats = fit_standardization(
        LabeledDataset(np.array([[1.0, 2.0], [2.0, 2.0]]), np.array([1.0, -1.0]))
    )
    restored = type(stats).from_dict(stats.to_dict())
    assert np.array_equal(restored.mean, stats.mean)
    assert np.array_equal(restored.scale, stats.scale)


def test_split_sizes_and_disjointness(separable_data):
    train_rows, test_rows = split_indices(102, 0.7, np.random.default_rng(0))
    assert len(train_rows) == 71
    assert len(test_rows) == 31
    assert not set(train_rows) & set(test_rows)
    train, test = split(separable_data, 0.7, np.random.default_rng(1))
    assert (train.n, test.n) == (56, 24)


@pytest.mark.parametrize("fraction, n", [(0.0, 10), (1.0, 10), (0.01, 10), (0.99, 10)])
def test_degenerate_splits(fraction, n):
    with pytest.raises(DegenerateSplitError):
        split_indices(n, fraction, np.random.default_rng(0))


def test_split_of_a_prostate_sized_dataset():
    rng = np.random.default_rng(5)
    data = LabeledDataset(rng.standard_normal((102, 3)), np.tile([1.0, -1.0], 51))
    train, test = split(data, 0.7, np.random.default_rng(2))
    assert (train.n, test.n) == (71, 31)
    rows = np.vstack([train.features, test.features])
    assert np.array_equal(np.sort(rows, axis=0), np.sort(data.features, axis=0))
