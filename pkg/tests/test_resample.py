"""Tests for SMOTE oversampling."""

import numpy as np
import pandas as pd
import pytest

from tests.conftest import make_dataset
from triagetree.exceptions import DataError, UsageError
from triagetree.schemas.params import SmoteParams
from triagetree.services.resample import (
    k_nearest_minority,
    smote_balance,
    smote_oversample,
    write_provenance_csv,
)
from triagetree.utils.rng import SMOTE_STREAM, DeterministicRng


def _imbalanced(rng: np.random.Generator) -> tuple:
    n_majority = int(rng.integers(10, 80))
    n_minority = int(rng.integers(1, n_majority))
    n_features = int(rng.integers(1, 5))
    features = rng.normal(size=(n_majority + n_minority, n_features)) * rng.uniform(0.1, 10)
    labels = np.array([0] * n_majority + [1] * n_minority)
    order = rng.permutation(labels.shape[0])
    return make_dataset(features[order], labels[order], ["easy", "hard"]), n_majority


def test_smote_properties_on_random_datasets():
    """Balance, convexity with logged parents, majority rows untouched."""
    rng = np.random.default_rng(100)
    for case in range(100):
        d, n_majority = _imbalanced(rng)
        stream = DeterministicRng(case, SMOTE_STREAM)
        result = smote_oversample(d, SmoteParams(k_neighbors=5), stream)
        out = result.dataset

        counts = out.class_counts()
        assert counts[0] == counts[1] == n_majority

        # Originals keep their positions and bytes.
        assert out.features[: d.n_rows].tobytes() == d.features.tobytes()
        np.testing.assert_array_equal(out.labels[: d.n_rows], d.labels)

        assert len(result.provenance) == out.n_rows - d.n_rows
        for record in result.provenance:
            assert d.labels[record.parent] == 1 and d.labels[record.neighbor] == 1
            assert 0.0 <= record.lam <= 1.0
            parent, neighbor = d.features[record.parent], d.features[record.neighbor]
            synthetic = out.features[record.row]
            np.testing.assert_allclose(synthetic, parent + record.lam * (neighbor - parent))
            slack = 1e-12 * (1.0 + np.abs(parent) + np.abs(neighbor))
            assert np.all(synthetic >= np.minimum(parent, neighbor) - slack)
            assert np.all(synthetic <= np.maximum(parent, neighbor) + slack)


def test_smote_is_deterministic():
    d, _ = _imbalanced(np.random.default_rng(1))
    a = smote_balance(d, SmoteParams(), DeterministicRng(5, SMOTE_STREAM))
    b = smote_balance(d, SmoteParams(), DeterministicRng(5, SMOTE_STREAM))
    assert a.features.tobytes() == b.features.tobytes()


def test_already_balanced_is_unchanged():
    d = make_dataset(np.arange(100), [0] * 50 + [1] * 50)
    result = smote_oversample(d, SmoteParams(), DeterministicRng(0))
    assert result.dataset is d
    assert result.provenance == ()


def test_single_minority_row_is_duplicated():
    d = make_dataset([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [7.0, 9.0]], [0, 0, 0, 1])
    result = smote_oversample(d, SmoteParams(), DeterministicRng(0))
    out = result.dataset
    assert out.n_rows == 6
    np.testing.assert_array_equal(out.features[4:], [[7.0, 9.0], [7.0, 9.0]])
    assert all(record.lam == 0.0 for record in result.provenance)


def test_minority_may_be_class_zero():
    d = make_dataset(np.arange(10), [0, 0, 1, 1, 1, 1, 1, 1, 1, 1])
    out = smote_balance(d, SmoteParams(k_neighbors=3), DeterministicRng(0))
    assert out.class_counts().tolist() == [8, 8]


def test_smote_requires_two_present_classes():
    with pytest.raises(UsageError):
        smote_oversample(
            make_dataset([1, 2, 3], [0, 1, 2]), SmoteParams(), DeterministicRng(0)
        )
    with pytest.raises(DataError):
        smote_oversample(
            make_dataset([1, 2, 3], [0, 0, 0], ["a", "b"]), SmoteParams(), DeterministicRng(0)
        )


def test_k_nearest_minority_orders_by_distance():
    rows = np.array([[0.0], [10.0], [1.0], [3.0], [1.0]])
    np.testing.assert_array_equal(k_nearest_minority(rows, 0, 3), [2, 4, 3])
    with pytest.raises(UsageError):
        k_nearest_minority(rows, 0, 5)


def test_write_provenance_csv(tmp_path):
    d = make_dataset(np.arange(8), [0, 0, 0, 0, 0, 1, 1, 1])
    result = smote_oversample(d, SmoteParams(k_neighbors=2), DeterministicRng(0))
    path = tmp_path / "provenance.csv"
    write_provenance_csv(result.provenance, path)

    frame = pd.read_csv(path)
    assert frame.columns.tolist() == ["row", "parent", "neighbor", "lam"]
    assert frame["row"].tolist() == [8, 9]
