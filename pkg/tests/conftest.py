"""Pytest configuration."""

import os
from pathlib import Path

import numpy as np
import pytest

from triagetree.models.dataset import Dataset
from triagetree.schemas.params import EnsembleConfig, ForestParams
from triagetree.services.ensemble import fit_ensemble
from triagetree.services.synthetic import two_blobs

DATA_DIR = Path(__file__).parent / "data"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running benchmark reproduction")


def make_dataset(features, labels, class_names=None, name="test") -> Dataset:
    """Dataset from plain lists with default names."""
    features = np.asarray(features, dtype=np.float64)
    if features.ndim == 1:
        features = features.reshape(-1, 1)
    labels = np.asarray(labels, dtype=np.int64)
    if class_names is None:
        class_names = [f"c{i}" for i in range(int(labels.max()) + 1)]
    return Dataset(
        features=features,
        labels=labels,
        feature_names=tuple(f"f{i}" for i in range(features.shape[1])),
        class_names=tuple(class_names),
        name=name,
    )


def random_dataset(rng: np.random.Generator, n_rows=None, n_features=None, n_classes=2):
    """Small random dataset with integer-valued features (plenty of ties)."""
    n_rows = n_rows or int(rng.integers(10, 201))
    n_features = n_features or int(rng.integers(1, 4))
    features = rng.integers(0, 12, size=(n_rows, n_features)).astype(np.float64)
    labels = rng.integers(0, n_classes, size=n_rows)
    labels[:n_classes] = np.arange(n_classes)
    return make_dataset(features, labels, [f"c{i}" for i in range(n_classes)])


@pytest.fixture
def tiny_dataset():
    """Eight rows, one feature, perfectly separable at 3.5."""
    return make_dataset([1, 2, 3, 3, 4, 5, 6, 7], [0, 0, 0, 0, 1, 1, 1, 1], ["no", "yes"])


@pytest.fixture
def xor_dataset():
    """XOR layout: no single split lowers the Gini impurity."""
    return make_dataset(
        [[0, 0], [0, 1], [1, 0], [1, 1]] * 5,
        [0, 1, 1, 0] * 5,
    )


@pytest.fixture
def blobs():
    return two_blobs(seed=0)


@pytest.fixture
def small_config():
    """Ensemble config with a small forest so tests stay fast."""
    return EnsembleConfig(deferral_params=ForestParams(n_trees=10))


@pytest.fixture
def blob_ensemble(blobs, small_config):
    return fit_ensemble(blobs, small_config)


@pytest.fixture
def write_text(tmp_path):
    """Write a text file under tmp_path and return its path."""

    def _write(name: str, content: str) -> Path:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def benchmark_dir():
    """Directory holding the benchmark CSVs, or skip."""
    directory = os.environ.get("TRIAGETREE_BENCHMARK_DIR")
    if not directory or not Path(directory).is_dir():
        pytest.skip("TRIAGETREE_BENCHMARK_DIR not set")
    return Path(directory)
