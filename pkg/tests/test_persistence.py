"""Tests for saving and loading models."""

import json

import numpy as np
import pytest

from triagetree.exceptions import DataError
from triagetree.services.ensemble import predict_ensemble_batch
from triagetree.services.persistence import (
    ensemble_to_document,
    load_ensemble,
    save_ensemble,
    tree_from_document,
    tree_to_document,
)


def test_save_load_preserves_predictions(blob_ensemble, blobs, tmp_path):
    path = tmp_path / "model.json"
    save_ensemble(blob_ensemble, path)
    loaded = load_ensemble(path)

    assert loaded.feature_names == blob_ensemble.feature_names
    assert loaded.class_names == blob_ensemble.class_names
    assert loaded.fit_stats == blob_ensemble.fit_stats
    assert loaded.config == blob_ensemble.config
    assert loaded.base.nodes == blob_ensemble.base.nodes
    assert loaded.grader.nodes == blob_ensemble.grader.nodes

    queries = np.random.default_rng(1).uniform(-4, 6, size=(500, 2))
    for ours, theirs in zip(
        predict_ensemble_batch(blob_ensemble, queries), predict_ensemble_batch(loaded, queries)
    ):
        np.testing.assert_array_equal(ours, theirs)


def test_saved_file_is_stable(blob_ensemble, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    save_ensemble(blob_ensemble, first)
    save_ensemble(load_ensemble(first), second)
    assert first.read_bytes() == second.read_bytes()


def test_document_kind_and_version(blob_ensemble):
    doc = json.loads(ensemble_to_document(blob_ensemble).model_dump_json())
    assert doc["kind"] == "grader-deferral-ensemble"
    assert doc["format_version"] == 1
    assert len(doc["deferral"]["trees"]) == blob_ensemble.config.deferral_params.n_trees


def test_load_missing_file(tmp_path):
    with pytest.raises(DataError, match="not found"):
        load_ensemble(tmp_path / "missing.json")


def test_load_invalid_json(write_text):
    with pytest.raises(DataError):
        load_ensemble(write_text("bad.json", "{not json"))


def test_load_wrong_document(write_text):
    with pytest.raises(DataError):
        load_ensemble(write_text("other.json", json.dumps({"kind": "something-else"})))


def test_tree_document_rejects_backward_child(blob_ensemble):
    doc = tree_to_document(blob_ensemble.base)
    if len(doc.nodes) < 3:
        pytest.skip("base tree has no split")
    broken = doc.model_copy(deep=True)
    broken.nodes[0].left = 0
    with pytest.raises(DataError, match="out of order"):
        tree_from_document(broken)


def test_tree_document_rejects_bad_counts(blob_ensemble):
    broken = tree_to_document(blob_ensemble.base).model_copy(deep=True)
    broken.nodes[0].class_counts = [1]
    with pytest.raises(DataError, match="class counts"):
        tree_from_document(broken)
