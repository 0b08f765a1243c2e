"""
Reproduction checks against the published benchmark figures.

Need the UCI CSVs under TRIAGETREE_BENCHMARK_DIR (named as in the catalog,
e.g. bnk.csv); skipped otherwise. Run with ``pytest -m slow``.
"""

import numpy as np
import pytest

from triagetree.models.ensemble import Route
from triagetree.schemas.params import EnsembleConfig
from triagetree.services.catalog import benchmark_path, check_shape, get_benchmark
from triagetree.services.dataset_loader import load_csv
from triagetree.services.ensemble import fit_ensemble, predict_ensemble_batch
from triagetree.services.experiment import run_cv
from triagetree.services.folds import split_by_fold, stratified_kfold
from triagetree.services.forest import predict_forest_batch
from triagetree.services.tree_builder import predict_tree_batch
from triagetree.utils.rng import DeterministicRng, derive_seed

pytestmark = pytest.mark.slow

# (metric, published mean, allowed distance), all in fractions
TOLERANCES = {
    "Bnk": [
        ("final_acc_test", 0.9857, 0.015),
        ("base_acc_test", 0.9542, 0.02),
        ("deferral_rate_test", 0.2178, 0.07),
    ],
    "Bld": [
        ("final_acc_test", 0.7526, 0.04),
        ("deferral_rate_test", 0.4536, 0.10),
    ],
    "Brst": [
        ("deferral_rate_test", 0.0913, 0.06),
    ],
}


def _load(abbreviation, directory):
    entry = get_benchmark(abbreviation)
    d = load_csv(benchmark_path(entry, directory))
    assert check_shape(d, entry)
    return d


@pytest.mark.parametrize("abbreviation", sorted(TOLERANCES))
def test_cv_matches_published_figures(abbreviation, benchmark_dir):
    d = _load(abbreviation, benchmark_dir)
    report = run_cv(d, EnsembleConfig(), k=10, repeats=5, seed=0, n_jobs=-1)

    assert report.run_count == 50
    for metric, published, tolerance in TOLERANCES[abbreviation]:
        assert report.summary(metric).mean == pytest.approx(published, abs=tolerance), metric


def test_banknote_accuracy_floor(benchmark_dir):
    report = run_cv(_load("Bnk", benchmark_dir), k=10, repeats=1, seed=0, n_jobs=-1)
    assert report.final_acc_test.mean >= 0.98


@pytest.mark.parametrize("abbreviation", sorted(TOLERANCES))
def test_routing_is_exact_on_every_fold(abbreviation, benchmark_dir):
    d = _load(abbreviation, benchmark_dir)
    plan = stratified_kfold(d, 10, DeterministicRng(0, 0))
    for fold in range(10):
        train, test = split_by_fold(d, plan, fold)
        e = fit_ensemble(train, EnsembleConfig().reseeded(derive_seed(0, 0, fold)))

        labels, hard = predict_ensemble_batch(e, test.features)
        grader = predict_tree_batch(e.grader, test.features)
        expected = np.where(
            grader == Route.HARD.index,
            predict_forest_batch(e.deferral, test.features),
            predict_tree_batch(e.base, test.features),
        )
        np.testing.assert_array_equal(hard, grader == Route.HARD.index)
        np.testing.assert_array_equal(labels, expected)
