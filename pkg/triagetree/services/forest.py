"""Random forest: bagged CART trees with per-node feature subsampling."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from triagetree.models.dataset import Dataset
from triagetree.models.forest import RandomForest
from triagetree.models.tree import DecisionTree
from triagetree.schemas.params import ForestParams
from triagetree.services.tree_builder import TreeBuilder
from triagetree.tasks.pool import run_parallel
from triagetree.utils.helpers import as_feature_matrix, as_feature_vector
from triagetree.utils.logger import get_logger
from triagetree.utils.rng import DeterministicRng

logger = get_logger(__name__)


def _bootstrap_rows(n_rows: int, rng: DeterministicRng) -> np.ndarray:
    return rng.integers(0, n_rows, size=n_rows)


def bootstrap_sample(d: Dataset, rng: DeterministicRng) -> Dataset:
    """
    Draw N rows uniformly with replacement.

    Args:
        d: Source data
        rng: The consumer's stream (a forest uses stream i for tree i)

    Returns:
        Dataset of the same size as ``d``
    """
    return d.subset(_bootstrap_rows(d.n_rows, rng))


class NodeFeatureSampler:
    """Draws a fresh feature subset at every node a tree tries to split."""

    def __init__(self, n_candidates: int, rng: DeterministicRng):
        self.n_candidates = n_candidates
        self.rng = rng

    def __call__(self, X_node: np.ndarray) -> np.ndarray:
        # Constant features cannot split the node, so they are never drawn.
        varying = np.flatnonzero(X_node.max(axis=0) > X_node.min(axis=0))
        if varying.shape[0] <= self.n_candidates:
            return varying
        return np.sort(self.rng.choice(varying, size=self.n_candidates, replace=False))


@dataclass(frozen=True)
class _TreeJob:
    features: np.ndarray
    labels: np.ndarray
    n_classes: int
    params: ForestParams
    index: int


def _fit_member(job: _TreeJob) -> DecisionTree:
    params = job.params
    rng = DeterministicRng(params.seed, job.index)
    X, y = job.features, job.labels
    if params.bootstrap:
        rows = _bootstrap_rows(y.shape[0], rng)
        X, y = X[rows], y[rows]
    sampler = NodeFeatureSampler(params.resolve_features_per_split(X.shape[1]), rng)
    return TreeBuilder(params.tree_params(), feature_sampler=sampler).build(X, y, job.n_classes)


def fit_forest(d: Dataset, params: ForestParams = ForestParams()) -> RandomForest:
    """
    Fit ``params.n_trees`` trees, tree i on RNG stream (params.seed, i).

    The result is the same for sequential and parallel fitting.

    Args:
        d: Training data
        params: Forest parameters

    Returns:
        Fitted RandomForest
    """
    # Validate before dispatching jobs.
    params.resolve_features_per_split(d.n_features)

    jobs = [
        _TreeJob(d.features, d.labels, d.n_classes, params, index)
        for index in range(params.n_trees)
    ]
    trees = run_parallel(_fit_member, jobs, n_jobs=params.n_jobs)

    logger.debug(
        f"Fitted forest of {params.n_trees} trees on {d.n_rows} rows "
        f"(mean {np.mean([t.node_count for t in trees]):.1f} nodes per tree)"
    )
    return RandomForest(
        trees=tuple(trees), params=params, n_classes=d.n_classes, n_features=d.n_features
    )


def predict_forest_proba(f: RandomForest, X) -> np.ndarray:
    """Mean over trees of the leaf class-frequency vectors, one row per input."""
    matrix = as_feature_matrix(X, f.n_features)
    total = np.zeros((matrix.shape[0], f.n_classes), dtype=np.float64)
    for tree in f.trees:
        total += tree.leaf_proba(tree.apply(matrix))
    return total / len(f.trees)


def predict_forest_batch(f: RandomForest, X) -> np.ndarray:
    """Argmax of the averaged frequencies; ties go to the lowest class index."""
    return np.argmax(predict_forest_proba(f, X), axis=1)


def predict_forest(f: RandomForest, x: Sequence[float]) -> int:
    """Class of one row by probability-averaged voting."""
    row = as_feature_vector(x, f.n_features)
    return int(predict_forest_batch(f, row.reshape(1, -1))[0])
