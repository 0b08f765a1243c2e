"""Fitting and routed inference of the grader/deferral ensemble."""

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from triagetree.config import settings
from triagetree.exceptions import DataError, UsageError
from triagetree.models.dataset import Dataset
from triagetree.models.ensemble import (
    GRADER_CLASSES,
    FitStats,
    GraderDeferralEnsemble,
    Route,
    RoutedPrediction,
)
from triagetree.models.tree import DecisionTree, PathStep
from triagetree.schemas.params import EnsembleConfig
from triagetree.services.forest import fit_forest, predict_forest, predict_forest_batch
from triagetree.services.resample import smote_oversample, write_provenance_csv
from triagetree.services.tree_builder import (
    decision_path,
    fit_tree,
    predict_tree,
    predict_tree_batch,
)
from triagetree.utils.helpers import as_feature_matrix, as_feature_vector
from triagetree.utils.logger import get_logger
from triagetree.utils.rng import SMOTE_STREAM, DeterministicRng

logger = get_logger(__name__)


def provenance_path(template: Union[str, Path], seed: int) -> Path:
    """
    Per-fit provenance file: ``smote.csv`` becomes ``smote.seed-<seed>.csv``.

    Every CV fold fits with its own derived seed, so folds running side by side
    never share a file.
    """
    path = Path(template)
    return path.with_name(f"{path.stem}.seed-{seed}{path.suffix}")


def relabel_easy_hard(base: DecisionTree, d: Dataset) -> Dataset:
    """
    Copy of ``d`` labelled easy (0) where ``base`` is right and hard (1) where it is wrong.

    The easy fraction equals the base tree's accuracy on ``d`` exactly.

    Raises:
        DataError: If the feature dimensions differ
    """
    predictions = predict_tree_batch(base, d.features)
    hard = (predictions != d.labels).astype(np.int64)
    return d.with_labels(hard, GRADER_CLASSES)


def fit_ensemble(d: Dataset, cfg: EnsembleConfig = EnsembleConfig()) -> GraderDeferralEnsemble:
    """
    Fit base tree and deferral forest on ``d``, then the grader on the relabelled rows.

    Steps: fit base and forest independently; relabel easy/hard; balance the
    relabelled set with SMOTE; fit the grader. When every row is easy (or every
    row is hard) resampling is skipped and the grader is a single leaf
    answering that route.

    Args:
        d: Training data with at least two classes present
        cfg: Ensemble parameters

    Returns:
        Fitted ensemble

    Raises:
        DataError: If fewer than two classes are present
    """
    present = np.count_nonzero(d.class_counts())
    if present < 2:
        raise DataError(f"ensemble training needs at least 2 classes present, got {present}")

    base = fit_tree(d, cfg.base_params)
    deferral = fit_forest(d, cfg.deferral_params)

    relabeled = relabel_easy_hard(base, d)
    easy_count, hard_count = (int(c) for c in relabeled.class_counts())

    synthetic_rows = 0
    if easy_count == 0 or hard_count == 0:
        grader = fit_tree(relabeled, cfg.grader_params)
    else:
        rng = DeterministicRng(cfg.smote.seed, SMOTE_STREAM)
        result = smote_oversample(relabeled, cfg.smote, rng)
        synthetic_rows = len(result.provenance)
        if settings.smote_provenance_path:
            write_provenance_csv(
                result.provenance, provenance_path(settings.smote_provenance_path, cfg.seed)
            )
        grader = fit_tree(result.dataset, cfg.grader_params)

    trivial = grader.node_count == 1
    stats = FitStats(
        n_train=d.n_rows,
        easy_count=easy_count,
        hard_count_before_resample=hard_count,
        synthetic_rows=synthetic_rows,
        base_train_accuracy=easy_count / d.n_rows,
        trivial_grader=trivial,
        trivial_route=Route.from_index(grader.root.predicted_class) if trivial else None,
    )
    logger.info(
        f"Fitted ensemble on {d.n_rows} rows: base train accuracy "
        f"{stats.base_train_accuracy:.4f}, {hard_count} hard rows, "
        f"grader {grader.node_count} nodes"
        + (f" (trivial, always {stats.trivial_route.value})" if trivial else "")
    )
    return GraderDeferralEnsemble(
        base=base,
        deferral=deferral,
        grader=grader,
        fit_stats=stats,
        config=cfg,
        feature_names=d.feature_names,
        class_names=d.class_names,
    )


def predict_ensemble(e: GraderDeferralEnsemble, x: Sequence[float]) -> RoutedPrediction:
    """
    Grade ``x``, then label it with the base tree (easy) or the forest (hard).

    Raises:
        DataError: On dimension mismatch
    """
    row = as_feature_vector(x, e.n_features)
    grader_path = tuple(decision_path(e.grader, row, e.feature_names))
    route = Route.from_index(predict_tree(e.grader, row))

    if route is Route.EASY:
        return RoutedPrediction(
            label=predict_tree(e.base, row),
            route=route,
            grader_path=grader_path,
            evaluator_path=tuple(decision_path(e.base, row, e.feature_names)),
        )
    return RoutedPrediction(
        label=predict_forest(e.deferral, row),
        route=route,
        grader_path=grader_path,
        evaluator_path=None,
    )


def predict_ensemble_batch(e: GraderDeferralEnsemble, X) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorised predict_ensemble.

    Returns:
        (labels, hard) where ``hard`` is a boolean mask of rows routed to the forest
    """
    matrix = as_feature_matrix(X, e.n_features)
    hard = predict_tree_batch(e.grader, matrix) == Route.HARD.index
    labels = predict_tree_batch(e.base, matrix)
    if hard.any():
        labels[hard] = predict_forest_batch(e.deferral, matrix[hard])
    return labels, hard


def _conditions(steps: Sequence[PathStep]) -> list[str]:
    return [f"  {step.describe()}" for step in steps]


def explain(
    e: GraderDeferralEnsemble, x: Sequence[float], names: Optional[Sequence[str]] = None
) -> str:
    """
    Human-readable account of how ``x`` was labelled.

    The grader's conditions say why the input is easy or hard; easy inputs
    also get the base tree's conditions, hard inputs a note that the forest
    decided.

    Args:
        e: Fitted ensemble
        x: Feature vector
        names: Feature names to print (default: the training names)

    Raises:
        UsageError: If ``names`` does not match the feature count
    """
    if names is not None and len(names) != e.n_features:
        raise UsageError(f"{len(names)} feature names for {e.n_features} features")
    feature_names = list(names) if names is not None else list(e.feature_names)

    row = as_feature_vector(x, e.n_features)
    prediction = predict_ensemble(e, row)
    route = prediction.route.value
    lines = [f"route: {route}"]

    if e.fit_stats.trivial_grader:
        lines.append(f"why {route}: the grader is trivial and routes every input {route}")
    else:
        lines.append(f"why {route} (grader):")
        lines.extend(_conditions(decision_path(e.grader, row, feature_names)))

    if prediction.route is Route.EASY:
        lines.append("base classifier:")
        lines.extend(_conditions(decision_path(e.base, row, feature_names)))
    else:
        lines.append(
            f"deferred: labelled by the deferral model "
            f"(random forest, {len(e.deferral.trees)} trees), which has no short explanation"
        )
    lines.append(f"label: {e.class_names[prediction.label]}")
    return "\n".join(lines)
